#include "condlab/wave_function.hpp"

#include <cmath>
#include <ostream>

#include "condlab/error.hpp"
#include "condlab/format.hpp"

namespace condlab {

namespace {

void require_same_grid(const WaveFunction& f, const WaveFunction& g) {
  if (!(f.grid() == g.grid())) throw StructuralError("wave functions live on different grids");
}

double riemann_norm2(const Grid& grid, const CVector& samples) {
  return grid.cell_volume() * samples.squaredNorm();
}

}  // namespace

WaveFunction::WaveFunction(Grid grid, Region support, CVector samples, bool)
    : grid_(std::move(grid)), support_(std::move(support)), samples_(std::move(samples)) {
  squared_norm_ = riemann_norm2(grid_, samples_);
}

WaveFunction::WaveFunction(Grid grid, Region support, CVector samples)
    : WaveFunction(std::move(grid), std::move(support), std::move(samples), true) {
  if (samples_.size() != grid_.size()) throw StructuralError("sample count does not match grid");
  if (support_.dimension() != grid_.dimension())
    throw StructuralError("support/grid dimension mismatch");
  for (Index i = 0; i < samples_.size(); ++i) {
    if (samples_(i) != Complex(0.0) && !support_.contains(grid_.point(i)))
      throw PreconditionError("samples do not vanish outside the support region");
  }
}

WaveFunction WaveFunction::sample(const Grid& grid, const Region& support,
                                  const std::function<Complex(const Vec&)>& fn) {
  CVector samples = CVector::Zero(grid.size());
  for (Index i : grid.mask(support)) samples(i) = fn(grid.point(i));
  return WaveFunction(grid, support, std::move(samples), true);
}

WaveFunction WaveFunction::zero(const Grid& grid, const Region& support) {
  return WaveFunction(grid, support, CVector::Zero(grid.size()), true);
}

double WaveFunction::norm() const { return std::sqrt(squared_norm_); }

WaveFunction WaveFunction::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw PreconditionError("cannot normalize the zero function");
  return Complex(1.0 / n) * *this;
}

WaveFunction operator*(Complex alpha, const WaveFunction& f) {
  return WaveFunction(f.grid_, f.support_, alpha * f.samples_, true);
}

WaveFunction operator+(const WaveFunction& f, const WaveFunction& g) {
  require_same_grid(f, g);
  if (!(f.support() == g.support())) throw StructuralError("supports differ");
  return WaveFunction(f.grid_, f.support_, f.samples_ + g.samples_, true);
}

WaveFunction operator-(const WaveFunction& f, const WaveFunction& g) {
  require_same_grid(f, g);
  if (!(f.support() == g.support())) throw StructuralError("supports differ");
  return WaveFunction(f.grid_, f.support_, f.samples_ - g.samples_, true);
}

Complex inner(const WaveFunction& f, const WaveFunction& g) {
  require_same_grid(f, g);
  return f.grid().cell_volume() * f.samples().dot(g.samples());
}

WaveFunction translate(const WaveFunction& f, const IVec& shift) {
  const Grid& grid = f.grid();
  if (shift.size() != grid.dimension()) throw StructuralError("shift dimension mismatch");
  const Region support = f.support().translated(grid.displacement(shift));
  if (shift.isZero()) return f;
  const Vec half = 0.5 * grid.spacing();
  const Vec lo = grid.origin() - half;
  const Vec hi = grid.point(IVec(grid.counts().array() - 1)) + half;
  if (((support.lower() - lo).array() < -1e-12).any() || ((hi - support.upper()).array() < -1e-12).any())
    throw RangeError("translated support leaves the grid");
  CVector out = CVector::Zero(grid.size());
  for (Index i = 0; i < grid.size(); ++i) {
    if (f[i] == Complex(0.0)) continue;
    const IVec target = grid.unflatten(i) + shift;
    if (!grid.in_range(target)) throw RangeError("translated support leaves the grid");
    out(grid.flatten(target)) = f[i];
  }
  return WaveFunction(grid, support, std::move(out));
}

WaveFunction translate(const WaveFunction& f, const Vec& shift) {
  return translate(f, f.grid().lattice_shift(shift));
}

double grid_volume(const Grid& grid, const Region& region) {
  return static_cast<double>(grid.mask(region).size()) * grid.cell_volume();
}

WaveFunction plane_wave_mode(const Grid& grid, const Region& region, const Vec& k) {
  if (k.size() != grid.dimension()) throw StructuralError("wave vector dimension mismatch");
  const auto mask = grid.mask(region);
  if (mask.empty()) throw PreconditionError("region contains no grid points");
  const double amplitude = 1.0 / std::sqrt(static_cast<double>(mask.size()) * grid.cell_volume());
  CVector samples = CVector::Zero(grid.size());
  for (Index i : mask) samples(i) = std::polar(amplitude, k.dot(grid.point(i)));
  return WaveFunction(grid, region, std::move(samples));
}

Complex fourier_amplitude(const WaveFunction& f, const Vec& p) {
  const Grid& grid = f.grid();
  if (p.size() != grid.dimension()) throw StructuralError("wave vector dimension mismatch");
  Complex sum(0.0);
  for (Index i = 0; i < grid.size(); ++i) {
    if (f[i] == Complex(0.0)) continue;
    sum += std::polar(1.0, -p.dot(grid.point(i))) * f[i];
  }
  return std::pow(2.0 * kPi, -0.5 * grid.dimension()) * grid.cell_volume() * sum;
}

WaveFunction project_out(const WaveFunction& f, const WaveFunction& s) {
  require_same_grid(f, s);
  const Complex overlap = inner(s, f);
  // The remainder lives on whichever support encloses the other.
  const Region& support = s.support().encloses(f.support()) ? s.support() : f.support();
  return WaveFunction(f.grid(), support, f.samples() - overlap * s.samples());
}

WaveFunction zero_mean_project(const WaveFunction& f, const Region& region) {
  const Grid& grid = f.grid();
  CVector inside = CVector::Zero(grid.size());
  const auto mask = grid.mask(region);
  for (Index i : mask) inside(i) = f[i];
  if ((inside - f.samples()).cwiseAbs().maxCoeff() != 0.0)
    throw PreconditionError("zero_mean_project: function is not supported in the region");
  const Vec zero = Vec::Zero(grid.dimension());
  const WaveFunction s0 = plane_wave_mode(grid, region, zero);
  const Complex overlap = inner(s0, f);
  return WaveFunction(grid, region, f.samples() - overlap * s0.samples());
}

WaveFunction smooth_bump(const Grid& grid, const Region& support) {
  const Vec c = support.center();
  const double width = support.size();
  const bool radial = support.shape() == Shape::ball;
  auto profile = [&](const Vec& x) -> Complex {
    if (radial) {
      const double v = std::cos(kPi * (x - c).norm() / width);
      return v * v;
    }
    double value = 1.0;
    for (Index a = 0; a < x.size(); ++a) {
      const double v = std::cos(kPi * (x(a) - c(a)) / width);
      value *= v * v;
    }
    return value;
  };
  return WaveFunction::sample(grid, support, profile).normalized();
}

void write_csv(std::ostream& out, const WaveFunction& f) {
  const Grid& grid = f.grid();
  for (int a = 0; a < grid.dimension(); ++a) out << 'i' << a << ',';
  out << "re,im\n";
  for (Index i = 0; i < grid.size(); ++i) {
    const IVec idx = grid.unflatten(i);
    for (int a = 0; a < grid.dimension(); ++a) out << idx(a) << ',';
    out << format_number(f[i].real()) << ',' << format_number(f[i].imag()) << '\n';
  }
}

}  // namespace condlab
