#include "condlab/mode_basis.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "condlab/error.hpp"

namespace condlab {

ModeBasis::ModeBasis(Grid grid, Region support, std::vector<Index> points, CMatrix modes,
                     double gram_tolerance)
    : grid_(std::move(grid)),
      support_(std::move(support)),
      points_(std::move(points)),
      modes_(std::move(modes)) {
  if (modes_.cols() < 1) throw StructuralError("mode basis needs at least one mode");
  if (modes_.rows() != static_cast<Index>(points_.size()))
    throw StructuralError("mode rows must match support points");
  const CMatrix g = gram();
  const double dev = (g - CMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
  if (dev > gram_tolerance) throw StructuralError("mode basis is not orthonormal");
}

WaveFunction ModeBasis::mode(Index k) const {
  CVector samples = CVector::Zero(grid_.size());
  for (std::size_t r = 0; r < points_.size(); ++r) samples(points_[r]) = modes_(r, k);
  return WaveFunction(grid_, support_, std::move(samples));
}

namespace {

CVector restrict_to(const std::vector<Index>& points, const WaveFunction& f) {
  CVector out(points.size());
  for (std::size_t r = 0; r < points.size(); ++r) out(r) = f[points[r]];
  return out;
}

}  // namespace

CVector ModeBasis::coefficients(const WaveFunction& f) const {
  if (!(f.grid() == grid_)) throw StructuralError("function and basis live on different grids");
  return grid_.cell_volume() * (modes_.adjoint() * restrict_to(points_, f));
}

CMatrix ModeBasis::coefficients(const std::vector<WaveFunction>& fs) const {
  CMatrix stacked(points_.size(), fs.size());
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (!(fs[j].grid() == grid_)) throw StructuralError("function and basis live on different grids");
    stacked.col(j) = restrict_to(points_, fs[j]);
  }
  return grid_.cell_volume() * (modes_.adjoint() * stacked);
}

WaveFunction ModeBasis::synthesize(const CVector& c) const {
  if (c.size() != size()) throw StructuralError("coefficient count mismatch");
  const CVector values = modes_ * c;
  CVector samples = CVector::Zero(grid_.size());
  for (std::size_t r = 0; r < points_.size(); ++r) samples(points_[r]) = values(r);
  return WaveFunction(grid_, support_, std::move(samples));
}

CMatrix ModeBasis::gram() const { return grid_.cell_volume() * (modes_.adjoint() * modes_); }

ModeBasis ModeBasis::boosted(const Vec& p) const {
  if (p.size() != grid_.dimension()) throw StructuralError("wave vector dimension mismatch");
  CMatrix out = modes_;
  for (std::size_t r = 0; r < points_.size(); ++r)
    out.row(r) *= std::polar(1.0, p.dot(grid_.point(points_[r])));
  return ModeBasis(grid_, support_, points_, std::move(out));
}

void orthonormalize(CMatrix& vectors, double cell_volume) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    const double before = std::sqrt(cell_volume) * vectors.col(j).norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i < j; ++i) {
        const Complex overlap = cell_volume * vectors.col(i).dot(vectors.col(j));
        vectors.col(j) -= overlap * vectors.col(i);
      }
    }
    const double n = std::sqrt(cell_volume) * vectors.col(j).norm();
    if (!(n > 1e-10 * std::max(before, 1e-300)))
      throw NumericalError("mode candidates are linearly dependent on the grid");
    vectors.col(j) /= n;
  }
}

namespace {

// Integer vectors with |m_a| <= limit_a, ordered by |m|^2 then lexicographic.
std::vector<IVec> fourier_indices(const IVec& limits, Index count) {
  const int d = static_cast<int>(limits.size());
  std::vector<IVec> all;
  IVec m = -limits;
  while (true) {
    all.push_back(m);
    int a = d - 1;
    while (a >= 0 && m(a) == limits(a)) {
      m(a) = -limits(a);
      --a;
    }
    if (a < 0) break;
    ++m(a);
  }
  std::stable_sort(all.begin(), all.end(), [](const IVec& x, const IVec& y) {
    const Index nx = x.squaredNorm(), ny = y.squaredNorm();
    if (nx != ny) return nx < ny;
    return std::lexicographical_compare(x.data(), x.data() + x.size(), y.data(), y.data() + y.size());
  });
  if (static_cast<Index>(all.size()) < count)
    throw ParameterError("grid too coarse for the requested number of Fourier modes");
  all.resize(count);
  return all;
}

}  // namespace

ModeBasis fourier_basis(const Grid& grid, const Region& region, Index count) {
  if (region.shape() == Shape::ball && region.dimension() > 1)
    throw ParameterError("Fourier modes require an interval or box region");
  if (count < 1) throw ParameterError("mode count must be positive");
  auto points = grid.mask(region);
  if (points.empty()) throw PreconditionError("region contains no grid points");
  const int d = grid.dimension();
  // Unaliased frequencies: |m_a| below half the number of mask points per axis.
  IVec limits(d);
  for (int a = 0; a < d; ++a) {
    const auto across = static_cast<Index>(std::floor(region.size() / grid.spacing()(a) + 1e-9));
    limits(a) = std::max<Index>(0, (across - 1) / 2);
  }
  const auto freqs = fourier_indices(limits, count);
  const Vec lo = region.lower();
  const double length = region.size();
  CMatrix modes(points.size(), count);
  for (std::size_t r = 0; r < points.size(); ++r) {
    const Vec x = grid.point(points[r]) - lo;
    for (Index k = 0; k < count; ++k)
      modes(r, k) = std::polar(1.0, 2.0 * kPi * freqs[k].cast<double>().dot(x) / length);
  }
  // Exactly orthogonal when the region is aligned with grid cells; otherwise
  // fall back to Gram-Schmidt (mode 0 stays constant either way).
  const double volume = static_cast<double>(points.size()) * grid.cell_volume();
  CMatrix raw = modes;
  modes /= std::sqrt(volume);
  try {
    return ModeBasis(grid, region, points, std::move(modes));
  } catch (const StructuralError&) {
    orthonormalize(raw, grid.cell_volume());
    return ModeBasis(grid, region, std::move(points), std::move(raw));
  }
}

ModeBasis polynomial_basis(const Grid& grid, const Region& region, Index count) {
  if (count < 1) throw ParameterError("mode count must be positive");
  auto points = grid.mask(region);
  if (points.empty()) throw PreconditionError("region contains no grid points");
  const int d = grid.dimension();
  // Exponent tuples by total degree, then lexicographic descending.
  std::vector<std::array<int, 3>> powers;
  for (int degree = 0; static_cast<Index>(powers.size()) < count; ++degree) {
    if (degree > 64) throw ParameterError("too many polynomial modes requested");
    for (int a = degree; a >= 0; --a) {
      if (d == 1) {
        if (a == degree) powers.push_back({a, 0, 0});
        continue;
      }
      for (int b = degree - a; b >= 0; --b) {
        const int c = degree - a - b;
        if (d == 2 && c != 0) continue;
        powers.push_back({a, b, c});
      }
    }
  }
  powers.resize(count);
  const Vec center = region.center();
  const double radius = 0.5 * region.size();
  CMatrix modes(points.size(), count);
  for (std::size_t r = 0; r < points.size(); ++r) {
    const Vec x = (grid.point(points[r]) - center) / radius;
    for (Index k = 0; k < count; ++k) {
      double v = 1.0;
      for (int a = 0; a < d; ++a) v *= std::pow(x(a), powers[k][a]);
      modes(r, k) = v;
    }
  }
  orthonormalize(modes, grid.cell_volume());
  return ModeBasis(grid, region, std::move(points), std::move(modes));
}

ModeBasis default_basis(const Grid& grid, const Region& region, Index count) {
  if (region.shape() == Shape::ball && region.dimension() > 1)
    return polynomial_basis(grid, region, count);
  return fourier_basis(grid, region, count);
}

}  // namespace condlab
