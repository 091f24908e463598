#include "condlab/odlro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "condlab/error.hpp"
#include "condlab/format.hpp"
#include "condlab/parallel.hpp"

namespace condlab {

Complex predicted_correlation(const ScanModel& model, Complex probe_amplitude, double region_volume, int dimension,
                              const Vec& x, const Vec& y) {
  const double scale = model.n_c / region_volume * std::pow(2.0 * kPi, dimension) * std::norm(probe_amplitude);
  return std::polar(scale, (x - y).dot(model.momentum));
}

CorrelationScan correlation_scan(const OnePDM& pdm, const WaveFunction& probe, const std::vector<Vec>& shifts,
                                 const ScanModel& model) {
  if (std::abs(probe.norm() - 1.0) > 1e-8) throw PreconditionError("correlation_scan: probe must be normalized");
  const ModeBasis& basis = pdm.basis();
  const Region& region = basis.support();
  const int d = region.dimension();
  if (model.momentum.size() != d) throw StructuralError("correlation_scan: momentum dimension mismatch");
  for (const Vec& x : shifts) {
    if (!region.compactly_contains(probe.support().translated(x)))
      throw PreconditionError("correlation_scan: translated probe leaves the region");
  }

  const auto n = static_cast<Index>(shifts.size());
  CMatrix coeffs(basis.size(), n);
  parallel_for(n, [&](Index i) { coeffs.col(i) = basis.coefficients(translate(probe, shifts[i])); });
  CMatrix applied(basis.size(), n);
  for (Index i = 0; i < n; ++i) applied.col(i) = pdm.apply(coeffs.col(i));

  CorrelationScan scan{probe.support(), shifts, coeffs.adjoint() * applied, CMatrix(n, n), model};
  scan.region_volume = grid_volume(basis.grid(), region);
  scan.probe_volume = grid_volume(probe.grid(), probe.support());
  const Complex amplitude = fourier_amplitude(probe, model.momentum);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      scan.predicted(i, j) = predicted_correlation(model, amplitude, scan.region_volume, d, shifts[i], shifts[j]);
  scan.max_deviation = n > 0 ? (scan.measured - scan.predicted).cwiseAbs().maxCoeff() : 0.0;
  scan.error_scale = std::sqrt(std::max(0.0, model.n_r * model.n_c * scan.probe_volume / scan.region_volume));
  return scan;
}

std::vector<Vec> admissible_shifts(const Grid& grid, const Region& region, const Region& probe_support, int axis,
                                   Index stride) {
  if (axis < 0 || axis >= grid.dimension()) throw ParameterError("admissible_shifts: axis out of range");
  if (stride < 1) throw ParameterError("admissible_shifts: stride must be positive");
  std::vector<Vec> out;
  const Index reach = grid.counts()(axis);
  for (Index s = -reach; s <= reach; ++s) {
    if (s % stride != 0) continue;
    IVec shift = IVec::Zero(grid.dimension());
    shift(axis) = s;
    const Vec x = grid.displacement(shift);
    if (region.compactly_contains(probe_support.translated(x))) out.push_back(x);
  }
  return out;
}

KGrid KGrid::line(const Vec& origin, int axis, std::span<const double> offsets) {
  if (axis < 0 || axis >= origin.size()) throw ParameterError("KGrid::line: axis out of range");
  KGrid g;
  g.axis = axis;
  for (double t : offsets) {
    Vec k = origin;
    k(axis) += t;
    g.points.push_back(k);
  }
  return g;
}

KGrid KGrid::list(std::vector<Vec> points) {
  KGrid g;
  g.points = std::move(points);
  return g;
}

namespace {

// <b_j, e_k> for every k on an axis line, via per-slab partial sums.
CMatrix line_coefficients(const ModeBasis& basis, const KGrid& ks) {
  const Grid& grid = basis.grid();
  const int axis = *ks.axis;
  const Index slabs = grid.counts()(axis);
  const Vec& k0 = ks.points.front();
  Vec perp = k0;
  perp(axis) = 0.0;

  CMatrix slab_sums = CMatrix::Zero(slabs, basis.size());
  const auto& points = basis.points();
  for (std::size_t r = 0; r < points.size(); ++r) {
    const Vec x = grid.point(points[r]);
    const Index slab = grid.unflatten(points[r])(axis);
    slab_sums.row(slab) += std::polar(1.0, -perp.dot(x)) * basis.modes().row(static_cast<Index>(r));
  }
  const double volume = static_cast<double>(points.size()) * grid.cell_volume();
  const double weight = grid.cell_volume() / std::sqrt(volume);

  const auto n = static_cast<Index>(ks.points.size());
  CMatrix out(basis.size(), n);
  parallel_for(n, [&](Index i) {
    const double ka = ks.points[i](axis);
    Eigen::RowVectorXcd phases(slabs);
    for (Index s = 0; s < slabs; ++s) phases(s) = std::polar(1.0, -ka * (grid.origin()(axis) + s * grid.spacing()(axis)));
    // <e_k, b_j> = weight * sum_s phases(s) slab_sums(s, j); we need its conjugate.
    out.col(i) = (weight * (phases * slab_sums)).adjoint();
  });
  return out;
}

double spectrum_value(const OnePDM& pdm, const CVector& c) { return pdm.form(c, c).real(); }

void fit_envelope(const std::vector<Vec>& ks, const RVector& values, const Vec& center, double length, Index lobes,
                  double& constant, double& exponent, Index& used) {
  const auto idx = lobe_maxima(ks, values, center, length, lobes);
  used = static_cast<Index>(idx.size());
  constant = std::numeric_limits<double>::quiet_NaN();
  exponent = std::numeric_limits<double>::quiet_NaN();
  if (idx.size() < 2) return;
  std::vector<double> xs, ys;
  for (Index i : idx) {
    xs.push_back(length * (ks[i] - center).norm());
    ys.push_back(values(i));
  }
  const GrowthFit fit = fit_growth(xs, ys, 1e-300);
  exponent = fit.slope;
  constant = std::exp(fit.intercept);
}

}  // namespace

std::vector<Index> lobe_maxima(const std::vector<Vec>& ks, const RVector& values, const Vec& center, double length,
                               Index lobes) {
  const auto n = static_cast<Index>(ks.size());
  std::vector<Index> positive, negative;
  if (n < 3) return {};
  const Vec direction = ks.back() - ks.front();
  for (Index i = 1; i + 1 < n; ++i) {
    if (!(values(i) > values(i - 1) && values(i) >= values(i + 1))) continue;
    const Vec offset = ks[i] - center;
    if (!(length * offset.norm() > 2.0)) continue;
    (offset.dot(direction) >= 0.0 ? positive : negative).push_back(i);
  }
  std::vector<Index>& side = positive.size() >= negative.size() ? positive : negative;
  std::sort(side.begin(), side.end(),
            [&](Index a, Index b) { return (ks[a] - center).norm() < (ks[b] - center).norm(); });
  if (static_cast<Index>(side.size()) > lobes) side.resize(lobes);
  return side;
}

RVector momentum_values_direct(const OnePDM& pdm, const std::vector<Vec>& ks) {
  const ModeBasis& basis = pdm.basis();
  RVector values(static_cast<Index>(ks.size()));
  parallel_for(values.size(), [&](Index i) {
    const CVector c = basis.coefficients(plane_wave_mode(basis.grid(), basis.support(), ks[i]));
    values(i) = spectrum_value(pdm, c);
  });
  return values;
}

MomentumSpectrum momentum_distribution(const OnePDM& pdm, const KGrid& grid, Index lobes) {
  if (grid.points.empty()) throw PreconditionError("momentum_distribution: empty k grid");
  const ModeBasis& basis = pdm.basis();
  MomentumSpectrum spectrum;
  spectrum.k = grid.points;
  spectrum.length = basis.support().diameter();
  if (grid.axis) {
    const CMatrix c = line_coefficients(basis, grid);
    spectrum.values.resize(c.cols());
    for (Index i = 0; i < c.cols(); ++i) spectrum.values(i) = spectrum_value(pdm, c.col(i));
  } else {
    spectrum.values = momentum_values_direct(pdm, grid.points);
  }
  spectrum.values.maxCoeff(&spectrum.peak_index);
  spectrum.peak = spectrum.k[spectrum.peak_index];
  spectrum.peak_value = spectrum.values(spectrum.peak_index);
  fit_envelope(spectrum.k, spectrum.values, spectrum.peak, spectrum.length, lobes, spectrum.tail_constant,
               spectrum.tail_exponent, spectrum.tail_points);
  return spectrum;
}

double closed_form_peak(int dimension, double u, double n_c) {
  if (dimension != 3) throw ParameterError("closed_form_peak: only validated for d = 3 balls");
  if (!(u >= 0.0)) throw ParameterError("closed_form_peak: u must be nonnegative");
  double g;
  if (u < 1e-2) {
    const double u2 = u * u;
    g = 1.0 - u2 / 10.0 + u2 * u2 / 280.0 - u2 * u2 * u2 / 15120.0;
  } else {
    g = 3.0 * (std::sin(u) - u * std::cos(u)) / (u * u * u);
  }
  return n_c * g * g;
}

double closed_form_peak(int dimension, double length, const Vec& k, const Vec& p, double n_c) {
  return closed_form_peak(dimension, 0.5 * length * (k - p).norm(), n_c);
}

HomogeneityResult homogeneity_test(const StateFamily& family, std::span<const double> sigmas,
                                   const std::vector<WaveFunction>& probes, const std::vector<Vec>& shifts,
                                   const HomogeneityOptions& options) {
  if (sigmas.empty()) throw PreconditionError("homogeneity_test: empty schedule");
  const Region& region = family.region();
  for (const auto& f : probes) {
    if (!region.compactly_contains(f.support()))
      throw PreconditionError("homogeneity_test: probe support must lie compactly inside the region");
    for (const Vec& x : shifts)
      if (!region.compactly_contains(f.support().translated(x)))
        throw PreconditionError("homogeneity_test: translated probe leaves the region");
  }
  const OnePDM last = family(sigmas.back());
  const SingularFunction singular = extract_singular_function(last);
  const WaveFunction& s = singular.function;
  const ModeBasis& basis = family.basis();
  const CVector s_coeff = basis.coefficients(s);

  const auto np = static_cast<Index>(probes.size());
  const auto nx = static_cast<Index>(shifts.size());
  std::vector<CMatrix> translated(shifts.size());
  parallel_for(nx, [&](Index i) {
    CMatrix c(basis.size(), np);
    for (Index j = 0; j < np; ++j) c.col(j) = basis.coefficients(translate(probes[j], shifts[i]));
    translated[i] = std::move(c);
  });
  CVector overlaps(np);  // <s, f>
  double norm_product = 0.0;
  for (Index j = 0; j < np; ++j) {
    overlaps(j) = inner(s, probes[j]);
    for (Index l = 0; l < np; ++l) norm_product = std::max(norm_product, probes[j].norm() * probes[l].norm());
  }
  const CMatrix target = overlaps * overlaps.adjoint();  // <s,f_j><f_l,s> = <s,f_j> conj(<s,f_l>)

  HomogeneityResult result;
  result.deviations.resize(sigmas.size());
  result.condensate_numbers.resize(sigmas.size());
  parallel_for(static_cast<Index>(sigmas.size()), [&](Index i) {
    const OnePDM pdm = family(sigmas[i]);
    const double nc = pdm.form(s_coeff, s_coeff).real();
    if (!(nc > 0.0)) throw NumericalError("homogeneity_test: vanishing condensate number");
    double worst = 0.0;
    for (const CMatrix& c : translated) {
      CMatrix applied(c.rows(), c.cols());
      for (Index j = 0; j < c.cols(); ++j) applied.col(j) = pdm.apply(c.col(j));
      // entry (j, l) = Gamma(T f_j, T f_l)
      const CMatrix g = c.adjoint() * applied;
      worst = std::max(worst, (g / nc - target).cwiseAbs().maxCoeff());
    }
    result.deviations[i] = worst;
    result.condensate_numbers[i] = nc;
  });

  result.tolerance = options.tolerance.value_or(
      10.0 * std::sqrt(std::max(0.0, singular.second_eigenvalue) / result.condensate_numbers.back()));
  const double first = result.deviations.front();
  const double final_dev = result.deviations.back();
  const bool decays = final_dev < first || final_dev <= options.zero_floor;
  const bool small = final_dev <= std::max(result.tolerance * (1.0 + norm_product), options.zero_floor);
  result.passed = decays && small;
  if (sigmas.size() >= 2 && first > options.zero_floor)
    result.decay_slope = fit_growth(sigmas, result.deviations, 1e-300).slope;
  return result;
}

PeakTailReport peak_tail_report(const MomentumSpectrum& spectrum, double n_c, double length, const Vec& p,
                                Index lobes) {
  PeakTailReport report;
  const auto n = static_cast<Index>(spectrum.k.size());
  if (n == 0) throw PreconditionError("peak_tail_report: empty spectrum");
  Index nearest = 0;
  for (Index i = 1; i < n; ++i)
    if ((spectrum.k[i] - p).norm() < (spectrum.k[nearest] - p).norm()) nearest = i;
  report.peak_value = spectrum.values(nearest);

  double tail_max = 0.0;
  double max_violating_u = -1.0;
  std::vector<double> sampled_u;
  for (Index i = 0; i < n; ++i) {
    const double lk = length * (spectrum.k[i] - p).norm();
    const double u = 0.5 * lk;
    if (lk > 0.0) sampled_u.push_back(u);
    if (lk > 2.0) {
      tail_max = std::max(tail_max, spectrum.values(i));
      const double bound = 4.0 * n_c / (lk * lk);
      report.worst_bound_ratio = std::max(report.worst_bound_ratio, spectrum.values(i) / bound);
    }
    if (lk > 0.0 && spectrum.values(i) > 4.0 * n_c / (lk * lk)) {
      ++report.bound_violations;
      max_violating_u = std::max(max_violating_u, u);
    }
  }
  report.sharpness = tail_max > 0.0 ? report.peak_value / tail_max : std::numeric_limits<double>::infinity();
  std::sort(sampled_u.begin(), sampled_u.end());
  report.u_star = sampled_u.empty() ? 0.0 : sampled_u.front();
  if (max_violating_u >= 0.0) {
    const auto above = std::upper_bound(sampled_u.begin(), sampled_u.end(), max_violating_u);
    report.u_star = above == sampled_u.end() ? std::numeric_limits<double>::infinity() : *above;
  }
  fit_envelope(spectrum.k, spectrum.values, p, length, lobes, report.tail_constant, report.tail_exponent,
               report.tail_points);
  return report;
}

namespace {

void write_vec_cells(std::ostream& out, const Vec& v) {
  for (Index a = 0; a < v.size(); ++a) out << format_number(v(a)) << ',';
}

void write_header(std::ostream& out, const CsvMetadata& meta) {
  out << "# sigma=" << format_number(meta.sigma) << '\n';
  out << "# n_C=" << format_number(meta.n_c) << '\n';
  out << "# n_R=" << format_number(meta.n_r) << '\n';
  out << "# p=";
  for (Index a = 0; a < meta.momentum.size(); ++a) out << (a ? " " : "") << format_number(meta.momentum(a));
  out << '\n';
  if (meta.grid) {
    const Grid& g = *meta.grid;
    out << "# grid.counts=";
    for (int a = 0; a < g.dimension(); ++a) out << (a ? " " : "") << g.counts()(a);
    out << "\n# grid.spacing=";
    for (int a = 0; a < g.dimension(); ++a) out << (a ? " " : "") << format_number(g.spacing()(a));
    out << "\n# grid.origin=";
    for (int a = 0; a < g.dimension(); ++a) out << (a ? " " : "") << format_number(g.origin()(a));
    out << '\n';
  }
}

}  // namespace

void write_scan_csv(std::ostream& out, const CorrelationScan& scan, const CsvMetadata& meta) {
  write_header(out, meta);
  const auto d = scan.probe_support.dimension();
  for (int a = 0; a < d; ++a) out << "x_" << a << ',';
  for (int a = 0; a < d; ++a) out << "y_" << a << ',';
  out << "re_C,im_C,re_P,im_P,abs_diff\n";
  const auto n = static_cast<Index>(scan.shifts.size());
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      write_vec_cells(out, scan.shifts[i]);
      write_vec_cells(out, scan.shifts[j]);
      const Complex c = scan.measured(i, j), p = scan.predicted(i, j);
      out << format_number(c.real()) << ',' << format_number(c.imag()) << ',' << format_number(p.real()) << ','
          << format_number(p.imag()) << ',' << format_number(std::abs(c - p)) << '\n';
    }
  }
}

void write_spectrum_csv(std::ostream& out, const MomentumSpectrum& spectrum, const Region& region,
                        const CsvMetadata& meta) {
  write_header(out, meta);
  const int d = region.dimension();
  const bool closed = d == 3 && region.shape() == Shape::ball;
  for (int a = 0; a < d; ++a) out << "k_" << a << ',';
  out << "N," << (closed ? "closed_form," : "") << "bound_4nC\n";
  const double length = region.diameter();
  for (std::size_t i = 0; i < spectrum.k.size(); ++i) {
    const Vec& k = spectrum.k[i];
    write_vec_cells(out, k);
    out << format_number(spectrum.values(static_cast<Index>(i))) << ',';
    if (closed) out << format_number(closed_form_peak(3, length, k, meta.momentum, meta.n_c)) << ',';
    const double lk = length * (k - meta.momentum).norm();
    out << format_number(lk > 0.0 ? 4.0 * meta.n_c / (lk * lk) : std::numeric_limits<double>::infinity()) << '\n';
  }
}

}  // namespace condlab
