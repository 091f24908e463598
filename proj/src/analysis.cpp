#include "condlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "condlab/error.hpp"
#include "condlab/parallel.hpp"

namespace condlab {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::condensate:
      return "condensate";
    case Verdict::no_condensate:
      return "no-condensate";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

GrowthFit fit_growth(std::span<const double> sigmas, std::span<const double> values, double floor) {
  if (sigmas.size() != values.size()) throw StructuralError("fit_growth: length mismatch");
  if (sigmas.size() < 2) throw NumericalError("fit_growth: need at least two points");
  const auto n = static_cast<double>(sigmas.size());
  double mx = 0.0, my = 0.0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (!(sigmas[i] > 0.0)) throw NumericalError("fit_growth: schedule must be positive");
    xs.push_back(std::log(sigmas[i]));
    ys.push_back(std::log(std::max(values[i], floor)));
    mx += xs.back();
    my += ys.back();
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw NumericalError("degenerate fit: zero variance in log sigma");
  GrowthFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

namespace {

void require_normalized(const WaveFunction& s, std::string_view what) {
  if (std::abs(s.norm() - 1.0) > 1e-8)
    throw PreconditionError(std::string(what) + ": function must be normalized");
}

// Coefficients of `fs` in the family basis, or in `pdm`'s basis if it differs.
CMatrix coefficients_for(const OnePDM& pdm, const BasisPtr& cached_basis, const CMatrix& cached,
                         const std::vector<WaveFunction>& fs) {
  if (pdm.basis_ptr() == cached_basis) return cached;
  return pdm.basis().coefficients(fs);
}

}  // namespace

double condensate_number(const OnePDM& pdm, const WaveFunction& s) {
  require_normalized(s, "condensate_number");
  return std::max(0.0, gamma(pdm, s, s).real());
}

double condensate_number(const StateFamily& family, double sigma, const WaveFunction& s) {
  return condensate_number(family(sigma), s);
}

double regular_bound(const StateFamily& family, std::span<const double> sigmas,
                     const std::vector<WaveFunction>& probes, const WaveFunction& candidate) {
  if (probes.empty()) return 0.0;
  for (const auto& f : probes) {
    require_normalized(f, "regular_bound");
    if (std::abs(inner(candidate, f)) > 1e-8)
      throw PreconditionError("regular_bound: probe is not orthogonal to the candidate singular mode");
  }
  const CMatrix coeffs = family.basis().coefficients(probes);
  std::vector<double> best(sigmas.size(), 0.0);
  parallel_for(static_cast<Index>(sigmas.size()), [&](Index i) {
    const OnePDM pdm = family(sigmas[i]);
    const CMatrix c = coefficients_for(pdm, family.basis_ptr(), coeffs, probes);
    double m = 0.0;
    for (Index j = 0; j < c.cols(); ++j) m = std::max(m, pdm.form(c.col(j), c.col(j)).real());
    best[i] = m;
  });
  return *std::max_element(best.begin(), best.end());
}

std::vector<WaveFunction> probe_panel(const Grid& grid, const Region& region) {
  const int d = region.dimension();
  const int per_axis = d == 1 ? 7 : 3;
  const double width = 0.25 * region.size();
  const double step = region.size() / (per_axis + 1);
  const Shape shape = region.shape() == Shape::ball ? Shape::ball : (d == 1 ? Shape::interval : Shape::box);
  std::vector<WaveFunction> out;
  IVec idx = IVec::Zero(d);
  while (true) {
    Vec center = region.center();
    for (int a = 0; a < d; ++a) center(a) += (static_cast<double>(idx(a)) - 0.5 * (per_axis - 1)) * step;
    const Region bump = shape == Shape::interval ? Region::interval(center(0), width)
                                                 : Region::make(shape, center, width);
    if (region.compactly_contains(bump) && !grid.mask(bump).empty()) out.push_back(smooth_bump(grid, bump));
    int a = d - 1;
    while (a >= 0 && idx(a) == per_axis - 1) idx(a--) = 0;
    if (a < 0) break;
    ++idx(a);
  }
  return out;
}

std::vector<WaveFunction> orthogonal_probes(const std::vector<WaveFunction>& spanning,
                                            const WaveFunction& s) {
  std::vector<WaveFunction> out;
  for (const auto& f : spanning) {
    const WaveFunction r = project_out(f, s);
    if (r.norm() > 1e-6 * f.norm()) {
      // One more pass keeps <s, r> at rounding level after normalization.
      out.push_back(project_out(r, s).normalized());
    }
  }
  return out;
}

CriterionResult criterion_check(const StateFamily& family, std::span<const double> sigmas,
                                const CriterionThresholds& thresholds, const WaveFunction& singular_probe,
                                const std::vector<WaveFunction>& regular_probes) {
  if (sigmas.size() < 4) throw PreconditionError("criterion_check: schedule needs at least 4 points");
  for (std::size_t i = 1; i < sigmas.size(); ++i)
    if (!(sigmas[i] > sigmas[i - 1])) throw PreconditionError("criterion_check: schedule must increase");
  if (!(thresholds.bounded > 0.0 && thresholds.bounded < thresholds.divergent))
    throw PreconditionError("criterion_check: need 0 < bounded < divergent");
  require_normalized(singular_probe, "criterion_check");

  std::vector<WaveFunction> all{singular_probe};
  all.insert(all.end(), regular_probes.begin(), regular_probes.end());
  const CMatrix coeffs = family.basis().coefficients(all);

  const auto n_sigma = static_cast<Index>(sigmas.size());
  RMatrix occ(static_cast<Index>(all.size()), n_sigma);
  parallel_for(n_sigma, [&](Index i) {
    const OnePDM pdm = family(sigmas[i]);
    const CMatrix c = coefficients_for(pdm, family.basis_ptr(), coeffs, all);
    for (Index j = 0; j < c.cols(); ++j) occ(j, i) = pdm.form(c.col(j), c.col(j)).real();
  });

  CriterionResult result;
  result.momentum = Vec::Zero(family.region().dimension());
  auto row = [&](Index j) {
    std::vector<double> r(sigmas.size());
    for (Index i = 0; i < n_sigma; ++i) r[i] = occ(j, i);
    return r;
  };
  result.singular_occupations = row(0);
  result.singular_slope = fit_growth(sigmas, result.singular_occupations, thresholds.occupation_floor).slope;
  result.regular_occupations = occ.bottomRows(occ.rows() - 1);
  double worst = -std::numeric_limits<double>::infinity();
  for (Index j = 1; j < occ.rows(); ++j) {
    const double slope = fit_growth(sigmas, row(j), thresholds.occupation_floor).slope;
    result.regular_slopes.push_back(slope);
    worst = std::max(worst, slope);
  }
  if (worst < thresholds.bounded && result.singular_slope > thresholds.divergent)
    result.verdict = Verdict::condensate;
  else if (worst > thresholds.divergent || result.singular_slope < thresholds.bounded)
    result.verdict = Verdict::no_condensate;
  else
    result.verdict = Verdict::inconclusive;
  return result;
}

CriterionResult criterion_check(const StateFamily& family, std::span<const double> sigmas,
                                const CriterionThresholds& thresholds, const Vec& momentum) {
  const int d = family.region().dimension();
  const Vec p = momentum.size() == 0 ? Vec(Vec::Zero(d)) : momentum;
  if (p.size() != d) throw StructuralError("criterion_check: momentum dimension mismatch");
  const WaveFunction s = plane_wave_mode(family.grid(), family.region(), p);
  auto probes = orthogonal_probes(probe_panel(family.grid(), family.region()), s);
  CriterionResult result = criterion_check(family, sigmas, thresholds, s, probes);
  result.momentum = p;
  return result;
}

namespace {

double symmetric_norm(const CMatrix& d) {
  if (d.size() == 0) return 0.0;
  const CMatrix h = 0.5 * (d + d.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

double rank_one_distance(const OnePDM& pdm, double n_c, const WaveFunction& s,
                         const std::vector<WaveFunction>& probe_basis) {
  if (!(n_c > 0.0)) throw PreconditionError("rank_one_distance: n_C must be positive");
  const auto k = static_cast<Index>(probe_basis.size());
  CVector overlaps(k);  // <s, f_k>
  for (Index i = 0; i < k; ++i) overlaps(i) = inner(s, probe_basis[i]);
  const CMatrix g = gamma_matrix(pdm, probe_basis);
  const CMatrix d = g / n_c - overlaps.conjugate() * overlaps.transpose();
  return symmetric_norm(d);
}

double rank_one_distance(const OnePDM& pdm, double n_c, const WaveFunction& s, Index count) {
  if (!(n_c > 0.0)) throw PreconditionError("rank_one_distance: n_C must be positive");
  const Index k = std::min(count, pdm.basis().size());
  // Probes are basis modes: Gamma(b_i, b_j) = G_ij and <s, b_i> = conj(<b_i, s>).
  const CVector overlaps = pdm.basis().coefficients(s).head(k).conjugate();
  const CMatrix g = pdm.matrix().topLeftCorner(k, k);
  const CMatrix d = g / n_c - overlaps.conjugate() * overlaps.transpose();
  return symmetric_norm(d);
}

std::vector<std::size_t> increasing_subsequence(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> length(n, 1), prev(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (values[j] < values[i] && length[j] + 1 > length[i]) {
        length[i] = length[j] + 1;
        prev[i] = j;
      }
    }
  }
  std::vector<std::size_t> out;
  if (n == 0) return out;
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (length[i] > length[best]) best = i;
  for (std::size_t i = best; i != n; i = prev[i]) out.push_back(i);
  std::reverse(out.begin(), out.end());
  return out;
}

SingularFunction extract_singular_function(const OnePDM& pdm, const PowerOptions& options) {
  if (!(pdm.trace() > 0.0)) throw PreconditionError("extract_singular_function: no occupied modes");
  const LeadingEigenpairs eig = leading_eigenpairs(
      [&pdm](const CVector& v) -> CVector { return pdm.apply(v); }, pdm.basis().size(), options);
  return SingularFunction{pdm.basis().synthesize(eig.vector), eig.vector, eig.first, eig.second,
                          eig.degenerate};
}

namespace {

double amplitude_at(const std::vector<Index>& points, const std::vector<Vec>& coords, const CVector& values,
                    const Vec& p) {
  Complex sum(0.0);
  for (std::size_t r = 0; r < points.size(); ++r) sum += std::polar(1.0, -p.dot(coords[r])) * values(r);
  return std::abs(sum);
}

}  // namespace

MomentumFit fit_momentum(const WaveFunction& s, const Region& region, double modulus_tolerance) {
  require_normalized(s, "fit_momentum");
  const Grid& grid = s.grid();
  const auto points = grid.mask(region);
  if (points.empty()) throw PreconditionError("fit_momentum: region contains no grid points");
  const int d = grid.dimension();

  std::vector<Vec> coords;
  coords.reserve(points.size());
  CVector values(points.size());
  double mean = 0.0;
  for (std::size_t r = 0; r < points.size(); ++r) {
    coords.push_back(grid.point(points[r]));
    values(r) = s[points[r]];
    mean += std::abs(values(r));
  }
  mean /= static_cast<double>(points.size());
  double deviation = 0.0;
  for (Index r = 0; r < values.size(); ++r) deviation = std::max(deviation, std::abs(std::abs(values(r)) - mean));
  deviation = mean > 0.0 ? deviation / mean : std::numeric_limits<double>::infinity();
  if (!(deviation <= modulus_tolerance))
    throw NotHomogeneousError("fit_momentum: |s| is not constant on the region");

  // Coarse estimate from nearest-neighbour phase increments.
  Vec p(d);
  for (int a = 0; a < d; ++a) {
    Complex acc(0.0);
    for (Index flat : points) {
      IVec idx = grid.unflatten(flat);
      ++idx(a);
      if (!grid.in_range(idx)) continue;
      const Index next = grid.flatten(idx);
      if (s[next] == Complex(0.0)) continue;
      acc += s[next] * std::conj(s[flat]);
    }
    p(a) = std::arg(acc) / grid.spacing()(a);
  }

  // Coordinate pattern search on |f~(p)|, halving the step down to 1e-9 / L.
  double best = amplitude_at(points, coords, values, p);
  double step = kPi / region.size();
  while (step > 1e-9 / region.size()) {
    bool moved = false;
    for (int a = 0; a < d; ++a) {
      for (double sign : {-1.0, 1.0}) {
        Vec trial = p;
        trial(a) += sign * step;
        const double value = amplitude_at(points, coords, values, trial);
        if (value > best) {
          best = value;
          p = trial;
          moved = true;
        }
      }
    }
    if (!moved) step *= 0.5;
  }

  MomentumFit fit;
  fit.momentum = p;
  fit.modulus_deviation = deviation;
  fit.residual = std::max(0.0, 1.0 - std::norm(inner(plane_wave_mode(grid, region, p), s)));
  return fit;
}

double op_ratio(const OnePDM& pdm) {
  const double total = pdm.total();
  if (!(total > 0.0)) throw PreconditionError("op_ratio: state has no particles");
  double top;
  if (pdm.diagonal()) {
    top = pdm.occupations().maxCoeff();
  } else {
    top = leading_eigenpairs([&pdm](const CVector& v) -> CVector { return pdm.apply(v); }, pdm.basis().size())
              .first;
  }
  return top / total;
}

}  // namespace condlab
