#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "condlab/eigensolver.hpp"
#include "condlab/state_family.hpp"

namespace condlab {

enum class Verdict { condensate, no_condensate, inconclusive };
std::string_view to_string(Verdict verdict);

/// Growth-exponent thresholds: a probe is "bounded" when its log-log slope
/// is below `bounded` and "divergent" above `divergent`.
struct CriterionThresholds {
  double bounded = 0.05;
  double divergent = 0.15;
  /// Occupations below this are treated as this value before taking logs.
  double occupation_floor = 1e-12;
};

/// Least-squares line through (log sigma, log value).
struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
};
GrowthFit fit_growth(std::span<const double> sigmas, std::span<const double> values,
                     double floor = 1e-12);

/// Gamma(s, s) for a normalized s.
double condensate_number(const OnePDM& pdm, const WaveFunction& s);
double condensate_number(const StateFamily& family, double sigma, const WaveFunction& s);

/// max over sigma and probes of Gamma_sigma(f, f): a lower estimate of n_R.
/// Probes must be normalized and orthogonal to `candidate`.
double regular_bound(const StateFamily& family, std::span<const double> sigmas,
                     const std::vector<WaveFunction>& probes, const WaveFunction& candidate);

/// Spanning set of smooth bumps (diameter L/4) placed on a lattice inside
/// the region, before any projection.
std::vector<WaveFunction> probe_panel(const Grid& grid, const Region& region);

/// Projects `s` out of each function and normalizes; drops functions whose
/// remainder is negligible.
std::vector<WaveFunction> orthogonal_probes(const std::vector<WaveFunction>& spanning,
                                            const WaveFunction& s);

struct CriterionResult {
  Verdict verdict = Verdict::inconclusive;
  Vec momentum;
  double singular_slope = 0.0;
  std::vector<double> regular_slopes;
  std::vector<double> singular_occupations;  ///< per sigma
  RMatrix regular_occupations;               ///< probe x sigma
};

/// Growth of the singular probe against the regular probes along the
/// schedule; verdict condensate iff every regular slope is below
/// `bounded` and the singular slope exceeds `divergent`; no-condensate if a
/// regular slope exceeds `divergent` or the singular slope is below
/// `bounded`; inconclusive otherwise.
CriterionResult criterion_check(const StateFamily& family, std::span<const double> sigmas,
                                const CriterionThresholds& thresholds, const WaveFunction& singular_probe,
                                const std::vector<WaveFunction>& regular_probes);

/// Criterion for a homogeneous condensate of momentum p (p = 0: the
/// constant mode against zero-mean probes).
CriterionResult criterion_check(const StateFamily& family, std::span<const double> sigmas,
                                const CriterionThresholds& thresholds = {}, const Vec& momentum = Vec());

/// Operator norm of D_kl = Gamma(f_k, f_l)/n_C - <s, f_k><f_l, s> over an
/// orthonormal probe basis.
double rank_one_distance(const OnePDM& pdm, double n_c, const WaveFunction& s,
                         const std::vector<WaveFunction>& probe_basis);
/// Same with the first `count` modes of the density matrix's own basis.
double rank_one_distance(const OnePDM& pdm, double n_c, const WaveFunction& s, Index count);

/// Indices of the longest strictly increasing subsequence (earliest on ties).
std::vector<std::size_t> increasing_subsequence(std::span<const double> values);

struct SingularFunction {
  WaveFunction function;
  CVector coefficients;
  double eigenvalue = 0.0;
  double second_eigenvalue = 0.0;
  bool degenerate = false;
};

/// Leading eigenvector of the density matrix as a wave function.
SingularFunction extract_singular_function(const OnePDM& pdm, const PowerOptions& options = {});

struct MomentumFit {
  Vec momentum;
  double residual = 0.0;           ///< 1 - |<e_p, s>|^2
  double modulus_deviation = 0.0;  ///< max relative deviation of |s| on the region
};

/// Fits s to a localized plane wave |O|^{-1/2} e^{ipx}. Throws
/// NotHomogeneousError when |s| varies by more than `modulus_tolerance`.
MomentumFit fit_momentum(const WaveFunction& s, const Region& region, double modulus_tolerance = 1e-6);

/// lambda_max / total particle number.
double op_ratio(const OnePDM& pdm);

}  // namespace condlab
