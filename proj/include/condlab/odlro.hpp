#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "condlab/analysis.hpp"

namespace condlab {

/// Condensate parameters entering the leading-order correlation prediction.
struct ScanModel {
  Vec momentum;      ///< p
  double n_c = 0.0;  ///< n_C(sigma)
  double n_r = 0.0;  ///< regular occupation bound
};

/// C(x, y) = Gamma(T_x f, T_y f) over a set of lattice translations, with
/// the prediction P(x, y) = (n_C/|O|) e^{i(x-y)p} (2 pi)^d |f~(p)|^2.
struct CorrelationScan {
  Region probe_support;
  std::vector<Vec> shifts;
  CMatrix measured;
  CMatrix predicted;
  ScanModel model;
  double region_volume = 0.0;  ///< discrete |O|
  double probe_volume = 0.0;   ///< discrete |O0|
  double max_deviation = 0.0;  ///< max |C - P|
  double error_scale = 0.0;    ///< sqrt(n_R n_C |O0| / |O|)
};

CorrelationScan correlation_scan(const OnePDM& pdm, const WaveFunction& probe, const std::vector<Vec>& shifts,
                                 const ScanModel& model);

/// P(x, y) for a probe on a region of discrete volume `region_volume`.
Complex predicted_correlation(const ScanModel& model, Complex probe_amplitude, double region_volume, int dimension,
                              const Vec& x, const Vec& y);

/// Lattice translations along `axis`, every `stride` cells, that keep the
/// closure of the translated probe support inside `region`.
std::vector<Vec> admissible_shifts(const Grid& grid, const Region& region, const Region& probe_support, int axis,
                                   Index stride);

/// Wave vectors for a momentum spectrum. A line grid varies a single axis
/// (origin + t e_axis) and is evaluated through a separable fast path.
struct KGrid {
  std::vector<Vec> points;
  std::optional<int> axis;

  static KGrid line(const Vec& origin, int axis, std::span<const double> offsets);
  static KGrid list(std::vector<Vec> points);
};

struct MomentumSpectrum {
  std::vector<Vec> k;
  RVector values;  ///< N(k) = Gamma(e_k, e_k)
  Index peak_index = 0;
  Vec peak;
  double peak_value = 0.0;
  double length = 0.0;  ///< diameter L of the region
  /// Envelope A (L|k - k*|)^alpha fitted on lobe maxima with L|k - k*| > 2.
  double tail_constant = 0.0;
  double tail_exponent = 0.0;
  Index tail_points = 0;
};

MomentumSpectrum momentum_distribution(const OnePDM& pdm, const KGrid& grid, Index lobes = 10);

/// N(k) for each k by direct quadrature (no fast path); used as a reference.
RVector momentum_values_direct(const OnePDM& pdm, const std::vector<Vec>& ks);

/// n_C 9 u^{-6} (sin u - u cos u)^2, u = L|k-p|/2, for balls in d = 3;
/// returns n_C at u = 0. Throws ParameterError for d != 3.
double closed_form_peak(int dimension, double u, double n_c);
double closed_form_peak(int dimension, double length, const Vec& k, const Vec& p, double n_c);

struct HomogeneityOptions {
  std::optional<double> tolerance;  ///< default 10 sqrt(n_R / n_C(sigma_last))
  double zero_floor = 1e-10;        ///< deviations below this count as exact
};

struct HomogeneityResult {
  bool passed = false;
  std::vector<double> deviations;  ///< worst deviation per sigma
  std::vector<double> condensate_numbers;
  double tolerance = 0.0;
  double decay_slope = 0.0;
};

/// Worst |Gamma_sigma(T_x f, T_x g)/n_C - <s,f><g,s>| over probes and
/// translations, with s the leading eigenvector at the last sigma.
HomogeneityResult homogeneity_test(const StateFamily& family, std::span<const double> sigmas,
                                   const std::vector<WaveFunction>& probes, const std::vector<Vec>& shifts,
                                   const HomogeneityOptions& options = {});

struct PeakTailReport {
  double peak_value = 0.0;      ///< N at the sampled k nearest p
  double sharpness = 0.0;       ///< N(p) / max_{L|k-p| > 2} N(k)
  double u_star = 0.0;          ///< bound N <= 4 n_C (L|k-p|)^{-2} holds for sampled u >= u_star
  Index bound_violations = 0;
  double worst_bound_ratio = 0.0;  ///< max N / (4 n_C (L|k-p|)^{-2}) over L|k-p| > 2
  double tail_constant = 0.0;
  double tail_exponent = 0.0;
  Index tail_points = 0;
};

PeakTailReport peak_tail_report(const MomentumSpectrum& spectrum, double n_c, double length, const Vec& p,
                                Index lobes = 10);

/// Lobe maxima of `values` along the k ordering (distance measured from
/// `center`): local maxima with L|k - center| > 2 on the side of the grid
/// holding more points, nearest first, at most `lobes` of them.
std::vector<Index> lobe_maxima(const std::vector<Vec>& ks, const RVector& values, const Vec& center, double length,
                               Index lobes);

struct CsvMetadata {
  double sigma = 0.0;
  double n_c = 0.0;
  double n_r = 0.0;
  Vec momentum;
  const Grid* grid = nullptr;
};

/// Columns: x_*, y_*, re_C, im_C, re_P, im_P, abs_diff.
void write_scan_csv(std::ostream& out, const CorrelationScan& scan, const CsvMetadata& meta);
/// Columns: k_*, N, closed_form (d = 3 balls only), bound_4nC.
void write_spectrum_csv(std::ostream& out, const MomentumSpectrum& spectrum, const Region& region,
                        const CsvMetadata& meta);

}  // namespace condlab
