#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "condlab/analysis.hpp"

namespace condlab {

/// Aggregated diagnostics of a state family over a sigma schedule.
struct CondensateReport {
  std::vector<double> sigmas;
  Vec momentum;                       ///< fitted condensate momentum p
  double momentum_residual = 0.0;
  bool momentum_fitted = false;       ///< false when the leading mode is not homogeneous
  std::string momentum_note;
  std::vector<double> condensate_numbers;  ///< n_C(sigma) = Gamma_sigma(e_p, e_p)
  double regular_bound = 0.0;              ///< max regular-probe occupation over the schedule
  bool regular_bound_grows = false;        ///< regular occupations are not uniformly bounded
  CriterionResult criterion;
  std::vector<double> rank_one_distances;
  std::vector<std::size_t> subsequence;    ///< schedule indices along which n_C increases
  double rank_one_slope = 0.0;             ///< log-log slope of the distance on the subsequence
  std::vector<double> leading_eigenvalues;
  std::vector<double> second_eigenvalues;
  std::vector<double> op_ratios;
  bool degenerate_top = false;
};

struct ReportOptions {
  CriterionThresholds thresholds;
  Index rank_one_probes = 32;
  double modulus_tolerance = 1e-6;
};

/// Runs the criterion with the momentum fitted to the leading eigenvector at
/// the last sigma, then sweeps n_C, rank-one distance, eigenvalues and the
/// Penrose-Onsager ratio over the schedule.
CondensateReport analyze(const StateFamily& family, std::span<const double> sigmas,
                         const ReportOptions& options = {});

nlohmann::json to_json(const CondensateReport& report);
/// One row per sigma: sigma, n_C, rank-one distance, OP ratio, lambda_1,
/// lambda_2, singular occupation, then the criterion slopes (repeated).
void write_csv(std::ostream& out, const CondensateReport& report);

}  // namespace condlab
