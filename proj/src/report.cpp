#include "condlab/report.hpp"

#include <limits>
#include <ostream>

#include "condlab/error.hpp"
#include "condlab/format.hpp"
#include "condlab/parallel.hpp"

namespace condlab {

CondensateReport analyze(const StateFamily& family, std::span<const double> sigmas,
                         const ReportOptions& options) {
  if (sigmas.empty()) throw PreconditionError("analyze: empty schedule");
  CondensateReport report;
  report.sigmas.assign(sigmas.begin(), sigmas.end());
  const Region& region = family.region();
  const int d = region.dimension();

  const SingularFunction leading = extract_singular_function(family(sigmas.back()));
  report.momentum = Vec::Zero(d);
  try {
    const MomentumFit fit = fit_momentum(leading.function, region, options.modulus_tolerance);
    report.momentum = fit.momentum;
    report.momentum_residual = fit.residual;
    report.momentum_fitted = true;
  } catch (const NotHomogeneousError&) {
    report.momentum_note = "leading eigenvector is not a localized plane wave; using p = 0";
    report.momentum_residual = 1.0;
  }

  report.criterion = criterion_check(family, sigmas, options.thresholds, report.momentum);
  report.regular_bound_grows = false;
  report.regular_bound = 0.0;
  for (std::size_t j = 0; j < report.criterion.regular_slopes.size(); ++j) {
    report.regular_bound = std::max(report.regular_bound,
                                    report.criterion.regular_occupations.row(static_cast<Index>(j)).maxCoeff());
    if (report.criterion.regular_slopes[j] > options.thresholds.bounded) report.regular_bound_grows = true;
  }

  const WaveFunction s = plane_wave_mode(family.grid(), region, report.momentum);
  const std::size_t n = sigmas.size();
  report.condensate_numbers.resize(n);
  report.rank_one_distances.resize(n);
  report.leading_eigenvalues.resize(n);
  report.second_eigenvalues.resize(n);
  report.op_ratios.resize(n);
  std::vector<char> degenerate(n, 0);
  parallel_for(static_cast<Index>(n), [&](Index i) {
    const OnePDM pdm = family(sigmas[i]);
    const double nc = condensate_number(pdm, s);
    report.condensate_numbers[i] = nc;
    report.rank_one_distances[i] =
        nc > 0.0 ? rank_one_distance(pdm, nc, s, options.rank_one_probes)
                 : std::numeric_limits<double>::infinity();
    const LeadingEigenpairs eig = leading_eigenpairs(
        [&pdm](const CVector& v) -> CVector { return pdm.apply(v); }, pdm.basis().size());
    report.leading_eigenvalues[i] = eig.first;
    report.second_eigenvalues[i] = eig.second;
    report.op_ratios[i] = op_ratio(pdm);
    degenerate[i] = eig.degenerate;
  });
  report.degenerate_top = degenerate.back() != 0;

  report.subsequence = increasing_subsequence(report.condensate_numbers);
  if (report.subsequence.size() >= 2) {
    std::vector<double> xs, ys;
    for (auto i : report.subsequence) {
      xs.push_back(sigmas[i]);
      ys.push_back(report.rank_one_distances[i]);
    }
    report.rank_one_slope = fit_growth(xs, ys, 1e-300).slope;
  }
  return report;
}

namespace {

nlohmann::json vec_json(const Vec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

nlohmann::json to_json(const CondensateReport& r) {
  using nlohmann::json;
  json criterion{{"verdict", std::string(to_string(r.criterion.verdict))},
                 {"momentum", vec_json(r.criterion.momentum)},
                 {"singular_slope", r.criterion.singular_slope},
                 {"regular_slopes", r.criterion.regular_slopes},
                 {"singular_occupations", r.criterion.singular_occupations}};
  json momentum{{"p", vec_json(r.momentum)}, {"residual", r.momentum_residual}, {"fitted", r.momentum_fitted}};
  if (!r.momentum_note.empty()) momentum["note"] = r.momentum_note;
  return json{{"sigmas", r.sigmas},
              {"verdict", std::string(to_string(r.criterion.verdict))},
              {"criterion", criterion},
              {"momentum", momentum},
              {"n_C", r.condensate_numbers},
              {"n_R_estimate", r.regular_bound},
              {"n_R_unbounded", r.regular_bound_grows},
              {"rank_one_distances", r.rank_one_distances},
              {"rank_one_subsequence", r.subsequence},
              {"rank_one_slope", r.rank_one_slope},
              {"leading_eigenvalues", r.leading_eigenvalues},
              {"second_eigenvalues", r.second_eigenvalues},
              {"degenerate_top", r.degenerate_top},
              {"op_ratios", r.op_ratios}};
}

void write_csv(std::ostream& out, const CondensateReport& r) {
  out << "sigma,n_C,rank_one_distance,op_ratio,lambda_1,lambda_2,singular_occupation,singular_slope,"
         "max_regular_slope\n";
  double max_regular = 0.0;
  for (std::size_t j = 0; j < r.criterion.regular_slopes.size(); ++j)
    max_regular = j == 0 ? r.criterion.regular_slopes[j] : std::max(max_regular, r.criterion.regular_slopes[j]);
  for (std::size_t i = 0; i < r.sigmas.size(); ++i) {
    out << format_number(r.sigmas[i]) << ',' << format_number(r.condensate_numbers[i]) << ','
        << format_number(r.rank_one_distances[i]) << ',' << format_number(r.op_ratios[i]) << ','
        << format_number(r.leading_eigenvalues[i]) << ',' << format_number(r.second_eigenvalues[i]) << ','
        << format_number(r.criterion.singular_occupations[i]) << ',' << format_number(r.criterion.singular_slope)
        << ',' << format_number(max_regular) << '\n';
  }
}

}  // namespace condlab
