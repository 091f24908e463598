#include "condlab/state_family.hpp"

#include <cmath>
#include <string>

#include "condlab/error.hpp"

namespace condlab {

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::appendix:
      return "appendix";
    case FamilyKind::boosted:
      return "boosted";
    case FamilyKind::heated:
      return "heated";
    case FamilyKind::custom:
      return "custom";
  }
  return "unknown";
}

FamilyKind family_kind_from_string(std::string_view name) {
  if (name == "appendix") return FamilyKind::appendix;
  if (name == "boosted") return FamilyKind::boosted;
  if (name == "heated") return FamilyKind::heated;
  if (name == "custom") return FamilyKind::custom;
  throw ParameterError("unknown family kind '" + std::string(name) + "'");
}

namespace appendix {

void validate(double n, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  if (!(n > 1.0) || !std::isfinite(n)) throw ParameterError("n must exceed 1");
  if (!(std::pow(n, eps) < n - 1.0)) throw ParameterError("n^epsilon must be below n - 1");
}

double condensate_number(double n, double eps) {
  validate(n, eps);
  return std::pow(n, eps);
}

double decay_rate(double n, double eps) {
  validate(n, eps);
  return std::log1p(1.0 / (n - std::pow(n, eps)));
}

double occupation(double n, double eps, Index k) {
  if (k < 0) throw ParameterError("mode index must be nonnegative");
  if (k == 0) return condensate_number(n, eps);
  return std::exp(-decay_rate(n, eps) * static_cast<double>(k));
}

double geometric_tail(double n, double eps) {
  const double rate = decay_rate(n, eps);
  return std::exp(-rate) / -std::expm1(-rate);
}

double truncation_defect(double n, double eps, Index modes) {
  const double rate = decay_rate(n, eps);
  return std::exp(-rate * static_cast<double>(std::max<Index>(modes, 1))) / -std::expm1(-rate);
}

}  // namespace appendix

StateFamily::StateFamily(FamilyKind kind, FamilyParameters params, BasisPtr basis,
                         Evaluator evaluator)
    : kind_(kind), params_(std::move(params)), basis_(std::move(basis)), evaluator_(std::move(evaluator)) {
  if (!basis_) throw StructuralError("state family needs a mode basis");
  params_.modes = basis_->size();
}

namespace {

void require_constant_mode0(const ModeBasis& basis) {
  const CVector& b0 = basis.modes().col(0);
  const double scale = b0.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || (b0.array() - b0(0)).abs().maxCoeff() > 1e-10 * scale)
    throw PreconditionError("basis mode 0 must be the constant function on the region");
}

}  // namespace

StateFamily appendix_family(BasisPtr basis, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  require_constant_mode0(*basis);
  FamilyParameters params;
  params.epsilon = epsilon;
  auto evaluator = [basis, epsilon](double n) {
    const Index m = basis->size();
    const double rate = appendix::decay_rate(n, epsilon);
    RVector nu(m);
    nu(0) = appendix::condensate_number(n, epsilon);
    for (Index k = 1; k < m; ++k) nu(k) = std::exp(-rate * static_cast<double>(k));
    return OnePDM(basis, std::move(nu), std::nullopt, appendix::truncation_defect(n, epsilon, m));
  };
  return StateFamily(FamilyKind::appendix, params, basis, evaluator);
}

StateFamily boosted_family(const StateFamily& base, const Vec& p) {
  if (p.isZero()) return base;
  auto basis = std::make_shared<const ModeBasis>(base.basis().boosted(p));
  FamilyParameters params = base.parameters();
  params.boost = p;
  auto evaluator = [base, basis](double sigma) { return base(sigma).with_basis(basis); };
  return StateFamily(FamilyKind::boosted, params, basis, evaluator);
}

StateFamily heated_family(BasisPtr basis) {
  auto evaluator = [basis](double n) {
    if (!(n >= 0.0) || !std::isfinite(n)) throw ParameterError("particle number must be nonnegative");
    const Index m = basis->size();
    return OnePDM(basis, RVector::Constant(m, n / static_cast<double>(m)));
  };
  return StateFamily(FamilyKind::heated, FamilyParameters{}, basis, evaluator);
}

StateFamily custom_family(BasisPtr basis, OccupationTable table) {
  const auto m = static_cast<std::size_t>(basis->size());
  for (const auto& [sigma, row] : table) {
    if (row.size() > m) throw ParameterError("custom occupation row longer than the basis");
    for (double v : row)
      if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("custom occupations must be nonnegative");
  }
  auto evaluator = [basis, table = std::move(table)](double sigma) {
    const auto it = table.find(sigma);
    if (it == table.end()) throw ParameterError("custom family has no occupations at this sigma");
    RVector nu = RVector::Zero(basis->size());
    for (std::size_t k = 0; k < it->second.size(); ++k) nu(static_cast<Index>(k)) = it->second[k];
    return OnePDM(basis, std::move(nu));
  };
  return StateFamily(FamilyKind::custom, FamilyParameters{}, basis, std::move(evaluator));
}

RVector kms_hamiltonian(double n, double epsilon, double temperature, Index modes) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) throw ParameterError("temperature must be positive");
  if (modes < 1) throw ParameterError("mode count must be positive");
  const double rate = appendix::decay_rate(n, epsilon);
  RVector energies(modes);
  energies(0) = temperature * std::log1p(1.0 / appendix::condensate_number(n, epsilon));
  for (Index k = 1; k < modes; ++k) {
    const double x = rate * static_cast<double>(k);
    // ln(1 + e^x) = x + ln(1 + e^{-x})
    energies(k) = temperature * (x + std::log1p(std::exp(-x)));
  }
  return energies;
}

double bose_einstein(double energy, double temperature) {
  return 1.0 / std::expm1(energy / temperature);
}

}  // namespace condlab
