#pragma once

#include <functional>
#include <map>
#include <string_view>

#include "condlab/one_pdm.hpp"

namespace condlab {

enum class FamilyKind { appendix, boosted, heated, custom };

std::string_view to_string(FamilyKind kind);
FamilyKind family_kind_from_string(std::string_view name);

/// Closed forms of the appendix family omega_n with 0 < eps < 1, n > 1.
namespace appendix {

/// Throws ParameterError unless 0 < eps < 1, n > 1 and n^eps < n - 1.
void validate(double n, double eps);
/// n_C(n) = n^eps.
double condensate_number(double n, double eps);
/// eps_n = ln((1 + n - n^eps) / (n - n^eps)).
double decay_rate(double n, double eps);
/// nu_k: n^eps for k = 0, e^{-eps_n k} for k >= 1.
double occupation(double n, double eps, Index k);
/// sum_{k >= 1} e^{-eps_n k} = e^{-eps_n} / (1 - e^{-eps_n}).
double geometric_tail(double n, double eps);
/// Mass in modes k >= M: e^{-eps_n M} / (1 - e^{-eps_n}).
double truncation_defect(double n, double eps, Index modes);

}  // namespace appendix

struct FamilyParameters {
  double epsilon = 0.5;
  Vec boost;  ///< empty unless boosted
  Index modes = 0;
};

/// sigma -> one-particle density matrix.
class StateFamily {
 public:
  using Evaluator = std::function<OnePDM(double)>;

  StateFamily(FamilyKind kind, FamilyParameters params, BasisPtr basis, Evaluator evaluator);

  FamilyKind kind() const { return kind_; }
  const FamilyParameters& parameters() const { return params_; }
  const ModeBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Region& region() const { return basis_->support(); }
  const Grid& grid() const { return basis_->grid(); }

  OnePDM operator()(double sigma) const { return evaluator_(sigma); }

 private:
  FamilyKind kind_;
  FamilyParameters params_;
  BasisPtr basis_;
  Evaluator evaluator_;
};

/// Appendix family: nu_0 = n^eps on the constant mode, nu_k = e^{-eps_n k}
/// on modes 1..M-1; the omitted geometric tail is carried as unresolved mass.
/// Requires basis mode 0 to be constant on the region.
StateFamily appendix_family(BasisPtr basis, double epsilon);

/// Basis modes multiplied by e^{ipx}, occupations unchanged.
StateFamily boosted_family(const StateFamily& base, const Vec& p);

/// nu_k = n / M for every mode (all wave functions non-regular in the limit).
StateFamily heated_family(BasisPtr basis);

/// Occupations read from a sigma-indexed table (exact sigma lookup; shorter
/// rows are padded with zeros).
using OccupationTable = std::map<double, std::vector<double>>;
StateFamily custom_family(BasisPtr basis, OccupationTable table);

/// Eigenvalues of a Hamiltonian for which omega_n is KMS at temperature T:
/// E_0 = T ln(1 + 1/n_C), E_k = T ln(1 + e^{eps_n k}) for 1 <= k < M.
RVector kms_hamiltonian(double n, double epsilon, double temperature, Index modes);

/// Bose-Einstein occupation 1 / (e^{E/T} - 1).
double bose_einstein(double energy, double temperature);

}  // namespace condlab
