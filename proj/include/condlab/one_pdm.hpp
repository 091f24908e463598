#pragma once

#include <optional>
#include <vector>

#include "condlab/mode_basis.hpp"

namespace condlab {

/// One-particle density matrix Gamma(f, g) = omega(a*(f) a(g)) of a
/// gauge-invariant quasifree state, represented in a mode basis:
///   Gamma(f, g) = sum_kl <f, b_k> G_kl <b_l, g>,   G = diag(nu) + C,
/// where C is an optional Hermitian coupling block with zero diagonal.
///
/// `unresolved_mass` counts particles in modes beyond the truncated basis
/// (orthogonal to every b_k); it enters `total()` but never `gamma`.
class OnePDM {
 public:
  OnePDM(BasisPtr basis, RVector occupations, std::optional<CMatrix> coupling = std::nullopt,
         double unresolved_mass = 0.0);

  const ModeBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const RVector& occupations() const { return occupations_; }
  const std::optional<CMatrix>& coupling() const { return coupling_; }
  double unresolved_mass() const { return unresolved_mass_; }
  bool diagonal() const { return !coupling_.has_value(); }

  /// G in the mode basis.
  CMatrix matrix() const;
  /// G v without forming G.
  CVector apply(const CVector& v) const;
  /// Sum of resolved occupations.
  double trace() const { return occupations_.sum(); }
  /// trace() + unresolved_mass(): the expected particle number.
  double total() const { return trace() + unresolved_mass_; }

  /// c_f^H G c_g for basis coefficient vectors.
  Complex form(const CVector& cf, const CVector& cg) const;

  /// Same matrix with a different (equally sized) basis.
  OnePDM with_basis(BasisPtr basis) const;

 private:
  BasisPtr basis_;
  RVector occupations_;
  std::optional<CMatrix> coupling_;
  double unresolved_mass_;
};

/// Gamma(f, g); antilinear in f, linear in g.
Complex gamma(const OnePDM& pdm, const WaveFunction& f, const WaveFunction& g);

/// Matrix Gamma(f_i, f_j) over a list of probes.
CMatrix gamma_matrix(const OnePDM& pdm, const std::vector<WaveFunction>& probes);

/// n |s><s| in a basis that contains s as a synthesizable vector: returns the
/// rank-one density matrix whose only occupied direction is `coefficients`.
OnePDM rank_one(BasisPtr basis, const CVector& coefficients, double occupation);

}  // namespace condlab
