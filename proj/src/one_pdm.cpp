#include "condlab/one_pdm.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "condlab/error.hpp"

namespace condlab {

OnePDM::OnePDM(BasisPtr basis, RVector occupations, std::optional<CMatrix> coupling,
               double unresolved_mass)
    : basis_(std::move(basis)),
      occupations_(std::move(occupations)),
      coupling_(std::move(coupling)),
      unresolved_mass_(unresolved_mass) {
  if (!basis_) throw StructuralError("density matrix needs a mode basis");
  const Index m = basis_->size();
  if (occupations_.size() != m) throw StructuralError("occupation count must match mode count");
  if (!occupations_.allFinite() || (occupations_.array() < 0.0).any())
    throw ParameterError("occupations must be finite and nonnegative");
  if (!(unresolved_mass_ >= 0.0) || !std::isfinite(unresolved_mass_))
    throw ParameterError("unresolved mass must be finite and nonnegative");
  if (coupling_) {
    const CMatrix& c = *coupling_;
    if (c.rows() != m || c.cols() != m) throw StructuralError("coupling block must be M x M");
    if ((c - c.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
      throw ParameterError("density matrix must be Hermitian");
    if (c.diagonal().cwiseAbs().maxCoeff() != 0.0)
      throw ParameterError("coupling block must have zero diagonal");
    const CMatrix full = matrix();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(full, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-8 * std::max(trace(), 1e-300))
      throw ParameterError("density matrix must be positive semidefinite");
  }
}

CMatrix OnePDM::matrix() const {
  CMatrix g = occupations_.cast<Complex>().asDiagonal();
  if (coupling_) g += *coupling_;
  return g;
}

CVector OnePDM::apply(const CVector& v) const {
  CVector out = occupations_.cast<Complex>().cwiseProduct(v);
  if (coupling_) out.noalias() += *coupling_ * v;
  return out;
}

Complex OnePDM::form(const CVector& cf, const CVector& cg) const {
  return cf.dot(apply(cg));
}

OnePDM OnePDM::with_basis(BasisPtr basis) const {
  if (!basis || basis->size() != basis_->size()) throw StructuralError("basis size mismatch");
  return OnePDM(std::move(basis), occupations_, coupling_, unresolved_mass_);
}

Complex gamma(const OnePDM& pdm, const WaveFunction& f, const WaveFunction& g) {
  return pdm.form(pdm.basis().coefficients(f), pdm.basis().coefficients(g));
}

CMatrix gamma_matrix(const OnePDM& pdm, const std::vector<WaveFunction>& probes) {
  if (probes.empty()) return CMatrix(0, 0);
  const CMatrix c = pdm.basis().coefficients(probes);
  CMatrix applied(c.rows(), c.cols());
  for (Index j = 0; j < c.cols(); ++j) applied.col(j) = pdm.apply(c.col(j));
  return c.adjoint() * applied;
}

OnePDM rank_one(BasisPtr basis, const CVector& coefficients, double occupation) {
  if (coefficients.size() != basis->size()) throw StructuralError("coefficient count mismatch");
  const double n = coefficients.norm();
  if (!(n > 0.0)) throw PreconditionError("rank-one direction must be nonzero");
  const CVector u = coefficients / n;
  CMatrix full = occupation * (u * u.adjoint());
  RVector diag = full.diagonal().real();
  full.diagonal().setZero();
  return OnePDM(std::move(basis), diag.cwiseMax(0.0), std::move(full));
}

}  // namespace condlab
