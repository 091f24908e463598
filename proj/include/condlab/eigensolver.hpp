#pragma once

#include <functional>

#include "condlab/types.hpp"

namespace condlab {

struct PowerOptions {
  double tolerance = 1e-12;    ///< residual ||Av - lambda v|| <= tolerance * |lambda|
  Index max_iterations = 2'000'000;
  double degeneracy_gap = 1e-8;  ///< relative gap below which lambda_1 is flagged degenerate
};

struct LeadingEigenpairs {
  double first = 0.0;
  CVector vector;        ///< normalized, phase fixed
  double second = 0.0;   ///< 0 when the operator has a single dimension
  bool degenerate = false;
  Index iterations = 0;
};

using LinearOperator = std::function<CVector(const CVector&)>;

/// Largest two eigenvalues of a Hermitian positive semidefinite operator on
/// C^n by power iteration with deflation. The start vector is e_0 plus a
/// small index-weighted perturbation. A degenerate top eigenvalue is flagged
/// and resolved by projecting the lowest-index unit vector with a nonzero
/// component onto the top eigenspace.
LeadingEigenpairs leading_eigenpairs(const LinearOperator& op, Index dimension,
                                     const PowerOptions& options = {});

inline LeadingEigenpairs leading_eigenpairs(const CMatrix& matrix, const PowerOptions& options = {}) {
  return leading_eigenpairs([&matrix](const CVector& v) -> CVector { return matrix * v; },
                            matrix.rows(), options);
}

/// Rotates v so that its largest-magnitude entry (lowest index on ties) is
/// real and positive.
void fix_phase(CVector& v);

}  // namespace condlab
