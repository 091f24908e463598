#include "condlab/eigensolver.hpp"

#include <algorithm>
#include <cmath>

#include "condlab/error.hpp"

namespace condlab {

void fix_phase(CVector& v) {
  Index best = 0;
  double magnitude = -1.0;
  for (Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > magnitude * (1.0 + 1e-12)) {
      magnitude = a;
      best = i;
    }
  }
  if (magnitude > 0.0) v *= std::conj(v(best)) / magnitude;
}

namespace {

struct PowerResult {
  double value;
  CVector vector;
  Index iterations;
};

// `scale` bounds the operator norm from below; residuals are judged
// against it so that a numerically zero eigenvalue still converges.
PowerResult power_iteration(const LinearOperator& op, CVector v, const PowerOptions& options, double scale) {
  double norm = v.norm();
  if (!(norm > 0.0)) return {0.0, v, 0};
  v /= norm;
  for (Index it = 1; it <= options.max_iterations; ++it) {
    const CVector w = op(v);
    const double lambda = v.dot(w).real();
    const double residual = (w - lambda * v).norm();
    if (residual <= options.tolerance * std::max({std::abs(lambda), scale, 1e-300}) || w.norm() == 0.0)
      return {lambda, v, it};
    norm = w.norm();
    v = w / norm;
  }
  throw NumericalError("power iteration did not converge");
}

}  // namespace

LeadingEigenpairs leading_eigenpairs(const LinearOperator& op, Index dimension,
                                     const PowerOptions& options) {
  if (dimension < 1) throw PreconditionError("operator dimension must be positive");
  CVector start(dimension);
  for (Index i = 0; i < dimension; ++i)
    start(i) = (i == 0 ? 1.0 : 0.0) + 1e-6 * static_cast<double>(i + 1) / static_cast<double>(dimension);

  LeadingEigenpairs out;
  const PowerResult top = power_iteration(op, start, options, 0.0);
  out.first = top.value;
  out.vector = top.vector;
  out.iterations = top.iterations;

  if (dimension > 1) {
    const CVector u = top.vector;
    const LinearOperator deflated = [&op, &u, lambda = top.value](const CVector& v) -> CVector {
      return op(v) - lambda * u * u.dot(v);
    };
    CVector second_start(dimension);
    for (Index i = 0; i < dimension; ++i)
      second_start(i) = (i == 1 ? 1.0 : 0.0) + 1e-6 * static_cast<double>(i + 1) / static_cast<double>(dimension);
    second_start -= u * u.dot(second_start);
    const PowerResult next = power_iteration(deflated, second_start, options, std::abs(top.value));
    out.second = next.value;
    out.iterations += next.iterations;
    out.degenerate = out.first - out.second < options.degeneracy_gap * std::abs(out.first);
  }

  if (out.degenerate) {
    // Filter unit vectors through (A / lambda_1)^m: components outside the
    // top eigenspace die off, leaving its projection.
    for (Index j = 0; j < dimension; ++j) {
      CVector v = CVector::Unit(dimension, j);
      for (int sweep = 0; sweep < 200; ++sweep) v = op(v) / out.first;
      if (v.norm() > 1e-6) {
        out.vector = v.normalized();
        break;
      }
    }
  }
  fix_phase(out.vector);
  return out;
}

}  // namespace condlab
