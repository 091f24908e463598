#pragma once

#include <memory>
#include <vector>

#include "condlab/wave_function.hpp"

namespace condlab {

/// Orthonormal modes b_0, ..., b_{M-1} sharing one support region. Mode 0 is
/// the candidate condensate mode. Modes are stored on the support mask only
/// (one column per mode).
class ModeBasis {
 public:
  /// `modes` has one row per entry of `points` (flat grid indices inside the
  /// support). Throws StructuralError unless the Gram matrix is the identity
  /// within `gram_tolerance` entrywise.
  ModeBasis(Grid grid, Region support, std::vector<Index> points, CMatrix modes,
            double gram_tolerance = 1e-8);

  const Grid& grid() const { return grid_; }
  const Region& support() const { return support_; }
  const std::vector<Index>& points() const { return points_; }
  const CMatrix& modes() const { return modes_; }
  Index size() const { return modes_.cols(); }

  WaveFunction mode(Index k) const;
  /// c_k = <b_k, f>.
  CVector coefficients(const WaveFunction& f) const;
  /// Coefficients of several functions at once (one column each).
  CMatrix coefficients(const std::vector<WaveFunction>& fs) const;
  /// sum_k c_k b_k.
  WaveFunction synthesize(const CVector& c) const;
  CMatrix gram() const;

  /// Modes multiplied pointwise by e^{ipx}.
  ModeBasis boosted(const Vec& p) const;

 private:
  Grid grid_;
  Region support_;
  std::vector<Index> points_;
  CMatrix modes_;
};

using BasisPtr = std::shared_ptr<const ModeBasis>;

/// Discrete Fourier modes e^{2 pi i m.(x - lo)/L} on an interval or box,
/// ordered by |m|^2 then lexicographically; mode 0 is constant.
ModeBasis fourier_basis(const Grid& grid, const Region& region, Index count);

/// Gram-Schmidt of monomials in (x - c)/R by total degree; mode 0 is constant.
ModeBasis polynomial_basis(const Grid& grid, const Region& region, Index count);

/// Fourier modes for intervals/boxes, polynomial modes for balls.
ModeBasis default_basis(const Grid& grid, const Region& region, Index count);

/// Two-pass modified Gram-Schmidt on the columns of `vectors` (in place)
/// with respect to the weight `cell_volume`; throws on rank deficiency.
void orthonormalize(CMatrix& vectors, double cell_volume);

}  // namespace condlab
