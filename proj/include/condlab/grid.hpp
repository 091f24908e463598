#pragma once

#include <vector>

#include "condlab/region.hpp"
#include "condlab/types.hpp"

namespace condlab {

/// Uniform tensor grid. Point (i_0, ..., i_{d-1}) sits at origin + i * spacing;
/// flat indices are row-major (last axis fastest).
class Grid {
 public:
  Grid(Vec origin, Vec spacing, IVec counts);

  /// Cell-centred grid over the bounding box of `region` with `points_across`
  /// cells per axis, widened by `padding` cells on every side.
  static Grid covering(const Region& region, Index points_across, Index padding = 0);

  int dimension() const { return static_cast<int>(origin_.size()); }
  const Vec& origin() const { return origin_; }
  const Vec& spacing() const { return spacing_; }
  const IVec& counts() const { return counts_; }
  Index size() const { return size_; }
  double cell_volume() const { return spacing_.prod(); }

  IVec unflatten(Index flat) const;
  Index flatten(const IVec& index) const;
  bool in_range(const IVec& index) const;
  Vec point(const IVec& index) const;
  Vec point(Index flat) const { return point(unflatten(flat)); }

  /// Converts a displacement to an integer lattice shift; throws
  /// PreconditionError when `shift` is not a multiple of the spacing.
  IVec lattice_shift(const Vec& shift) const;
  Vec displacement(const IVec& shift) const;

  /// Flat indices of the grid points lying in `region`, in increasing order.
  std::vector<Index> mask(const Region& region) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.origin_ == b.origin_ && a.spacing_ == b.spacing_ && a.counts_ == b.counts_;
  }

 private:
  Vec origin_;
  Vec spacing_;
  IVec counts_;
  Index size_;
};

}  // namespace condlab
