#include "condlab/grid.hpp"

#include <cmath>

#include "condlab/error.hpp"

namespace condlab {

Grid::Grid(Vec origin, Vec spacing, IVec counts)
    : origin_(std::move(origin)), spacing_(std::move(spacing)), counts_(std::move(counts)) {
  const auto d = origin_.size();
  if (d < 1 || d > 3 || spacing_.size() != d || counts_.size() != d)
    throw StructuralError("grid axes must agree and number 1..3");
  if (!((spacing_.array() > 0.0).all())) throw ParameterError("grid spacing must be positive");
  if (!((counts_.array() > 0).all())) throw ParameterError("grid counts must be positive");
  size_ = counts_.prod();
}

Grid Grid::covering(const Region& region, Index points_across, Index padding) {
  if (points_across < 1 || padding < 0) throw ParameterError("invalid grid resolution");
  const int d = region.dimension();
  const Vec lo = region.lower();
  const Vec hi = region.upper();
  Vec spacing = (hi - lo) / static_cast<double>(points_across);
  Vec origin = lo + 0.5 * spacing - static_cast<double>(padding) * spacing;
  IVec counts = IVec::Constant(d, points_across + 2 * padding);
  return Grid(origin, spacing, counts);
}

IVec Grid::unflatten(Index flat) const {
  IVec idx(dimension());
  for (int a = dimension() - 1; a >= 0; --a) {
    idx(a) = flat % counts_(a);
    flat /= counts_(a);
  }
  return idx;
}

Index Grid::flatten(const IVec& index) const {
  Index flat = 0;
  for (int a = 0; a < dimension(); ++a) flat = flat * counts_(a) + index(a);
  return flat;
}

bool Grid::in_range(const IVec& index) const {
  return (index.array() >= 0).all() && (index.array() < counts_.array()).all();
}

Vec Grid::point(const IVec& index) const {
  return origin_.array() + index.cast<double>().array() * spacing_.array();
}

IVec Grid::lattice_shift(const Vec& shift) const {
  if (shift.size() != origin_.size()) throw StructuralError("shift dimension mismatch");
  IVec out(dimension());
  for (int a = 0; a < dimension(); ++a) {
    const double steps = shift(a) / spacing_(a);
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, std::abs(steps)))
      throw PreconditionError("translation is not a multiple of the grid spacing");
    out(a) = static_cast<Index>(rounded);
  }
  return out;
}

Vec Grid::displacement(const IVec& shift) const {
  return shift.cast<double>().array() * spacing_.array();
}

std::vector<Index> Grid::mask(const Region& region) const {
  if (region.dimension() != dimension()) throw StructuralError("region/grid dimension mismatch");
  std::vector<Index> out;
  for (Index i = 0; i < size_; ++i)
    if (region.contains(point(i))) out.push_back(i);
  return out;
}

}  // namespace condlab
