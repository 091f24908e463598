#pragma once

#include <string>
#include <string_view>

#include "condlab/types.hpp"

namespace condlab {

enum class Shape { interval, box, ball };

std::string_view to_string(Shape shape);
Shape shape_from_string(std::string_view name);

/// Bounded open set O in R^d (d = 1, 2, 3).
///
/// `size` is the side length for intervals and boxes and the diameter for
/// balls. Boxes are cubes.
class Region {
 public:
  static Region interval(double center, double length);
  static Region box(const Vec& center, double side);
  static Region ball(const Vec& center, double diameter);
  static Region make(Shape shape, const Vec& center, double size);

  Shape shape() const { return shape_; }
  int dimension() const { return static_cast<int>(center_.size()); }
  const Vec& center() const { return center_; }
  double size() const { return size_; }

  double diameter() const;
  /// Analytic (continuum) volume |O|.
  double volume() const;

  Vec lower() const;  ///< bounding box corner
  Vec upper() const;

  bool contains(const Vec& point) const;
  /// True when the closure of `inner` lies inside this open region (O0 ⋐ O).
  bool compactly_contains(const Region& inner) const;
  /// True when `inner` is a subset of this region (equality allowed).
  bool encloses(const Region& inner) const;

  Region translated(const Vec& shift) const;

  friend bool operator==(const Region&, const Region&) = default;

 private:
  Region(Shape shape, Vec center, double size);

  Shape shape_;
  Vec center_;
  double size_;
};

}  // namespace condlab
