#include "condlab/region.hpp"

#include <cmath>

#include "condlab/error.hpp"

namespace condlab {

std::string_view to_string(Shape shape) {
  switch (shape) {
    case Shape::interval:
      return "interval";
    case Shape::box:
      return "box";
    case Shape::ball:
      return "ball";
  }
  return "unknown";
}

Shape shape_from_string(std::string_view name) {
  if (name == "interval") return Shape::interval;
  if (name == "box") return Shape::box;
  if (name == "ball") return Shape::ball;
  throw ParameterError("unknown region shape '" + std::string(name) + "'");
}

Region::Region(Shape shape, Vec center, double size)
    : shape_(shape), center_(std::move(center)), size_(size) {
  const auto d = center_.size();
  if (d < 1 || d > 3) throw ParameterError("region dimension must be 1, 2 or 3");
  if (!(size_ > 0.0) || !std::isfinite(size_))
    throw ParameterError("region size must be positive and finite");
  if (!center_.allFinite()) throw ParameterError("region center must be finite");
  if (shape_ == Shape::interval && d != 1)
    throw ParameterError("interval regions are one-dimensional");
}

Region Region::interval(double center, double length) {
  Vec c(1);
  c(0) = center;
  return Region(Shape::interval, c, length);
}

Region Region::box(const Vec& center, double side) { return Region(Shape::box, center, side); }

Region Region::ball(const Vec& center, double diameter) {
  return Region(Shape::ball, center, diameter);
}

Region Region::make(Shape shape, const Vec& center, double size) {
  return Region(shape, center, size);
}

double Region::diameter() const {
  if (shape_ == Shape::box) return size_ * std::sqrt(static_cast<double>(dimension()));
  return size_;
}

double Region::volume() const {
  const int d = dimension();
  if (shape_ != Shape::ball) return std::pow(size_, d);
  const double r = 0.5 * size_;
  switch (d) {
    case 1:
      return 2.0 * r;
    case 2:
      return kPi * r * r;
    default:
      return 4.0 / 3.0 * kPi * r * r * r;
  }
}

Vec Region::lower() const { return center_.array() - 0.5 * size_; }
Vec Region::upper() const { return center_.array() + 0.5 * size_; }

bool Region::contains(const Vec& point) const {
  if (point.size() != center_.size()) return false;
  const double half = 0.5 * size_;
  if (shape_ == Shape::ball) return (point - center_).squaredNorm() < half * half;
  return ((point - center_).array().abs() < half).all();
}

namespace {

// Largest distance from `c` to a point of the closed region.
double farthest_distance(const Region& r, const Vec& c) {
  const double half = 0.5 * r.size();
  if (r.shape() == Shape::ball) return (r.center() - c).norm() + half;
  Vec far = (r.center() - c).array().abs() + half;
  return far.norm();
}

// Largest |x_a - c_a| over the closed region, per axis.
Vec farthest_per_axis(const Region& r, const Vec& c) {
  return (r.center() - c).array().abs() + 0.5 * r.size();
}

bool inside(const Region& outer, const Region& inner, bool strict) {
  if (outer.dimension() != inner.dimension()) return false;
  const double half = 0.5 * outer.size();
  auto less = [strict](double a, double b) { return strict ? a < b : a <= b; };
  if (outer.shape() == Shape::ball) return less(farthest_distance(inner, outer.center()), half);
  const Vec reach = farthest_per_axis(inner, outer.center());
  for (Index a = 0; a < reach.size(); ++a)
    if (!less(reach(a), half)) return false;
  return true;
}

}  // namespace

bool Region::compactly_contains(const Region& inner) const { return inside(*this, inner, true); }

bool Region::encloses(const Region& inner) const { return inside(*this, inner, false); }

Region Region::translated(const Vec& shift) const {
  if (shift.size() != center_.size()) throw StructuralError("translation dimension mismatch");
  return Region(shape_, center_ + shift, size_);
}

}  // namespace condlab
