#pragma once

#include <memory>
#include <random>

#include "condlab/mode_basis.hpp"
#include "condlab/state_family.hpp"

namespace testing {

using namespace condlab;

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Region unit_interval() { return Region::interval(0.0, 1.0); }

inline BasisPtr interval_basis(Index points = 1024, Index modes = 64, const Region& region = unit_interval()) {
  const Grid grid = Grid::covering(region, points);
  return std::make_shared<const ModeBasis>(default_basis(grid, region, modes));
}

inline BasisPtr ball_basis(Index points, Index modes = 20) {
  const Region ball = Region::ball(Vec::Zero(3), 1.0);
  const Grid grid = Grid::covering(ball, points);
  return std::make_shared<const ModeBasis>(default_basis(grid, ball, modes));
}

inline WaveFunction random_function(const Grid& grid, const Region& support, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  return WaveFunction::sample(grid, support, [&](const Vec&) { return Complex(normal(rng), normal(rng)); });
}

}  // namespace testing
