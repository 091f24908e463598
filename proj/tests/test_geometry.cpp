#include <doctest.h>

#include <cmath>
#include <sstream>

#include "condlab/error.hpp"
#include "condlab/format.hpp"
#include "condlab/wave_function.hpp"
#include "support.hpp"

using namespace condlab;
using testing::vec;

TEST_CASE("region volumes and containment") {
  const Region box = Region::box(vec({0, 0}), 2.0);
  CHECK(box.volume() == doctest::Approx(4.0));
  CHECK(Region::ball(Vec::Zero(3), 2.0).volume() == doctest::Approx(4.0 * kPi / 3.0));
  CHECK(box.contains(vec({0.99, -0.99})));
  CHECK_FALSE(box.contains(vec({1.0, 0.0})));
  CHECK(box.compactly_contains(Region::box(vec({0.5, 0}), 0.9)));
  CHECK_FALSE(box.compactly_contains(Region::box(vec({0.5, 0}), 1.0)));
  CHECK(box.translated(vec({1, 1})).center() == vec({1, 1}));
  CHECK_THROWS_AS(Region::interval(0.0, -1.0), ParameterError);
  CHECK(shape_from_string("ball") == Shape::ball);
  CHECK_THROWS_AS(shape_from_string("torus"), ParameterError);
}

TEST_CASE("grid covering is cell centred and indexes row-major") {
  const Grid g = Grid::covering(Region::box(vec({0, 0}), 1.0), 4);
  CHECK(g.counts() == IVec::Constant(2, 4));
  CHECK(g.point(IVec::Zero(2))(0) == doctest::Approx(-0.375));
  const IVec idx = (IVec(2) << 1, 3).finished();
  CHECK(g.flatten(idx) == 7);
  CHECK(g.unflatten(7) == idx);
  CHECK(g.lattice_shift(vec({0.5, -0.25})) == (IVec(2) << 2, -1).finished());
  CHECK_THROWS_AS(g.lattice_shift(vec({0.1, 0.0})), PreconditionError);
}

TEST_CASE("inner products of basis modes") {
  const auto basis = testing::interval_basis(1024, 16);
  const WaveFunction e0 = basis->mode(0);
  CHECK(inner(e0, e0).real() == doctest::Approx(1.0).epsilon(1e-12));
  for (Index k = 0; k < 16; ++k)
    for (Index l = 0; l < 16; ++l)
      if (k != l) CHECK(std::abs(inner(basis->mode(k), basis->mode(l))) <= 1e-10);

  // Riemann sum of e^{2 pi i x} over [-1/2, 1/2] at 1024 points.
  const Region o = testing::unit_interval();
  const Grid grid = Grid::covering(o, 1024);
  const Complex v = inner(plane_wave_mode(grid, o, vec({2 * kPi})), plane_wave_mode(grid, o, vec({0})));
  CHECK(std::abs(v) <= 1e-8);
}

TEST_CASE("translation is an exact index shift") {
  const Region o = testing::unit_interval();
  const Grid grid = Grid::covering(o, 1024);
  const Region small = Region::interval(-0.2, 0.2);
  const WaveFunction f = testing::random_function(grid, small, 7);

  const WaveFunction same = translate(f, vec({0.0}));
  CHECK((same.samples().array() == f.samples().array()).all());

  const Vec x = vec({0.25});
  const WaveFunction g = translate(f, x);
  CHECK(g.squared_norm() == f.squared_norm());
  CHECK(g.support().center()(0) == doctest::Approx(0.05));

  const Vec p = vec({5.0});
  const WaveFunction ep = plane_wave_mode(grid, o, p);
  const Complex lhs = inner(ep, g);
  const Complex rhs = std::polar(1.0, -p(0) * x(0)) * inner(ep, f);
  CHECK(std::abs(lhs - rhs) <= 1e-8);

  CHECK_THROWS_AS(translate(f, vec({0.75})), RangeError);
}

TEST_CASE("plane wave modes") {
  const Region o = testing::unit_interval();
  const Grid grid = Grid::covering(o, 8192);
  const WaveFunction e0 = plane_wave_mode(grid, o, vec({0.0}));
  const double c = 1.0 / std::sqrt(grid_volume(grid, o));
  CHECK(e0[0].real() == doctest::Approx(c));
  CHECK(e0[4000].real() == doctest::Approx(c));
  for (double k : {0.0, 1.0, kPi, 40.0}) CHECK(plane_wave_mode(grid, o, vec({k})).norm() == doctest::Approx(1.0));

  const double expected = std::pow(2 * std::sin(kPi / 2) / kPi, 2);
  const double got = std::norm(inner(plane_wave_mode(grid, o, vec({kPi})), e0));
  CHECK(std::abs(got - expected) <= 1e-8);
}

TEST_CASE("fourier amplitudes") {
  const Region o = testing::unit_interval();
  const Grid grid = Grid::covering(o, 8192);
  const Vec p = vec({3.0});
  const WaveFunction ep = plane_wave_mode(grid, o, p);
  CHECK(std::abs(2 * kPi * std::norm(fourier_amplitude(ep, p)) - grid_volume(grid, o)) <= 1e-8);

  const WaveFunction bump = smooth_bump(grid, Region::interval(0.0, 0.5));
  CHECK(std::abs(fourier_amplitude(bump, vec({7.0})).imag()) <= 1e-10);

  const WaveFunction one = WaveFunction::sample(grid, o, [](const Vec&) { return Complex(1.0); });
  const double expected = std::pow(2 * std::sin(kPi / 2) / kPi, 2) / (2 * kPi);
  CHECK(std::abs(std::norm(fourier_amplitude(one, vec({kPi}))) - expected) <= 1e-8);
}

TEST_CASE("zero mean projection") {
  const Region o = testing::unit_interval();
  const Grid grid = Grid::covering(o, 1024);
  const WaveFunction e0 = plane_wave_mode(grid, o, vec({0.0}));
  CHECK(zero_mean_project(e0, o).norm() <= 1e-12);

  const WaveFunction f = testing::random_function(grid, o, 3);
  const WaveFunction z = zero_mean_project(f, o);
  CHECK((zero_mean_project(z, o).samples() - z.samples()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(f.squared_norm() == doctest::Approx(z.squared_norm() + std::norm(inner(e0, f))).epsilon(1e-10));

  const WaveFunction outside = WaveFunction::sample(grid, Region::interval(0.0, 1.0), [](const Vec&) { return 1.0; });
  CHECK_THROWS_AS(zero_mean_project(outside, Region::interval(0.0, 0.5)), PreconditionError);
}

TEST_CASE("mode bases are orthonormal") {
  const auto box = std::make_shared<const ModeBasis>(
      fourier_basis(Grid::covering(Region::box(vec({0, 0}), 1.0), 32), Region::box(vec({0, 0}), 1.0), 25));
  CHECK((box->gram() - CMatrix::Identity(25, 25)).cwiseAbs().maxCoeff() <= 1e-10);
  const auto ball = testing::ball_basis(24);
  CHECK((ball->gram() - CMatrix::Identity(20, 20)).cwiseAbs().maxCoeff() <= 1e-8);

  const WaveFunction f = ball->synthesize(CVector::LinSpaced(20, 1.0, 2.0));
  CHECK((ball->coefficients(f) - CVector::LinSpaced(20, 1.0, 2.0)).cwiseAbs().maxCoeff() <= 1e-9);

  const ModeBasis boosted = box->boosted(vec({2 * kPi, 0}));
  CHECK((boosted.gram() - CMatrix::Identity(25, 25)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("wave functions reject samples off their support") {
  const Grid grid = Grid::covering(testing::unit_interval(), 16);
  CHECK_THROWS_AS(WaveFunction(grid, Region::interval(0.0, 0.5), CVector::Ones(16)), PreconditionError);
}

TEST_CASE("number formatting is shortest round trip") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(100.0) == "100");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}
