#include <doctest.h>

#include <cmath>
#include <sstream>

#include "condlab/error.hpp"
#include "condlab/odlro.hpp"
#include "support.hpp"

using namespace condlab;
using testing::vec;

namespace {

// Rank-one state n_C |e_p><e_p| on a boosted Fourier basis of the unit interval.
OnePDM rank_one_plane_wave(const BasisPtr& base, const Vec& p, double n_c) {
  const auto boosted = std::make_shared<const ModeBasis>(base->boosted(p));
  return rank_one(boosted, CVector::Unit(boosted->size(), 0), n_c);
}

std::vector<double> offsets(double half_width, double step) {
  std::vector<double> out;
  const auto n = static_cast<Index>(std::llround(2 * half_width / step));
  for (Index i = 0; i <= n; ++i) out.push_back(-half_width + static_cast<double>(i) * step);
  return out;
}

}  // namespace

TEST_CASE("rank-one scans reproduce the prediction") {
  const auto basis = testing::interval_basis(1024, 16);
  const Vec p = vec({2 * kPi * 3});
  const OnePDM pdm = rank_one_plane_wave(basis, p, 100.0);
  const Region o0 = Region::interval(0.0, 0.1);
  const WaveFunction f = smooth_bump(basis->grid(), o0).normalized();
  const auto shifts = admissible_shifts(basis->grid(), basis->support(), o0, 0, 16);
  REQUIRE(shifts.size() > 40);
  const CorrelationScan scan = correlation_scan(pdm, f, shifts, {p, 100.0, 0.0});

  CHECK(scan.max_deviation <= 1e-8 * 100.0);
  CHECK((scan.measured - scan.measured.adjoint()).cwiseAbs().maxCoeff() <= 1e-10);
  const auto n = static_cast<Index>(shifts.size());
  for (Index i = 0; i + 1 < n; ++i)
    for (Index j = 0; j + 1 < n; ++j) CHECK(scan.predicted(i + 1, j + 1) == scan.predicted(i, j));
  CHECK(scan.error_scale == 0.0);
}

TEST_CASE("appendix scan has a plateau within the error scale") {
  const auto basis = testing::interval_basis(4096, 256);
  const OnePDM pdm = appendix_family(basis, 0.5)(1e4);
  const Region o0 = Region::interval(0.0, 0.1);
  const WaveFunction f = smooth_bump(basis->grid(), o0);
  const auto shifts = admissible_shifts(basis->grid(), basis->support(), o0, 0, 32);
  const double nr = appendix::occupation(1e4, 0.5, 1);
  const CorrelationScan scan = correlation_scan(pdm, f, shifts, {vec({0.0}), 100.0, nr});
  CHECK(scan.max_deviation <= 3 * scan.error_scale);
  const double plateau = scan.predicted(0, 0).real();
  CHECK(scan.measured.cwiseAbs().minCoeff() >= plateau - 3 * scan.error_scale);
  for (Index i = 1; i < scan.measured.rows(); ++i)
    CHECK(std::abs(scan.measured(i, i) - scan.measured(0, 0)) <= scan.error_scale);
}

TEST_CASE("no condensate, no plateau") {
  const auto basis = testing::interval_basis(4096, 256);
  RVector nu = appendix_family(basis, 0.5)(1e4).occupations();
  nu(0) = 0.0;
  const OnePDM pdm(basis, nu);
  const Region o0 = Region::interval(0.0, 0.1);
  const WaveFunction f = smooth_bump(basis->grid(), o0);
  const auto shifts = admissible_shifts(basis->grid(), basis->support(), o0, 0, 64);
  const CorrelationScan scan = correlation_scan(pdm, f, shifts, {vec({0.0}), 0.0, 1.0});
  double far = 0.0;
  for (Index i = 0; i < scan.measured.rows(); ++i)
    for (Index j = 0; j < scan.measured.cols(); ++j)
      if (std::abs(shifts[i](0) - shifts[j](0)) > 0.3) far = std::max(far, std::abs(scan.measured(i, j)));
  // Regular occupations are at most 1, so far correlations stay below
  // 1 * |<1_O, f>|^2 / |O|, a hundredth of the n_C = 100 plateau.
  const double overlap = 2 * kPi * std::norm(fourier_amplitude(f, vec({0.0}))) / scan.region_volume;
  CHECK(far <= overlap * (1 + 1e-9));
}

TEST_CASE("scan preconditions") {
  const auto basis = testing::interval_basis(256, 8);
  const OnePDM pdm = appendix_family(basis, 0.5)(1e4);
  const Region o0 = Region::interval(0.0, 0.1);
  const WaveFunction f = smooth_bump(basis->grid(), o0);
  CHECK_THROWS_AS(correlation_scan(pdm, f, {vec({0.5})}, {vec({0.0}), 1.0, 1.0}), PreconditionError);
  CHECK_THROWS_AS(correlation_scan(pdm, Complex(2.0) * f, {vec({0.0})}, {vec({0.0}), 1.0, 1.0}), PreconditionError);
}

TEST_CASE("d=1 momentum spectrum of the boosted family") {
  const auto basis = testing::interval_basis(4096, 256);
  const Vec p = vec({2 * kPi * 4});
  const OnePDM pdm = boosted_family(appendix_family(basis, 0.5), p)(1e4);
  const double step = 0.05;
  const MomentumSpectrum s = momentum_distribution(pdm, KGrid::line(p, 0, offsets(30, step)));
  CHECK(std::abs(s.peak(0) - p(0)) <= step);
  CHECK(std::abs(s.peak_value - 100.0) <= 10.0);

  // Fast path against direct quadrature.
  const std::vector<Vec> ks{s.k[0], s.k[100], s.k[600], s.k[1100]};
  const RVector direct = momentum_values_direct(pdm, ks);
  CHECK(std::abs(direct(0) - s.values(0)) <= 1e-9 * s.peak_value);
  CHECK(std::abs(direct(2) - s.values(600)) <= 1e-9 * s.peak_value);
  CHECK(std::abs(direct(3) - s.values(1100)) <= 1e-9 * s.peak_value);
}

TEST_CASE("spectrum symmetry and Parseval") {
  const auto basis = testing::interval_basis(2048, 32);
  const Vec p = vec({2 * kPi * 2});
  const OnePDM pdm = rank_one_plane_wave(basis, p, 10.0);
  const MomentumSpectrum s = momentum_distribution(pdm, KGrid::line(p, 0, offsets(20, 0.25)));
  const auto n = static_cast<Index>(s.k.size());
  for (Index i = 0; i < n; ++i) CHECK(std::abs(s.values(i) - s.values(n - 1 - i)) <= 1e-8);

  // Modes e_{2 pi m} on the unit interval form an orthonormal family.
  const OnePDM hot = heated_family(basis)(320.0);
  std::vector<Vec> ks;
  for (int m = -8; m <= 8; ++m) ks.push_back(vec({2 * kPi * m}));
  const RVector values = momentum_values_direct(hot, ks);
  std::vector<WaveFunction> family;
  for (const Vec& k : ks) family.push_back(plane_wave_mode(basis->grid(), basis->support(), k));
  const CMatrix g = gamma_matrix(hot, family);
  CHECK(values.sum() == doctest::Approx(g.trace().real()).epsilon(1e-8));
}

TEST_CASE("closed form peak") {
  CHECK(closed_form_peak(3, 0.0, 7.0) == 7.0);
  CHECK(closed_form_peak(3, 1e-4, 1.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(closed_form_peak(3, 0.009999, 1.0) == doctest::Approx(closed_form_peak(3, 0.010001, 1.0)).epsilon(1e-8));
  const double u = 1.5;
  const double direct = 9 * std::pow(std::sin(u) - u * std::cos(u), 2) / std::pow(u, 6);
  CHECK(closed_form_peak(3, u, 1.0) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(closed_form_peak(3, u, 1.0) == doctest::Approx(0.6278120908917892).epsilon(1e-12));
  CHECK_THROWS_AS(closed_form_peak(1, 1.0, 1.0), ParameterError);
}

TEST_CASE("closed form against d=3 ball quadrature") {
  const Region ball = Region::ball(Vec::Zero(3), 1.0);
  const Vec p = vec({0, 0, 0});
  const Vec k = vec({3.0, 0, 0});  // u = 1.5
  const double exact = closed_form_peak(3, 1.0, k, p, 1.0);
  double previous = 1.0;
  for (Index n : {24, 48, 96}) {
    const Grid grid = Grid::covering(ball, n);
    const double q = std::norm(inner(plane_wave_mode(grid, ball, k), plane_wave_mode(grid, ball, p)));
    const double err = std::abs(q / exact - 1.0);
    MESSAGE("n = " << n << " relative error " << err);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 5e-3);
}

TEST_CASE("lobe envelope of the closed form") {
  // Oracle: the lobe maxima of 9 u^-6 (sin u - u cos u)^2 decay like u^-4.
  std::vector<Vec> ks;
  RVector values(4001);
  for (Index i = 0; i <= 4000; ++i) {
    ks.push_back(vec({i * 0.02, 0, 0}));
    values(i) = closed_form_peak(3, 1.0, ks.back(), Vec::Zero(3), 1.0);
  }
  MomentumSpectrum s;
  s.k = ks;
  s.values = values;
  s.length = 1.0;
  const PeakTailReport r = peak_tail_report(s, 1.0, 1.0, Vec::Zero(3), 10);
  CHECK(r.tail_points == 10);
  CHECK(r.tail_exponent == doctest::Approx(-3.96).epsilon(0.02));
  CHECK(r.peak_value == 1.0);
  CHECK(r.bound_violations > 0);
  CHECK(r.u_star > 3.0);
  CHECK(r.u_star < 3.2);
}

TEST_CASE("d=3 ball spectrum on a coarse grid") {
  const auto basis = testing::ball_basis(32, 10);
  const Vec p = vec({2 * kPi, 0, 0});
  const OnePDM pdm = boosted_family(appendix_family(basis, 0.5), p)(1e4);
  const MomentumSpectrum s = momentum_distribution(pdm, KGrid::line(p, 0, offsets(20, 0.1)));
  CHECK(std::abs(s.peak(0) - p(0)) <= 0.1);
  CHECK(std::abs(s.peak_value - 100.0) <= 10.0);
  const std::vector<Vec> ks{s.k[50], s.k[200]};
  const RVector direct = momentum_values_direct(pdm, ks);
  CHECK(std::abs(direct(0) - s.values(50)) <= 1e-9 * s.peak_value);
  CHECK(std::abs(direct(1) - s.values(200)) <= 1e-9 * s.peak_value);
}

TEST_CASE("no condensate gives no sharp peak") {
  const auto basis = testing::interval_basis(1024, 64);
  const OnePDM hot = heated_family(basis)(6400.0);
  const MomentumSpectrum s = momentum_distribution(hot, KGrid::line(vec({0.0}), 0, offsets(60, 0.1)));
  CHECK(peak_tail_report(s, s.peak_value, 1.0, s.peak).sharpness < 10.0);
}

TEST_CASE("homogeneity") {
  const auto basis = testing::interval_basis(2048, 128);
  const Region o0 = Region::interval(0.0, 0.1);
  const std::vector<WaveFunction> probes{smooth_bump(basis->grid(), o0).normalized(),
                                         smooth_bump(basis->grid(), Region::interval(0.05, 0.1)).normalized()};
  const auto shifts = admissible_shifts(basis->grid(), basis->support(), Region::interval(0.025, 0.15), 0, 128);
  const std::vector<double> sigmas{1e2, 1e3, 1e4, 1e5, 1e6};

  const HomogeneityResult app = homogeneity_test(appendix_family(basis, 0.5), sigmas, probes, shifts);
  CHECK(app.passed);
  CHECK(app.decay_slope < -0.3);

  const StateFamily pure(FamilyKind::custom, {}, basis, [basis](double sigma) {
    return rank_one(basis, CVector::Unit(basis->size(), 0), sigma);
  });
  const HomogeneityResult r1 = homogeneity_test(pure, sigmas, probes, shifts);
  CHECK(r1.passed);
  for (double d : r1.deviations) CHECK(d <= 1e-10);

  // Condensing into a linear (non plane wave) mode.
  const auto poly = std::make_shared<const ModeBasis>(polynomial_basis(basis->grid(), basis->support(), 6));
  const StateFamily tilted(FamilyKind::custom, {}, poly, [poly](double sigma) {
    RVector nu = RVector::Constant(poly->size(), 0.5);
    nu(1) = sigma;
    return OnePDM(poly, nu);
  });
  CHECK_FALSE(homogeneity_test(tilted, sigmas, probes, shifts).passed);
}

TEST_CASE("csv writers carry metadata headers") {
  const auto basis = testing::interval_basis(256, 8);
  const Vec p = vec({0.0});
  const OnePDM pdm = appendix_family(basis, 0.5)(1e4);
  const Region o0 = Region::interval(0.0, 0.1);
  const WaveFunction f = smooth_bump(basis->grid(), o0);
  const auto shifts = admissible_shifts(basis->grid(), basis->support(), o0, 0, 64);
  const CorrelationScan scan = correlation_scan(pdm, f, shifts, {p, 100.0, 1.0});
  std::ostringstream out;
  write_scan_csv(out, scan, {1e4, 100.0, 1.0, p, &basis->grid()});
  const std::string text = out.str();
  CHECK(text.rfind("# sigma=10000\n# n_C=100\n", 0) == 0);
  CHECK(text.find("x_0,y_0,re_C,im_C,re_P,im_P,abs_diff\n") != std::string::npos);

  std::ostringstream spec;
  const MomentumSpectrum s = momentum_distribution(pdm, KGrid::line(p, 0, offsets(1, 0.5)));
  write_spectrum_csv(spec, s, basis->support(), {1e4, 100.0, 1.0, p, &basis->grid()});
  CHECK(spec.str().find("k_0,N,bound_4nC\n") != std::string::npos);
}
