// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "condlab/app/config.hpp"
#include "condlab/error.hpp"
#include "condlab/format.hpp"
#include "condlab/odlro.hpp"
#include "condlab/report.hpp"

using namespace condlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

Vec vec3(double x, double y, double z) { return (Vec(3) << x, y, z).finished(); }

const std::vector<double> kSchedule = app::geometric_schedule(1e2, 10.0, 5);

BasisPtr make_basis(const Region& region, Index resolution, Index modes) {
  const Grid grid = Grid::covering(region, resolution);
  return std::make_shared<const ModeBasis>(default_basis(grid, region, modes));
}

// 1. n_C(n) + geometric tail = n.
Outcome mass_identity() {
  double worst = 0.0;
  for (double n : {10.0, 1e2, 1e4, 1e6})
    for (double eps : {0.3, 0.5, 0.9}) {
      const double sum = appendix::condensate_number(n, eps) + appendix::geometric_tail(n, eps);
      worst = std::max(worst, std::abs(sum / n - 1.0));
    }
  return {worst <= 1e-9, "max relative error " + num(worst)};
}

// 2. Bose-Einstein occupations of the KMS Hamiltonian.
Outcome kms_round_trip() {
  const double n = 1e4, eps = 0.5;
  double worst = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    const RVector e = kms_hamiltonian(n, eps, t, 64);
    worst = std::max(worst, std::abs(bose_einstein(e(0), t) / appendix::condensate_number(n, eps) - 1.0));
    for (Index k = 1; k < 64; ++k)
      worst = std::max(worst, std::abs(bose_einstein(e(k), t) / appendix::occupation(n, eps, k) - 1.0));
  }
  return {worst <= 1e-12, "max relative error " + num(worst)};
}

// 3. Rank-one convergence along the appendix family.
Outcome rank_one_convergence() {
  const Region o = Region::interval(0.0, 1.0);
  const StateFamily fam = appendix_family(make_basis(o, 4096, 256), 0.5);
  const CondensateReport r = analyze(fam, kSchedule);
  bool monotone = true;
  bool bounded = true;
  for (std::size_t i = 0; i < kSchedule.size(); ++i) {
    if (i > 0 && r.rank_one_distances[i] > r.rank_one_distances[i - 1] + 1e-9) monotone = false;
    const double nc = r.condensate_numbers[i];
    const double nr = std::exp(-appendix::decay_rate(kSchedule[i], 0.5));
    if (!(r.rank_one_distances[i] <= (nr + 2 * std::sqrt(nr * nc)) / nc)) bounded = false;
  }
  const bool slope_ok = std::abs(r.rank_one_slope + 0.25) <= 0.05;
  return {monotone && bounded && slope_ok,
          std::string("monotone ") + (monotone ? "yes" : "no") + ", distance bound " + (bounded ? "holds" : "violated") +
              ", slope " + num(r.rank_one_slope) + " (target -0.25 +- 0.05)"};
}

// 4. Criterion verdicts in d = 1 and on a d = 3 ball.
Outcome criterion_verdicts() {
  struct Setup {
    Region region;
    Index resolution;
    Index modes;
    Vec boost;
  };
  const std::vector<Setup> setups{
      {Region::interval(0.0, 1.0), 4096, 256, (Vec(1) << 2 * kPi).finished()},
      {Region::ball(Vec::Zero(3), 1.0), 48, 20, vec3(2 * kPi, 0, 0)},
  };
  bool ok = true;
  std::string detail;
  for (const auto& s : setups) {
    const BasisPtr basis = make_basis(s.region, s.resolution, s.modes);
    const std::string tag = "d=" + std::to_string(s.region.dimension()) + ":";
    for (double eps : {0.2, 0.5, 0.8}) {
      const CondensateReport r = analyze(appendix_family(basis, eps), kSchedule);
      const bool good = r.criterion.verdict == Verdict::condensate;
      ok = ok && good;
      detail += " " + tag + "appendix(" + num(eps) + ")=" + std::string(to_string(r.criterion.verdict));
    }
    const CondensateReport hot = analyze(heated_family(basis), kSchedule);
    ok = ok && hot.criterion.verdict == Verdict::no_condensate;
    detail += " " + tag + "heated=" + std::string(to_string(hot.criterion.verdict));

    const CondensateReport b = analyze(boosted_family(appendix_family(basis, 0.5), s.boost), kSchedule);
    const double step = 2 * kPi / s.region.size();
    const double miss = (b.momentum - s.boost).norm();
    ok = ok && b.criterion.verdict == Verdict::condensate && miss <= step;
    detail += " " + tag + "boosted=" + std::string(to_string(b.criterion.verdict)) + " |p-p0|=" + num(miss);
  }
  return {ok, detail.substr(1)};
}

// 5. ODLRO plateau in d = 1 with |O0| = 0.1 and n_C = 100.
Outcome odlro_plateau() {
  const Region o = Region::interval(0.0, 1.0);
  const BasisPtr basis = make_basis(o, 4096, 256);
  const double n = 1e4;
  const OnePDM pdm = appendix_family(basis, 0.5)(n);
  const Region o0 = Region::interval(0.0, 0.1);
  const WaveFunction f = smooth_bump(basis->grid(), o0);
  const auto shifts = admissible_shifts(basis->grid(), o, o0, 0, 1);
  const double nr = std::exp(-appendix::decay_rate(n, 0.5));
  const double nc = appendix::condensate_number(n, 0.5);
  const CorrelationScan scan = correlation_scan(pdm, f, shifts, {Vec::Zero(1), nc, nr});
  const double band = 3 * scan.error_scale;
  const double plateau = scan.predicted(0, 0).real();
  const double span = shifts.back()(0) - shifts.front()(0);
  const double min_abs = scan.measured.cwiseAbs().minCoeff();
  const double min_diag = scan.measured.diagonal().real().minCoeff();
  const bool ok = scan.max_deviation <= band && min_abs >= plateau - band && std::abs(min_diag - plateau) <= band;
  return {ok, std::to_string(shifts.size()) + " shifts, max |x-y| " + num(span) + ", max |C-P| " +
                  num(scan.max_deviation) + " <= " + num(band) + ", plateau " + num(plateau) + ", min |C| " +
                  num(min_abs) + ", min diagonal " + num(min_diag)};
}

// 6. Momentum peak on the d = 3 ball.
Outcome momentum_peak() {
  const Region ball = Region::ball(Vec::Zero(3), 1.0);
  const BasisPtr basis = make_basis(ball, 96, 20);
  const Vec p = vec3(2 * kPi, 0, 0);
  const double n = 1e4;
  const double nc = appendix::condensate_number(n, 0.5);
  const OnePDM pdm = boosted_family(appendix_family(basis, 0.5), p)(n);

  const double step = 0.05;
  std::vector<double> offsets;
  for (Index i = 0; i <= 2880; ++i) offsets.push_back(-72.0 + static_cast<double>(i) * step);
  const MomentumSpectrum s = momentum_distribution(pdm, KGrid::line(p, 0, offsets));
  const PeakTailReport tail = peak_tail_report(s, nc, 1.0, p);
  const double miss = (s.peak - p).norm();
  const bool peak_ok = miss <= step && std::abs(s.peak_value - nc) <= 10.0;
  const bool tail_ok = std::abs(tail.tail_exponent + 2.0) <= 0.3;

  // Closed form against the condensate part n_C |<e_k, e_p>|^2 at the peak
  // and the first two lobe maxima, on the refined 192^3 grid.
  const Grid fine = Grid::covering(ball, 192);
  const WaveFunction ep = plane_wave_mode(fine, ball, p);
  double worst = 0.0;
  std::string lobes;
  for (double u : {0.0, 5.7635, 9.0950}) {
    const Vec k = p + vec3(2 * u, 0, 0);
    const double q = nc * std::norm(inner(plane_wave_mode(fine, ball, k), ep));
    const double err = std::abs(q / closed_form_peak(3, u, nc) - 1.0);
    worst = std::max(worst, err);
    lobes += " " + num(err);
  }
  const bool closed_ok = worst <= 1e-3;
  return {peak_ok && closed_ok && tail_ok,
          "peak at |k-p| " + num(miss) + ", N(p) " + num(s.peak_value) + ", closed-form rel err at u=0/lobe1/lobe2:" +
              lobes + " (need 1e-3), tail exponent " + num(tail.tail_exponent) + " over " +
              std::to_string(tail.tail_points) + " lobes (target -2 +- 0.3)"};
}

// 7. Proper condensate without macroscopic occupation.
Outcome penrose_onsager() {
  const StateFamily fam = appendix_family(make_basis(Region::interval(0.0, 1.0), 4096, 256), 0.5);
  const CondensateReport r = analyze(fam, kSchedule);
  const double ratio = r.op_ratios.back();
  const bool ok = std::abs(ratio - 1e-3) <= 1e-6 && r.criterion.verdict == Verdict::condensate;
  return {ok, "op_ratio(1e6) " + format_number(ratio) + ", verdict " + std::string(to_string(r.criterion.verdict))};
}

// 8. Byte-identical CLI outputs across reruns.
Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / ("condlab_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path cfg = root / "config.json";
  std::ofstream(cfg) << R"({"region": {"dimension": 1, "shape": "interval", "L": 1},
    "family": {"kind": "boosted", "epsilon": 0.5, "boost": [6.283185307179586]},
    "schedule": [10000], "probe": {"L0": 0.1}, "scan": {"stride": 8},
    "spectrum": {"half_width": 72, "step": 0.05}})";
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  bool ok = true;
  std::string detail;
  for (const char* cmd : {"scan", "spectrum"}) {
    for (const char* run : {"a", "b"}) {
      const std::string line = std::string(CONDLAB_CLI_PATH) + " " + cmd + " --config " + cfg.string() + " --out " +
                               (root / run).string() + " > /dev/null";
      const int status = std::system(line.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) ok = false;
    }
    const std::string file = std::string(cmd) + ".csv";
    const std::string a = slurp(root / "a" / file);
    const bool same = !a.empty() && a == slurp(root / "b" / file);
    ok = ok && same;
    detail += file + (same ? " identical (" + std::to_string(a.size()) + " bytes) " : " DIFFERS ");
  }
  fs::remove_all(root);
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 appendix mass identity", mass_identity},
      {"2 KMS round trip", kms_round_trip},
      {"3 rank-one convergence", rank_one_convergence},
      {"4 criterion verdicts", criterion_verdicts},
      {"5 ODLRO plateau", odlro_plateau},
      {"6 momentum peak", momentum_peak},
      {"7 Penrose-Onsager contrast", penrose_onsager},
      {"8 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << " [" << num(secs) << " s]"
              << std::endl;
    if (!o.pass) ++failures;
  }
  std::cout << (8 - failures) << "/8 criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
