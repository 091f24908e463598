#include "condlab/app/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "condlab/error.hpp"
#include "condlab/format.hpp"
#include "condlab/odlro.hpp"

namespace condlab::app {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw std::ios_base::failure("write failed for '" + path.string() + "'");
}

void note(const Context& ctx, const std::string& line) {
  if (ctx.verbose) *ctx.log << line << '\n';
}

// Leading-mode model at one sigma: fitted momentum, n_C = Gamma(e_p, e_p),
// n_R estimated by the second eigenvalue.
struct Model {
  Vec momentum;
  bool fitted = false;
  double n_c = 0.0;
  double n_r = 0.0;
};

Model leading_model(const StateFamily& family, const OnePDM& pdm, const RunConfig& config, const Context& ctx) {
  const SingularFunction singular = extract_singular_function(pdm);
  Model m;
  m.momentum = Vec::Zero(family.region().dimension());
  try {
    m.momentum = fit_momentum(singular.function, family.region(), config.report.modulus_tolerance).momentum;
    m.fitted = true;
  } catch (const NotHomogeneousError& e) {
    *ctx.log << "warning: " << e.what() << "; using p = 0\n";
  }
  m.n_c = condensate_number(pdm, plane_wave_mode(family.grid(), family.region(), m.momentum));
  m.n_r = std::max(0.0, singular.second_eigenvalue);
  return m;
}

std::string vec_text(const Vec& v) {
  std::string s = "(";
  for (Index a = 0; a < v.size(); ++a) s += (a ? ", " : "") + format_number(v(a));
  return s + ")";
}

Region probe_region(const RunConfig& config) {
  return Region::make(config.region.shape(), config.region.center(), config.probe.size);
}

WaveFunction make_probe(const Grid& grid, const RunConfig& config) {
  const Region support = probe_region(config);
  if (config.probe.kind == ProbeKind::bump) return smooth_bump(grid, support);
  const WaveFunction indicator = WaveFunction::sample(grid, support, [](const Vec&) { return Complex(1.0, 0.0); });
  if (indicator.squared_norm() == 0.0) throw ConfigError("key 'probe.L0' is below the grid resolution");
  return indicator.normalized();
}

}  // namespace

OutputLock::OutputLock(const fs::path& dir) : path_(dir / ".condlab.lock") {
  std::FILE* f = std::fopen(path_.c_str(), "wx");
  if (!f)
    throw std::ios_base::failure("output directory is locked by another run (remove '" + path_.string() +
                                 "' if stale)");
  std::fclose(f);
}

OutputLock::~OutputLock() {
  std::error_code ec;
  fs::remove(path_, ec);
}

void cmd_family(const RunConfig& config, const Context& ctx) {
  const StateFamily family = build_family(config.family, config.region, config.resolution);
  std::ostringstream table;
  table << "sigma,k,nu\n";
  json rows = json::array();
  for (double sigma : config.schedule) {
    const OnePDM pdm = family(sigma);
    const RVector& nu = pdm.occupations();
    for (Index k = 0; k < nu.size(); ++k)
      table << format_number(sigma) << ',' << k << ',' << format_number(nu(k)) << '\n';
    rows.push_back(json{{"sigma", sigma},
                        {"total", pdm.trace()},
                        {"truncation_defect", pdm.unresolved_mass()},
                        {"total_with_defect", pdm.total()}});
    note(ctx, "sigma " + format_number(sigma) + ": total " + format_number(pdm.trace()) + ", truncation defect " +
                  format_number(pdm.unresolved_mass()));
  }
  FamilySpec spec = config.family;
  spec.region = config.region;
  const json doc{{"family", to_json(spec)}, {"resolution", config.resolution}, {"modes", family.basis().size()},
                 {"sigmas", rows}};
  write_file(ctx.out_dir / "occupations.csv", table.str());
  write_file(ctx.out_dir / "family.json", doc.dump(2) + "\n");
}

void cmd_criterion(const RunConfig& config, const Context& ctx) {
  if (config.schedule.size() < 4) throw ConfigError("key 'schedule' needs at least 4 entries for the criterion");
  const StateFamily family = build_family(config.family, config.region, config.resolution);
  const CondensateReport report = analyze(family, config.schedule, config.report);
  if (!report.momentum_note.empty()) *ctx.log << "warning: " << report.momentum_note << '\n';
  json doc = to_json(report);
  doc["config"] = json{{"family", to_json(config.family)},
                       {"region", to_json(config.region)},
                       {"resolution", config.resolution}};
  write_file(ctx.out_dir / "report.json", doc.dump(2) + "\n");
  std::ostringstream csv;
  write_csv(csv, report);
  write_file(ctx.out_dir / "report.csv", csv.str());
  note(ctx, "p = " + vec_text(report.momentum) + ", singular slope " +
                format_number(report.criterion.singular_slope));
  note(ctx, "verdict: " + std::string(to_string(report.criterion.verdict)));
}

void cmd_scan(const RunConfig& config, const Context& ctx) {
  const StateFamily family = build_family(config.family, config.region, config.resolution);
  const double sigma = config.scan.sigma.value_or(config.schedule.back());
  const OnePDM pdm = family(sigma);
  const Model m = leading_model(family, pdm, config, ctx);

  const Grid& grid = family.grid();
  const WaveFunction probe = make_probe(grid, config);
  const double region_volume = grid_volume(grid, config.region);
  const double probe_volume = grid_volume(grid, probe.support());
  if (!(m.n_c / region_volume > m.n_r / probe_volume))
    *ctx.log << "warning: n_C/|O| = " << format_number(m.n_c / region_volume)
             << " does not exceed n_R/|O0| = " << format_number(m.n_r / probe_volume)
             << "; long-range order is not expected\n";

  const Index stride =
      config.scan.stride.value_or(std::max<Index>(1, grid.counts()(config.scan.axis) / 64));
  const auto shifts = admissible_shifts(grid, config.region, probe.support(), config.scan.axis, stride);
  if (shifts.empty()) throw ConfigError("key 'probe.L0' leaves no admissible translations");
  const CorrelationScan scan = correlation_scan(pdm, probe, shifts, ScanModel{m.momentum, m.n_c, m.n_r});

  std::ostringstream csv;
  write_scan_csv(csv, scan, CsvMetadata{sigma, m.n_c, m.n_r, m.momentum, &grid});
  write_file(ctx.out_dir / "scan.csv", csv.str());
  note(ctx, std::to_string(shifts.size()) + " shifts, max |C - P| = " + format_number(scan.max_deviation) +
                ", error scale " + format_number(scan.error_scale));
}

void cmd_spectrum(const RunConfig& config, const Context& ctx) {
  const StateFamily family = build_family(config.family, config.region, config.resolution);
  const double sigma = config.spectrum.sigma.value_or(config.schedule.back());
  const OnePDM pdm = family(sigma);
  const Model m = leading_model(family, pdm, config, ctx);
  const auto& sc = config.spectrum;

  KGrid ks;
  if (!sc.points.empty()) {
    ks = KGrid::list(sc.points);
  } else {
    const Index count = static_cast<Index>(std::llround(2.0 * sc.half_width / sc.step)) + 1;
    std::vector<double> offsets(static_cast<std::size_t>(count));
    for (Index i = 0; i < count; ++i) offsets[i] = -sc.half_width + static_cast<double>(i) * sc.step;
    ks = KGrid::line(sc.center.value_or(m.momentum), sc.axis, offsets);
  }
  const MomentumSpectrum spectrum = momentum_distribution(pdm, ks, sc.lobes);

  std::ostringstream csv;
  write_spectrum_csv(csv, spectrum, config.region, CsvMetadata{sigma, m.n_c, m.n_r, m.momentum, &family.grid()});
  write_file(ctx.out_dir / "spectrum.csv", csv.str());
  note(ctx, "peak N = " + format_number(spectrum.peak_value) + " at k = " + vec_text(spectrum.peak) +
                ", tail exponent " + format_number(spectrum.tail_exponent));
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"condlab: proper condensates in bosonic quasifree state families"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  bool verbose = false;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_dir, "output directory (overrides config 'output')");
  app.add_flag("--verbose", verbose, "progress and summaries on stderr");
  for (const char* name : {"family", "criterion", "scan", "spectrum"})
    app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const RunConfig config = load_config(config_path);
    const fs::path dir = !out_dir.empty() ? fs::path(out_dir) : config.output.value_or(fs::path("condlab_out"));
    fs::create_directories(dir);
    OutputLock lock(dir);
    const Context ctx{dir, verbose, &err};
    if (command == "family") cmd_family(config, ctx);
    else if (command == "criterion") cmd_criterion(config, ctx);
    else if (command == "scan") cmd_scan(config, ctx);
    else cmd_spectrum(config, ctx);
    out << command << ": wrote " << dir.string() << '\n';
    return 0;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const NotHomogeneousError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    // Parameter, precondition and range violations come from the config.
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace condlab::app
