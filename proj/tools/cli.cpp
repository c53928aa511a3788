#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "morphcomp/binary_model.hpp"
#include "morphcomp/config_file.hpp"
#include "morphcomp/error.hpp"
#include "morphcomp/estimation.hpp"
#include "morphcomp/measures.hpp"
#include "morphcomp/report.hpp"
#include "morphcomp/rotator.hpp"

namespace morph::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::uint64_t seed = 0;
  std::string out_dir;
  std::string format;
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_format) {
  c.format = default_format;
  cmd->add_option("--seed", c.seed, "Master seed; all randomness derives from it");
  cmd->add_option("--out", c.out_dir, "Directory for output files and manifest");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path.string());
  return f;
}

void write_manifest(const fs::path& dir, const RunManifest& m) {
  auto f = open_output(dir / "manifest.json");
  f << m.to_json().dump(2) << '\n';
}

std::optional<Binner> binner_from(const std::vector<double>& v, const char* flag) {
  if (v.empty()) return std::nullopt;
  if (v.size() != 3 || v[2] < 1 || v[2] != static_cast<double>(static_cast<std::size_t>(v[2]))) {
    throw UsageError(std::string(flag) + " expects LOW HIGH BINS");
  }
  return Binner(v[0], v[1], static_cast<std::size_t>(v[2]));
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void print_table(std::ostream& out, const MeasureReport& r) {
  for (const auto& [m, v] : r.values()) {
    out << measure_name(m) << std::string(8 - measure_name(m).size(), ' ') << fixed(v) << '\n';
  }
}

void write_report(std::ostream& out, const MeasureReport& r, const std::string& format) {
  if (format == "csv") {
    out << "measure,value\n";
    for (const auto& [m, v] : r.values()) out << measure_name(m) << ',' << v << '\n';
  } else {
    out << to_json(r).dump(2) << '\n';
  }
}

// measure -------------------------------------------------------------------

struct MeasureArgs {
  Common common;
  std::string input;
  std::vector<double> sensor_bins;
  std::vector<double> action_bins;
  std::optional<std::size_t> sensor_symbols;
  std::optional<std::size_t> action_symbols;
  std::vector<std::string> measures{"ASOC_A", "ASOC_W", "C_A", "C_W"};
};

int cmd_measure(const MeasureArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  std::vector<Measure> wanted;
  for (const auto& name : a.measures) {
    const auto m = parse_measure(name);
    if (!m) throw UsageError("unknown measure '" + name + "'");
    if (*m == Measure::MC_A || *m == Measure::MC_W || *m == Measure::C_A_d) {
      throw UsageError(name + " needs world or controller states; not computable from a sensor/action log");
    }
    wanted.push_back(*m);
  }
  std::ifstream in(a.input);
  if (!in) throw UsageError("cannot open " + a.input);
  const ColumnSpec s{binner_from(a.sensor_bins, "--sensor-bins"), a.sensor_symbols};
  const ColumnSpec act{binner_from(a.action_bins, "--action-bins"), a.action_symbols};
  const auto series = read_series_csv(in, s, act);
  const auto model = estimate(series);

  MeasureReport report;
  std::optional<Joint3> joint;
  for (Measure m : wanted) {
    switch (m) {
      case Measure::ASOC_A:
      case Measure::ASOC_W:
        if (!joint) joint = joint_from_model(model);
        report.set(m, m == Measure::ASOC_A ? asoc_a(*joint) : asoc_w(*joint));
        break;
      case Measure::C_A: report.set(m, c_a(model)); break;
      case Measure::C_W: report.set(m, c_w(model)); break;
      default: break;
    }
  }
  report.sample_count = series.steps();
  report.seed = a.common.seed;
  report.parameters = {{"sensor_symbols", static_cast<double>(series.sensor_alphabet())},
                       {"action_symbols", static_cast<double>(series.action_alphabet())}};

  print_table(out, report);
  if (a.common.out_dir.empty()) {
    write_report(out, report, a.common.format);
    return kExitOk;
  }
  const fs::path dir(a.common.out_dir);
  fs::create_directories(dir);
  const std::string name = a.common.format == "csv" ? "report.csv" : "report.json";
  {
    auto f = open_output(dir / name);
    write_report(f, report, a.common.format);
  }
  nlohmann::json cfg{{"input", a.input}, {"measures", a.measures}};
  if (auto b = s.binner) cfg["sensor_bins"] = {b->low, b->high, b->bins};
  if (auto b = act.binner) cfg["action_bins"] = {b->low, b->high, b->bins};
  cfg["sensor_symbols"] = series.sensor_alphabet();
  cfg["action_symbols"] = series.action_alphabet();
  write_manifest(dir, {"measure", cfg, MORPHCOMP_VERSION, a.common.seed, {name}, argv});
  return kExitOk;
}

// binary-sweep ---------------------------------------------------------------

struct BinaryArgs {
  Common common;
  std::vector<double> phi;
  std::vector<double> psi;
  std::vector<double> mu;
  std::size_t points = 51;
  double zeta = binary::kLarge;
  double tau = 0.0;
  bool serial = false;
};

int cmd_binary_sweep(const BinaryArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
  auto grid = binary::Grid::standard();
  grid.phi = a.phi.empty() ? binary::linspace(0.0, 5.0, a.points) : a.phi;
  grid.psi = a.psi.empty() ? binary::linspace(0.0, 5.0, a.points) : a.psi;
  if (!a.mu.empty()) grid.mu = a.mu;
  grid.zeta = a.zeta;
  grid.tau = a.tau;
  if (grid.size() == 0) throw UsageError("empty grid");

  const auto rows = a.serial ? binary::sweep_serial(grid) : binary::sweep(grid);
  const auto emit = [&](std::ostream& o) {
    if (a.common.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : rows) arr.push_back(to_json(r.report));
      o << arr.dump(2) << '\n';
    } else {
      binary::write_sweep_csv(o, rows);
    }
  };
  if (a.common.out_dir.empty()) {
    emit(out);
    return kExitOk;
  }
  const fs::path dir(a.common.out_dir);
  fs::create_directories(dir);
  const std::string name = a.common.format == "json" ? "binary_sweep.json" : "binary_sweep.csv";
  {
    auto f = open_output(dir / name);
    emit(f);
  }
  write_manifest(dir, {"binary-sweep", to_json(grid), MORPHCOMP_VERSION, a.common.seed, {name}, argv});
  out << "wrote " << rows.size() << " rows to " << (dir / name).string() << '\n';
  return kExitOk;
}

// rotator ----------------------------------------------------------------------

struct RotatorArgs {
  Common common;
  std::string config_file;
  double eta = 0.0;
  double beta = 0.0;
  std::size_t steps = 5000;
  bool noisy_sensor = false;
  // sweep only
  std::vector<double> eta_values;
  std::vector<double> beta_values;
  std::size_t runs = 10;
  bool serial = false;
};

bool given(const CLI::App& cmd, const std::string& flag) {
  const auto* opt = cmd.get_option_no_throw(flag);
  return opt != nullptr && opt->count() > 0;
}

rotator::Config build_config(const RotatorArgs& a, const CLI::App& cmd, std::ostream& err) {
  rotator::Config cfg;
  if (!a.config_file.empty()) {
    std::ifstream in(a.config_file);
    if (!in) throw UsageError("cannot open " + a.config_file);
    cfg = read_rotator_config(in);
  }
  if (given(cmd, "--seed") || a.config_file.empty()) cfg.seed = a.common.seed;
  if (given(cmd, "--eta")) cfg.eta = a.eta;
  if (given(cmd, "--beta")) cfg.beta = a.beta;
  if (given(cmd, "--steps")) cfg.steps = a.steps;
  if (given(cmd, "--record-noisy-sensor")) cfg.record_noisy_sensor = true;
  cfg.validate();
  for (const auto& w : cfg.soft_limit_warnings()) err << "warning: " << w << '\n';
  return cfg;
}

int cmd_rotator_run(const RotatorArgs& a, const CLI::App& cmd, const std::vector<std::string>& argv,
                    std::ostream& out, std::ostream& err) {
  const auto cfg = build_config(a, cmd, err);
  const auto episode = rotator::run_episode(cfg);
  auto report = rotator::episode_measures(episode);
  report.seed = cfg.seed;
  report.parameters = {{"eta", cfg.eta}, {"beta", cfg.beta}};
  print_table(out, report);
  if (a.common.out_dir.empty()) {
    write_report(out, report, a.common.format);
    return kExitOk;
  }
  const fs::path dir(a.common.out_dir);
  fs::create_directories(dir);
  {
    auto f = open_output(dir / "transients.csv");
    rotator::write_transients_csv(f, episode);
  }
  {
    auto f = open_output(dir / "series.csv");
    rotator::write_series_csv(f, episode);
  }
  {
    auto f = open_output(dir / "config.txt");
    write_rotator_config(f, cfg);
  }
  const std::string report_name = a.common.format == "csv" ? "report.csv" : "report.json";
  {
    auto f = open_output(dir / report_name);
    write_report(f, report, a.common.format);
  }
  write_manifest(dir, {"rotator-run", to_json(cfg), MORPHCOMP_VERSION, cfg.seed,
                       {"transients.csv", "series.csv", "config.txt", report_name}, argv});
  return kExitOk;
}

int cmd_rotator_sweep(const RotatorArgs& a, const CLI::App& cmd,
                      const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  const auto cfg = build_config(a, cmd, err);
  auto grid = rotator::Grid::standard();
  if (!a.eta_values.empty()) grid.eta = a.eta_values;
  if (!a.beta_values.empty()) grid.beta = a.beta_values;
  grid.runs = a.runs;
  for (double e : grid.eta) {
    if (e < 0.0) throw UsageError("eta values must be nonnegative");
    if (e > 0.5) err << "warning: eta " << e << " is outside the studied range [0, 0.5]\n";
  }
  for (double b : grid.beta) {
    if (b < 0.0) throw UsageError("beta values must be nonnegative");
    if (b > 2.0) err << "warning: beta " << b << " is outside the studied range [0, 2]\n";
  }
  const auto cells = a.serial ? rotator::sweep_serial(grid, cfg) : rotator::sweep(grid, cfg);
  const auto emit = [&](std::ostream& o) {
    if (a.common.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& c : cells) {
        arr.push_back({{"eta", c.eta}, {"beta", c.beta}, {"asoc_a", c.asoc_a}, {"c_a", c.c_a},
                       {"asoc_w", c.asoc_w}, {"c_w", c.c_w}, {"runs", c.runs}});
      }
      o << arr.dump(2) << '\n';
    } else {
      rotator::write_sweep_csv(o, cells);
    }
  };
  if (a.common.out_dir.empty()) {
    emit(out);
    return kExitOk;
  }
  const fs::path dir(a.common.out_dir);
  fs::create_directories(dir);
  const std::string name = a.common.format == "json" ? "sweep.json" : "sweep.csv";
  {
    auto f = open_output(dir / name);
    emit(f);
  }
  nlohmann::json snapshot{{"grid", to_json(grid)}, {"base", to_json(cfg)}};
  write_manifest(dir, {"rotator-sweep", snapshot, MORPHCOMP_VERSION, cfg.seed, {name}, argv});
  out << "wrote " << cells.size() << " cells to " << (dir / name).string() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Morphological computation measures on sensori-motor data", "morphcomp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MORPHCOMP_VERSION);

  MeasureArgs measure;
  auto* m = app.add_subcommand("measure", "Estimate measures from a t,s,a CSV log");
  m->add_option("--input", measure.input, "Series CSV")->required();
  m->add_option("--sensor-bins", measure.sensor_bins, "Bin real sensor values: LOW HIGH BINS")
      ->expected(3);
  m->add_option("--action-bins", measure.action_bins, "Bin real action values: LOW HIGH BINS")
      ->expected(3);
  m->add_option("--sensor-symbols", measure.sensor_symbols, "Sensor alphabet size");
  m->add_option("--action-symbols", measure.action_symbols, "Action alphabet size");
  m->add_option("--measures", measure.measures, "Subset of ASOC_A ASOC_W C_A C_W")->delimiter(',');
  add_common(m, measure.common, "json");

  BinaryArgs bin;
  auto* b = app.add_subcommand("binary-sweep", "Exact measures over a binary-model grid");
  b->add_option("--phi", bin.phi, "World self-coupling values");
  b->add_option("--psi", bin.psi, "Action coupling values");
  b->add_option("--mu", bin.mu, "Policy sharpness values (default 0 1 20)");
  b->add_option("--points", bin.points, "Grid points over [0,5] for unset phi/psi");
  b->add_option("--zeta", bin.zeta, "Sensor sharpness");
  b->add_option("--tau", bin.tau, "World prior bias");
  b->add_flag("--serial", bin.serial, "Use the serial reference implementation");
  add_common(b, bin.common, "csv");

  RotatorArgs rot_run;
  RotatorArgs rot_sweep;
  auto* r = app.add_subcommand("rotator", "Rotating pendulum experiment");
  r->require_subcommand(1);
  auto* rr = r->add_subcommand("run", "Simulate one episode");
  rr->add_option("--config", rot_run.config_file, "Configuration file (flags override)");
  rr->add_option("--eta", rot_run.eta, "Sensor noise fraction, studied range [0, 0.5]");
  rr->add_option("--beta", rot_run.beta, "Controller deadband, studied range [0, 2]");
  rr->add_option("--steps", rot_run.steps, "Control updates");
  rr->add_flag("--record-noisy-sensor", rot_run.noisy_sensor,
               "Record the controller's noisy reading instead of the plant velocity");
  add_common(rr, rot_run.common, "json");

  auto* rs = r->add_subcommand("sweep", "Average measures over an (eta, beta) grid");
  rs->add_option("--config", rot_sweep.config_file, "Base configuration file (flags override)");
  rs->add_option("--eta-values", rot_sweep.eta_values, "Noise grid (default 0:0.025:0.5)");
  rs->add_option("--beta-values", rot_sweep.beta_values, "Deadband grid (default 0:0.01:2)");
  rs->add_option("--runs", rot_sweep.runs, "Episodes per cell")->check(CLI::PositiveNumber);
  rs->add_option("--steps", rot_sweep.steps, "Control updates per episode");
  rs->add_flag("--record-noisy-sensor", rot_sweep.noisy_sensor,
               "Record the controller's noisy reading instead of the plant velocity");
  rs->add_flag("--serial", rot_sweep.serial, "Use the serial reference implementation");
  add_common(rs, rot_sweep.common, "csv");

  std::vector<const char*> cargv;
  for (const auto& s : args) cargv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*m) return cmd_measure(measure, args, out);
    if (*b) return cmd_binary_sweep(bin, args, out);
    if (*rr) return cmd_rotator_run(rot_run, *rr, args, out, err);
    if (*rs) return cmd_rotator_sweep(rot_sweep, *rs, args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace morph::cli
