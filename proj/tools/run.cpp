#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli.hpp"

namespace s3flow::cli {

namespace {

// Writes to --out when given, otherwise to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void require_json(const RunConfig& config, const char* command) {
  if (config.format != Format::json) {
    throw UsageError(std::string(command) + " writes JSON reports only; CSV is for orbit, sweep-k and export-field");
  }
}

int emit(Report& report, const RunConfig& config, std::ostream& out,
         std::chrono::steady_clock::time_point started) {
  if (config.timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - started;
    report.set_wall_time(dt.count());
  }
  Sink sink(config.out, out);
  sink.stream() << report.to_json().dump(2) << '\n';
  return report.passed() ? exit_code::ok : exit_code::check_failed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical companion for a steady Euler flow on the 3-sphere", "s3flow"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string grid_text = "32x64x64";
  std::string format_text = "json";
  app.add_option("--grid", grid_text, "Quadrature grid n_s x n_phi1 x n_phi2")->capture_default_str();
  app.add_option("--fd-step", config.fd_step, "Finite-difference step")->capture_default_str();
  app.add_option("--rk-step", config.rk_step, "RK4 step for orbits and fibres")->capture_default_str();
  app.add_option("--samples", config.samples, "Number of sample points")->capture_default_str();
  app.add_option("--seed", config.seed, "Seed for sample sets and fibre search")->capture_default_str();
  app.add_option("--out", config.out, "Output file (default stdout)");
  app.add_option("--format", format_text, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_flag("--timing", config.timing, "Include wall time in reports");

  std::string target_id = "paper";
  auto* verify = app.add_subcommand("verify", "Pointwise Euler, commutator and first-integral checks");
  verify->add_option("field", target_id, "hopf, paper or phi_k:<k>")->required();

  auto* measure = app.add_subcommand("measure", "Energies, helicity, Hopf invariant and bounds");
  measure->add_option("field", target_id, "hopf, paper or phi_k:<k>")->required();

  int k_max = 5;
  auto* sweep = app.add_subcommand("sweep-k", "Table over the degree-k family");
  sweep->add_option("k_max", k_max, "Largest degree (at most 8)")->capture_default_str();

  std::string start_text;
  double t_max = 100.0;
  std::string curve_path;
  auto* orbit = app.add_subcommand("orbit", "Integrate a stream line");
  orbit->add_option("field", target_id, "hopf, paper or phi_k:<k>")->required();
  orbit->add_option("--start", start_text, "x1,y1,x2,y2 or hopf:s,phi1,phi2")->required();
  orbit->add_option("--t-max", t_max, "Integration time limit")->capture_default_str();
  orbit->add_option("--curve", curve_path, "Also write the curve as CSV to this file");

  std::string q1_text, q2_text;
  auto* link = app.add_subcommand("link", "Linking number of two fibres");
  link->add_option("map", target_id, "hopf, phi or phi_k:<k>")->required();
  link->add_option("q1", q1_text, "First value on S^2, e.g. (0,0,1)")->required();
  link->add_option("q2", q2_text, "Second value on S^2")->required();

  app.add_subcommand("critical-set", "Zeros of V and extreme level sets of b");

  auto* exportf = app.add_subcommand("export-field", "Sample V and b on a Hopf-coordinate grid (CSV)");
  exportf->add_option("field", target_id, "hopf, paper or phi_k:<k>")->capture_default_str();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    config.grid = parse_grid(grid_text);
    config.format = format_text == "csv" ? Format::csv : Format::json;
    config.validate();

    if (verify->parsed()) {
      require_json(config, "verify");
      Report r = cmd_verify(parse_target(target_id), config);
      return emit(r, config, out, started);
    }
    if (measure->parsed()) {
      require_json(config, "measure");
      Report r = cmd_measure(parse_target(target_id), config);
      return emit(r, config, out, started);
    }
    if (sweep->parsed()) {
      Report r = cmd_sweep_k(k_max, config);
      if (config.format == Format::csv) {
        Sink sink(config.out, out);
        write_sweep_csv(r, sink.stream());
        return r.passed() ? exit_code::ok : exit_code::check_failed;
      }
      return emit(r, config, out, started);
    }
    if (orbit->parsed()) {
      const Target target = parse_target(target_id);
      OrbitResult res = cmd_orbit(target, parse_point(start_text), t_max, config);
      if (!curve_path.empty()) {
        Sink sink(curve_path, out);
        write_curve_csv(res.curve, sink.stream());
      }
      if (config.format == Format::csv) {
        Sink sink(config.out, out);
        write_curve_csv(res.curve, sink.stream());
        return res.report.passed() ? exit_code::ok : exit_code::check_failed;
      }
      return emit(res.report, config, out, started);
    }
    if (link->parsed()) {
      require_json(config, "link");
      Report r = cmd_link(parse_target(target_id), parse_value(q1_text), parse_value(q2_text), config);
      return emit(r, config, out, started);
    }
    if (exportf->parsed()) {
      const Target target = parse_target(target_id);
      Sink sink(config.out, out);
      export_field_csv(target, config, sink.stream());
      return exit_code::ok;
    }
    require_json(config, "critical-set");
    Report r = cmd_critical_set(config);
    return emit(r, config, out, started);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const DynamicsError& e) {
    err << "dynamics error: " << e.what() << '\n';
    return exit_code::dynamics;
  } catch (const TopologyError& e) {
    err << "topology error: " << e.what() << '\n';
    return exit_code::topology;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::check_failed;
  }
}

}  // namespace s3flow::cli
