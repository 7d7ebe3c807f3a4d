#pragma once

// Library behind the s3flow executable. `run` is the whole program minus the
// process exit, so tests drive it in-process with string streams.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "s3flow/dynamics.hpp"
#include "s3flow/quadrature.hpp"

namespace s3flow::cli {

using Json = nlohmann::ordered_json;

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int usage = 2;
inline constexpr int dynamics = 3;
inline constexpr int topology = 4;
}  // namespace exit_code

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv };

struct RunConfig {
  GridResolution grid;
  double fd_step = 1e-4;
  double rk_step = 1e-3;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::string out;  // empty means stdout
  Format format = Format::json;
  bool timing = false;

  /// Throws UsageError for non-positive steps, zero samples or a grid that
  /// build_grid_s3 would reject.
  void validate() const;
  /// Echo for reports. The output path is left out so that a report written to
  /// a file and one written to stdout are byte-identical.
  Json to_json() const;
};

/// value <= reference + tolerance, value >= reference - tolerance,
/// |value - reference| <= tolerance, or |value - reference| <= tolerance |reference|.
enum class Test { at_most, at_least, absolute, relative };

struct Check {
  std::string name;
  double value = 0.0;
  Test test = Test::at_most;
  double reference = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  Json to_json() const;
};

Check at_most(std::string name, double value, double tolerance, double reference = 0.0);
Check at_least(std::string name, double value, double reference, double tolerance = 0.0);
Check near_abs(std::string name, double value, double reference, double tolerance);
Check near_rel(std::string name, double value, double reference, double tolerance);

class Report {
 public:
  Report(std::string command, std::string target, const RunConfig& config);

  /// Records the check and returns its JSON form (for embedding in tables).
  Json add(Check c);
  Json& data() { return data_; }
  const Json& data() const { return data_; }
  const std::vector<Check>& checks() const { return checks_; }
  bool passed() const;
  void set_wall_time(double seconds) { wall_time_ = seconds; }

  Json to_json() const;

 private:
  std::string command_;
  std::string target_;
  Json config_;
  std::vector<Check> checks_;
  Json data_ = Json::object();
  double wall_time_ = -1.0;
};

/// A velocity field, the map it comes from, and its Bernoulli function and
/// pressure. `degree` is the expected Hopf invariant.
struct Target {
  std::string id;
  int degree;
  SurfaceMap map;
  EulerSolutionBundle solution;
};

/// hopf, paper (alias phi) or phi_k:<k> with 1 <= k <= 8. Throws UsageError.
Target parse_target(const std::string& id);
/// Four comma-separated reals (normalized), or hopf:s,phi1,phi2. Parentheses
/// and spaces are ignored. Throws UsageError.
SpherePoint parse_point(const std::string& text);
/// Three comma-separated reals, normalized onto the unit sphere.
Vec3 parse_value(const std::string& text);
/// NSxN1xN2 (or comma-separated).
GridResolution parse_grid(const std::string& text);

Report cmd_verify(const Target& target, const RunConfig& config);
Report cmd_measure(const Target& target, const RunConfig& config);

inline constexpr int kMaxSweepDegree = 8;
/// Commutator residual at or above this marks k >= 3 as a non-solution; the
/// measured values for k = 3..8 are all above 10.
inline constexpr double kNonSolutionCommutator = 0.5;
Report cmd_sweep_k(int k_max, const RunConfig& config);

struct OrbitResult {
  Report report;
  Curve curve;
};
OrbitResult cmd_orbit(const Target& target, const SpherePoint& start, double t_max,
                      const RunConfig& config);

Report cmd_link(const Target& target, const Vec3& q1, const Vec3& q2, const RunConfig& config);
Report cmd_critical_set(const RunConfig& config);

void write_curve_csv(const Curve& curve, std::ostream& out);
void write_sweep_csv(const Report& sweep, std::ostream& out);
/// Samples the field and b on a regular Hopf-coordinate grid (cell centres in s)
/// and writes s, phi1, phi2, V_s, V_phi1, V_phi2, b.
void export_field_csv(const Target& target, const RunConfig& config, std::ostream& out);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace s3flow::cli
