#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "cli.hpp"
#include "s3flow/charts.hpp"

namespace s3flow::cli {

namespace {

const char* test_name(Test t) {
  switch (t) {
    case Test::at_most: return "<=";
    case Test::at_least: return ">=";
    case Test::absolute: return "abs";
    case Test::relative: return "rel";
  }
  return "?";
}

// NaN never passes: every comparison below is false for it.
Check make(std::string name, double value, Test test, double reference, double tolerance) {
  bool pass = false;
  switch (test) {
    case Test::at_most: pass = value <= reference + tolerance; break;
    case Test::at_least: pass = value >= reference - tolerance; break;
    case Test::absolute: pass = std::abs(value - reference) <= tolerance; break;
    case Test::relative: pass = std::abs(value - reference) <= tolerance * std::abs(reference); break;
  }
  return Check{std::move(name), value, test, reference, tolerance, pass};
}

std::vector<double> parse_reals(std::string text, const char* what) {
  std::erase_if(text, [](char c) { return c == '(' || c == ')' || c == ' '; });
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    double v = 0.0;
    const char* first = text.data() + pos;
    const char* last = text.data() + end;
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (first == last || ec != std::errc() || ptr != last || !std::isfinite(v)) {
      throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
    }
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (!(fd_step > 0.0) || !(rk_step > 0.0)) throw UsageError("--fd-step and --rk-step must be positive");
  if (samples == 0) throw UsageError("--samples must be at least 1");
  if (grid.n_s < 2 || grid.n_phi1 < 4 || grid.n_phi2 < 4) {
    throw UsageError("--grid needs n_s >= 2 and n_phi >= 4");
  }
}

Json RunConfig::to_json() const {
  Json j;
  j["grid"] = {grid.n_s, grid.n_phi1, grid.n_phi2};
  j["fd_step"] = fd_step;
  j["rk_step"] = rk_step;
  j["samples"] = samples;
  j["seed"] = seed;
  j["format"] = format == Format::json ? "json" : "csv";
  return j;
}

Json Check::to_json() const {
  Json j;
  j["name"] = name;
  j["value"] = value;
  j["test"] = test_name(test);
  j["reference"] = reference;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  return j;
}

Check at_most(std::string name, double value, double tolerance, double reference) {
  return make(std::move(name), value, Test::at_most, reference, tolerance);
}
Check at_least(std::string name, double value, double reference, double tolerance) {
  return make(std::move(name), value, Test::at_least, reference, tolerance);
}
Check near_abs(std::string name, double value, double reference, double tolerance) {
  return make(std::move(name), value, Test::absolute, reference, tolerance);
}
Check near_rel(std::string name, double value, double reference, double tolerance) {
  return make(std::move(name), value, Test::relative, reference, tolerance);
}

Report::Report(std::string command, std::string target, const RunConfig& config)
    : command_(std::move(command)), target_(std::move(target)), config_(config.to_json()) {}

Json Report::add(Check c) {
  checks_.push_back(std::move(c));
  return checks_.back().to_json();
}

bool Report::passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

Json Report::to_json() const {
  Json j;
  j["command"] = command_;
  if (!target_.empty()) j["target"] = target_;
  j["config"] = config_;
  Json checks = Json::array();
  for (const auto& c : checks_) checks.push_back(c.to_json());
  j["checks"] = std::move(checks);
  if (!data_.empty()) j["data"] = data_;
  j["pass"] = passed();
  if (wall_time_ >= 0.0) j["wall_time_s"] = wall_time_;
  return j;
}

Target parse_target(const std::string& id) {
  if (id == "hopf") return Target{id, 1, hopf_map(), hopf_solution()};
  if (id == "paper" || id == "phi") return Target{id, 2, phi_map(), paper_solution()};
  constexpr std::string_view prefix = "phi_k:";
  if (id.starts_with(prefix)) {
    int k = 0;
    const char* first = id.data() + prefix.size();
    const char* last = id.data() + id.size();
    const auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec == std::errc() && ptr == last && k >= 1 && k <= kMaxSweepDegree) {
      const SurfaceMap map = phi_k_map(k);
      if (k == 1) return Target{id, 1, map, hopf_solution()};
      if (k == 2) return Target{id, 2, map, paper_solution()};
      // No closed form: b = 1 - phi3 is the candidate Bernoulli function and the
      // pressure is whatever makes b = p + |V|^2/2.
      const VectorField v = field_from_map(map);
      const ScalarField b = [map](const SpherePoint& p) { return 1.0 - map(p)[2]; };
      const ScalarField pressure = [v, b](const SpherePoint& p) {
        const Vec4 w = v.ambient(p);
        return b(p) - 0.5 * dot(w, w);
      };
      return Target{id, k, map, EulerSolutionBundle{v, b, pressure}};
    }
  }
  throw UsageError("unknown field id '" + id + "' (expected hopf, paper, phi or phi_k:<k>, 1 <= k <= 8)");
}

SpherePoint parse_point(const std::string& text) {
  constexpr std::string_view prefix = "hopf:";
  try {
    if (text.starts_with(prefix)) {
      const auto v = parse_reals(text.substr(prefix.size()), "Hopf coordinates");
      if (v.size() != 3) throw UsageError("hopf: point needs s,phi1,phi2");
      // Angles wrap; s must lie in [0, pi/2].
      const double tau = 2.0 * std::numbers::pi;
      return hopf_to_cartesian({v[0], v[1] - tau * std::floor(v[1] / tau),
                                v[2] - tau * std::floor(v[2] / tau)});
    }
    const auto v = parse_reals(text, "point");
    if (v.size() != 4) throw UsageError("point needs four coordinates x1,y1,x2,y2");
    return SpherePoint(v[0], v[1], v[2], v[3]);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid point '") + text + "': " + e.what());
  }
}

Vec3 parse_value(const std::string& text) {
  const auto v = parse_reals(text, "value");
  if (v.size() != 3) throw UsageError("value needs three coordinates");
  const Vec3 w{{v[0], v[1], v[2]}};
  const double n = norm(w);
  if (!(n > 0.0)) throw UsageError("value must be non-zero");
  return (1.0 / n) * w;
}

GridResolution parse_grid(const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), 'x', ',');
  std::vector<int> n;
  std::size_t pos = 0;
  while (pos <= t.size()) {
    const std::size_t end = std::min(t.find(',', pos), t.size());
    int v = 0;
    const auto [ptr, ec] = std::from_chars(t.data() + pos, t.data() + end, v);
    if (ec != std::errc() || ptr != t.data() + end || end == pos) {
      throw UsageError("cannot parse grid '" + text + "' (expected e.g. 32x64x64)");
    }
    n.push_back(v);
    pos = end + 1;
  }
  if (n.size() != 3) throw UsageError("grid needs three resolutions, e.g. 32x64x64");
  return GridResolution{n[0], n[1], n[2]};
}

}  // namespace s3flow::cli
