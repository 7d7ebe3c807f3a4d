#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"

using s3flow::cli::Json;
namespace exit_code = s3flow::cli::exit_code;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = s3flow::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const Json& check(const Json& report, const std::string& name) {
  for (const auto& c : report.at("checks")) {
    if (c.at("name") == name) return c;
  }
  FAIL("no check named " << name);
  static const Json none;
  return none;
}

// A small grid keeps the quadrature commands fast.
const std::vector<std::string> kSmall = {"--grid", "12x24x24", "--samples", "200"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("verify paper passes every check and echoes tolerances") {
  const Outcome o = run({"verify", "paper"});
  REQUIRE(o.code == exit_code::ok);
  const Json r = o.json();
  CHECK(r.at("pass") == true);
  CHECK(r.at("config").at("grid") == Json({32, 64, 64}));
  CHECK(r.at("config").at("samples") == 1000);
  CHECK(r.at("checks").size() == 7);
  for (const auto& c : r.at("checks")) {
    CHECK(c.contains("tolerance"));
    CHECK(c.at("pass") == true);
  }
  CHECK(r.at("data").at("beltrami").at("is_beltrami") == false);
  CHECK_FALSE(r.contains("wall_time_s"));
}

TEST_CASE("verify phi_k:3 fails only the solution checks") {
  const Outcome o = run({"verify", "phi_k:3", "--samples", "200"});
  CHECK(o.code == exit_code::check_failed);
  const Json r = o.json();
  CHECK(r.at("pass") == false);
  CHECK(check(r, "commutator").at("pass") == false);
  CHECK(check(r, "divergence").at("pass") == true);
  CHECK(check(r, "kernel_dphi").at("pass") == true);
  CHECK(check(r, "bernoulli_first_integral").at("pass") == true);
}

TEST_CASE("verify hopf is a strong Beltrami field with factor 2") {
  const Outcome o = run({"verify", "hopf", "--samples", "200"});
  REQUIRE(o.code == exit_code::ok);
  const Json b = o.json().at("data").at("beltrami");
  CHECK(b.at("is_strong") == true);
  CHECK(b.at("factor").get<double>() == doctest::Approx(2.0));
}

TEST_CASE("measure") {
  const Json paper = run({"measure", "paper"}).json();
  CHECK(paper.at("pass") == true);
  CHECK(check(paper, "fs_energy").at("value").get<double>() == doctest::Approx(46.058).epsilon(1e-4));
  CHECK(check(paper, "helicity").at("value").get<double>() ==
        doctest::Approx(2 * std::numbers::pi * std::numbers::pi).epsilon(1e-6));
  const Outcome hopf = run(with({"measure", "hopf"}, kSmall));
  CHECK(hopf.code == exit_code::ok);
  CHECK(hopf.json().at("data").at("hopf_invariant_nearest") == 1);
  const Outcome k4 = run(with({"measure", "phi_k:4"}, kSmall));
  CHECK(k4.code == exit_code::ok);
  CHECK(k4.json().at("data").at("hopf_invariant_nearest") == 4);
}

TEST_CASE("sweep-k table") {
  const Outcome o = run(with({"sweep-k", "4"}, kSmall));
  REQUIRE(o.code == exit_code::ok);
  const Json rows = o.json().at("data").at("rows");
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    const int k = row.at("k");
    CHECK(row.at("solution") == (k <= 2));
    CHECK(row.at("hopf_invariant").at("value").get<double>() == doctest::Approx(k).epsilon(1e-3));
  }
  const Outcome csv = run(with({"sweep-k", "3", "--format", "csv"}, kSmall));
  CHECK(csv.code == exit_code::ok);
  std::istringstream lines(csv.out);
  std::string header, line;
  std::getline(lines, header);
  CHECK(header.starts_with("k,hopf_invariant,commutator"));
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 3);
  CHECK(run({"sweep-k", "9"}).code == exit_code::usage);
}

TEST_CASE("orbit") {
  const Outcome paper = run({"orbit", "paper", "--start", "hopf:0.7853981633974483,0,0"});
  REQUIRE(paper.code == exit_code::ok);
  const Json d = paper.json().at("data");
  CHECK(d.at("closed") == true);
  CHECK(d.at("period").get<double>() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-8));

  const Json hopf = run({"orbit", "hopf", "--start", "1,2,3,4"}).json();
  CHECK(hopf.at("data").at("period").get<double>() ==
        doctest::Approx(2 * std::numbers::pi).epsilon(1e-8));

  const Outcome csv = run({"orbit", "hopf", "--start", "(1, 0, 0, 0)", "--format", "csv"});
  CHECK(csv.code == exit_code::ok);
  CHECK(csv.out.starts_with("t,x1,y1,x2,y2\n0,1,0,0,0\n"));

  const Outcome eq = run({"orbit", "paper", "--start", "0,0.6,0.8,0"});
  CHECK(eq.code == exit_code::dynamics);
  CHECK(eq.err.find("equilibrium") != std::string::npos);
  CHECK(eq.out.empty());
}

TEST_CASE("link") {
  const Outcome hopf = run({"link", "hopf", "(0,0,1)", "(0,0,-1)"});
  REQUIRE(hopf.code == exit_code::ok);
  CHECK(check(hopf.json(), "linking_number").at("value") == 1.0);

  const Outcome phi = run({"link", "phi", "(0.1,0,1)", "(0,0,-1)"});
  REQUIRE(phi.code == exit_code::ok);
  const Json r = phi.json();
  CHECK(check(r, "linking_number").at("value") == 2.0);
  CHECK(check(r, "rounding_distance").at("value").get<double>() < 0.05);
  CHECK(r.at("data").at("components") == Json({2, 2}));

  const Outcome swapped = run({"link", "phi", "(0,0,-1)", "(0.1,0,1)"});
  CHECK(check(swapped.json(), "linking_number").at("value") == 2.0);

  CHECK(run({"link", "phi", "0,0,-1", "0,0,-1"}).code == exit_code::topology);
}

TEST_CASE("critical-set") {
  const Outcome o = run({"critical-set"});
  REQUIRE(o.code == exit_code::ok);
  CHECK(o.json().at("data").at("volume_samples") == 10000);
}

TEST_CASE("export-field matches the Hopf-coordinate form of the field") {
  const Outcome o = run({"export-field", "--grid", "3x4x4"});
  REQUIRE(o.code == exit_code::ok);
  std::istringstream lines(o.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "s,phi1,phi2,Vs,Vphi1,Vphi2,b");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::vector<double> v;
    std::istringstream cells(line);
    for (std::string cell; std::getline(cells, cell, ',');) v.push_back(std::stod(cell));
    REQUIRE(v.size() == 7);
    const oracle::V3 ref = oracle::paper_field_hopf(v[0], v[1]);
    for (int i = 0; i < 3; ++i) CHECK(v[3 + i] == doctest::Approx(ref[i]).scale(1.0).epsilon(1e-12));
    CHECK(v[6] == doctest::Approx(oracle::paper_bernoulli_hopf(v[0], v[1])).scale(1.0));
  }
  CHECK(rows == 3 * 4 * 4);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == exit_code::usage);
  CHECK(run({"frobnicate"}).code == exit_code::usage);
  CHECK(run({"verify", "bogus"}).code == exit_code::usage);
  CHECK(run({"verify", "phi_k:9"}).code == exit_code::usage);
  CHECK(run({"verify", "paper", "--format", "csv"}).code == exit_code::usage);
  CHECK(run({"verify", "paper", "--format", "xml"}).code == exit_code::usage);
  CHECK(run({"verify", "paper", "--grid", "32x64"}).code == exit_code::usage);
  CHECK(run({"verify", "paper", "--fd-step", "0"}).code == exit_code::usage);
  CHECK(run({"orbit", "paper", "--start", "1,2,3"}).code == exit_code::usage);
  CHECK(run({"orbit", "paper", "--start", "hopf:2,0,0"}).code == exit_code::usage);
  CHECK(run({"orbit", "paper", "--start", "0,0,0,0"}).code == exit_code::usage);
  CHECK(run({"link", "phi", "0,0,0", "0,0,1"}).code == exit_code::usage);
  CHECK(run({"--help"}).code == exit_code::ok);
}

TEST_CASE("reports are byte-identical for a fixed configuration") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"verify", "paper", "--seed", "5"},
           with({"sweep-k", "3"}, kSmall),
           {"orbit", "paper", "--start", "0.6,0.3,-0.5,0.55"},
           {"link", "phi", "(0.6,0,0.8)", "(-0.6,0,0.8)"}}) {
    const Outcome a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
  CHECK(run({"verify", "paper", "--seed", "1"}).out != run({"verify", "paper", "--seed", "2"}).out);

  const auto path = std::filesystem::temp_directory_path() / "s3flow_cli_test_report.json";
  const Outcome to_file = run({"verify", "paper", "--out", path.string()});
  CHECK(to_file.out.empty());
  std::ifstream in(path, std::ios::binary);
  const std::string written((std::istreambuf_iterator<char>(in)), {});
  CHECK(written == run({"verify", "paper"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("wall time only on request") {
  const Json r = run({"verify", "paper", "--samples", "50", "--timing"}).json();
  CHECK(r.contains("wall_time_s"));
}

}  // TEST_SUITE
