#include "catch_amalgamated.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(ARITHTOP_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& rel) { return std::string(ARITHTOP_DATA_DIR) + "/" + rel; }

nlohmann::json without_elapsed(nlohmann::json j) {
  j["summary"].erase("elapsed_seconds");
  return j;
}

}  // namespace

TEST_CASE("verify-quadratic over [2, 100]", "[cli]") {
  const Run r = run("verify-quadratic --d-min 2 --d-max 100 --format json");
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("reports").size() >= 60);
  for (const auto& rep : j.at("reports")) REQUIRE(rep.at("checks").size() == 4);
  // d = 34 has a norm +1 unit and s - dim Cl^G = 1; it is the only failure here.
  const auto& ce = j.at("summary").at("counterexamples");
  REQUIRE(ce.size() == 1);
  REQUIRE(ce[0].at("subject") == "d=34");
  REQUIRE(j.at("summary").at("checks_failed") == 1);
  REQUIRE(r.code == 1);
  REQUIRE(run("verify-quadratic --d-min 2 --d-max 33").code == 0);
}

TEST_CASE("verify-quadratic single fields", "[cli]") {
  auto j = nlohmann::json::parse(run("verify-quadratic --d-min 10 --d-max 10 --format json").out);
  REQUIRE(j.at("reports").size() == 1);
  const auto& r10 = j.at("reports")[0];
  REQUIRE(r10.at("s") == 2);
  REQUIRE(r10.at("dim_h0_cl") == 1);
  REQUIRE(r10.at("unit_norm") == -1);
  REQUIRE(r10.at("checks").at("gauss_identity").at("lhs") == 1);

  const Run neg = run("verify-quadratic --d-min -1 --d-max -1 --format json");
  REQUIRE(neg.code == 0);
  j = nlohmann::json::parse(neg.out);
  const auto& r1 = j.at("reports")[0];
  REQUIRE(r1.at("class_invariants").empty());
  REQUIRE(r1.at("checks").at("upper_nf").at("lhs") == 1);
  REQUIRE(r1.at("checks").at("upper_nf").at("rhs") == 1);
  REQUIRE(r1.at("unit_norm").is_null());
}

TEST_CASE("a failing check exits 1 and lists the counterexample", "[cli]") {
  const Run r = run("verify-quadratic --d-min 34 --d-max 34 --format json");
  REQUIRE(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  const auto& ce = j.at("summary").at("counterexamples");
  REQUIRE(ce.size() == 1);
  REQUIRE(ce[0].at("subject") == "d=34");
  REQUIRE(ce[0].at("check") == "gauss_identity");
}

TEST_CASE("job count does not change the output", "[cli]") {
  const auto a = nlohmann::json::parse(run("verify-quadratic --d-min -400 --d-max 400 --format json --jobs 1").out);
  const auto b = nlohmann::json::parse(run("verify-quadratic --d-min -400 --d-max 400 --format json --jobs 4").out);
  REQUIRE(without_elapsed(a) == without_elapsed(b));
}

TEST_CASE("fail-fast stops at the first failing field", "[cli]") {
  const Run r = run("verify-quadratic --d-min 2 --d-max 300 --format json --fail-fast --jobs 3");
  REQUIRE(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.at("reports").back().at("d") == 34);
  REQUIRE(j.at("summary").at("checks_failed") == 1);
}

TEST_CASE("usage errors exit 2", "[cli]") {
  REQUIRE(run("verify-quadratic --d-min 5 --d-max 2").code == 2);
  REQUIRE(run("verify-quadratic --d-min 2 --d-max 5 --jobs 0").code == 2);
  REQUIRE(run("verify-quadratic --d-min 2 --d-max 5 --format xml").code == 2);
  REQUIRE(run("no-such-command").code == 2);
  REQUIRE(run("").code == 2);
  REQUIRE(run("verify-cubic --csv " + data("does_not_exist.csv")).code == 2);
  REQUIRE(run("cohomology --spec " + data("modules/does_not_exist.json")).code == 2);
}

TEST_CASE("examples", "[cli]") {
  Run r = run("examples --p 3 --n-max 5");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("hypothesis-violated") != std::string::npos);
  REQUIRE(run("examples --p 2,3,5 --n-max 8").code == 0);
  r = run("examples --n-max 3");
  REQUIRE(r.code == 0);
  REQUIRE(run("examples --p 4").code == 2);
}

TEST_CASE("cohomology", "[cli]") {
  Run r = run("cohomology --spec " + data("modules/regular_c3.json"));
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("type (F,T,AI) = (1,0,0)") != std::string::npos);
  r = run("cohomology --spec " + data("modules/lens_p3.json"));
  REQUIRE(r.code == 0);
  r = run("cohomology --spec " + data("modules/bad_tau_order_p2.json"));
  REQUIRE(r.code == 2);
  REQUIRE(r.out.find("/tau") != std::string::npos);
  r = run("cohomology --spec " + data("modules/syntax_error.json"));
  REQUIRE(r.code == 2);
  REQUIRE(r.out.find("line") != std::string::npos);
}

TEST_CASE("verify-cubic", "[cli]") {
  REQUIRE(run("verify-cubic --csv " + data("cubic_fixture.csv")).code == 0);
  Run r = run("verify-cubic --csv " + data("cubic_corrupted.csv"));
  REQUIRE(r.code == 1);
  REQUIRE(r.out.find("conductor=63") != std::string::npos);
  r = run("verify-cubic --csv " + data("cubic_inconsistent.csv"));
  REQUIRE(r.code == 1);
  REQUIRE(r.out.find("MalformedRecord") != std::string::npos);
}

TEST_CASE("nine-fields", "[cli]") {
  Run r = run("nine-fields --bound -200");
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("-1, -2, -3, -7, -11, -19, -43, -67, -163") != std::string::npos);
  REQUIRE(run("nine-fields --bound -5").code == 0);
  REQUIRE(run("nine-fields --bound 3").code == 2);
}
