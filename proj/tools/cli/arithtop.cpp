#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arithtop/harness.hpp"

using namespace arithtop;

int main(int argc, char** argv) {
  CLI::App app{"Tate cohomology checks for quadratic fields, cyclic cubics and C_p-manifold examples"};
  app.require_subcommand(1);

  SweepConfig sweep;
  auto* quad = app.add_subcommand("verify-quadratic", "sweep square-free d and check every field");
  quad->add_option("--d-min", sweep.d_min, "smallest d")->required();
  quad->add_option("--d-max", sweep.d_max, "largest d")->required();
  quad->add_option("--format", sweep.output_format, "table or json")->check(CLI::IsMember({"table", "json"}));
  quad->add_option("--jobs", sweep.parallelism, "worker threads")->check(CLI::PositiveNumber);
  quad->add_flag("--fail-fast", sweep.fail_fast, "stop at the first failing field");

  std::vector<int> primes;
  int n_max = 8;
  auto* ex = app.add_subcommand("examples", "run the manifold checks on the lens and hempel families");
  ex->add_option("--p", primes, "comma-separated primes")->delimiter(',');
  ex->add_option("--n-max", n_max, "largest n for the hempel family");

  std::string spec_path;
  auto* coh = app.add_subcommand("cohomology", "Tate cohomology of a module given as JSON");
  coh->add_option("--spec", spec_path, "module spec file")->required();

  std::string csv_path;
  bool cubic_fail_fast = false;
  auto* cubic = app.add_subcommand("verify-cubic", "check 3-ranks of cyclic cubic class groups from a CSV table");
  cubic->add_option("--csv", csv_path, "CSV file")->required();
  cubic->add_flag("--fail-fast", cubic_fail_fast, "stop at the first bad row");

  long long bound = -200;
  auto* nine = app.add_subcommand("nine-fields", "imaginary quadratic fields with trivial class group");
  nine->add_option("--bound", bound, "most negative d to scan");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*quad) return cmd_verify_quadratic(sweep, std::cout).exit_code();
    if (*ex) return cmd_examples(primes, n_max, std::cout).exit_code();
    if (*coh) {
      print_cohomology(std::cout, load_module_spec(spec_path));
      return kExitPass;
    }
    if (*cubic) return cmd_verify_cubic(csv_path, cubic_fail_fast, std::cout).exit_code();
    if (*nine) return cmd_nine_fields(bound, std::cout).exit_code();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
