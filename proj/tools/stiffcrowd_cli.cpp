#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stiffcrowd/acceptance.hpp"
#include "stiffcrowd/config.hpp"
#include "stiffcrowd/errors.hpp"
#include "stiffcrowd/output.hpp"
#include "stiffcrowd/sweep.hpp"

namespace sc = stiffcrowd;

int main(int argc, char** argv) {
  CLI::App app{"stiff crowd-motion solvers: finite volumes, front tracking, follow-the-leader"};
  app.require_subcommand(1);

  std::string out;
  int jobs = 0;
  unsigned long long seed = 0;
  app.add_option("--out", out, "output directory (versioned with -vN if not empty)");
  app.add_option("--jobs", jobs, "parallel sweep points")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for randomized property checks (the acceptance suite is deterministic)");

  std::string config_path, suite;
  auto* run_cmd = app.add_subcommand("run", "run a single scenario");
  run_cmd->add_option("config", config_path)->required();
  auto* sweep_cmd = app.add_subcommand("sweep", "run the cartesian product of the sweep axes");
  sweep_cmd->add_option("config", config_path)->required();
  auto* compare_cmd = app.add_subcommand("compare", "front tracking against a stiff finite-volume run");
  compare_cmd->add_option("config", config_path)->required();
  auto* acc_cmd = app.add_subcommand("acceptance", "run an acceptance suite (core, quick)");
  acc_cmd->add_option("suite", suite)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (acc_cmd->parsed()) {
      const auto report = sc::run_acceptance(suite, [](const sc::CriterionResult& r) {
        std::cout << sc::format_result(r) << std::endl;
      });
      int failed = 0;
      for (const auto& r : report.results) failed += !r.pass;
      std::cout << (failed ? "FAILED " : "PASSED ") << report.results.size() - failed << "/" << report.results.size()
                << " criteria in suite " << suite << std::endl;
      return failed ? 1 : 0;
    }

    const auto cfg = sc::load_config(config_path);
    const std::string target = out.empty() ? cfg.manifest.out_dir : out;
    const int n_jobs = jobs > 0 ? jobs : cfg.manifest.jobs;

    if (run_cmd->parsed()) {
      const auto dir = sc::claim_output_dir(target);
      const auto res = sc::run_point(cfg.scenario, dir);
      std::cout << "wrote " << dir.string() << '\n';
      for (const auto& f : res.failures) std::cerr << "invariant failed: " << f << '\n';
      return res.ok ? 0 : 1;
    }
    if (sweep_cmd->parsed()) {
      const auto dir = sc::claim_output_dir(target);
      const int code = sc::run_sweep(cfg, dir, n_jobs);
      std::cout << "wrote " << dir.string() << '\n';
      return code;
    }
    if (compare_cmd->parsed()) {
      const auto dir = sc::claim_output_dir(target);
      const auto rep = sc::run_compare(cfg, dir);
      std::printf("max front error %.6g\nmerge time (front tracking) %.10g\nmerge time (finite volume) %.6g\n",
                  rep.max_front_error, rep.merge_time_track, rep.merge_time_fv);
      std::cout << "wrote " << dir.string() << '\n';
      return 0;
    }
  } catch (const sc::Error& e) {
    std::cerr << "error [" << sc::to_string(e.kind()) << "]: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
