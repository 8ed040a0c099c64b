// splitdg: batch front-end for the split-form DGSEM solver.
//
//   splitdg verify [--nmax K] [--seed S] [--json PATH]
//                  [--dump-quadrature DIR] [--force-cross-metrics]
//   splitdg run <config>
//   splitdg compare <config>
//   splitdg convergence <config> --N 2 4 6 8
//
// Output files land in $SPLITDG_OUT_DIR (created on demand) or the working
// directory. Exit codes: 0 success, 1 bad config, 2 numerical failure,
// 3 verification failure.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "splitdg/commands.hpp"
#include "splitdg/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Split-form DGSEM solver for linear hyperbolic systems"};
  app.require_subcommand(1);

  splitdg::VerifyOptions vopt;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the discrete calculus and metric identity suite");
  verify->add_option("--nmax", vopt.nmax, "Largest polynomial degree to sweep");
  verify->add_option("--seed", vopt.seed, "Seed for the randomized checks");
  verify->add_option("--json", vopt.json_path, "Report path (default verify.json)");
  verify->add_option("--dump-quadrature", vopt.dump_quadrature_dir,
                     "Write per-degree node/weight/derivative tables here");
  verify->add_flag("--force-cross-metrics", vopt.force_cross_metrics,
                   "Use cross-form metrics where the identity needs curl form "
                   "(demonstrates the failure)");

  std::string run_cfg, compare_cfg, conv_cfg;
  std::vector<int> degrees;
  CLI::App* run = app.add_subcommand("run", "Integrate one configured problem");
  run->add_option("config", run_cfg, "Configuration file")->required();

  CLI::App* compare = app.add_subcommand(
      "compare", "Run the divergence and split forms side by side");
  compare->add_option("config", compare_cfg, "Configuration file")->required();

  CLI::App* conv = app.add_subcommand(
      "convergence", "Sweep polynomial degrees against the exact solution");
  conv->add_option("config", conv_cfg, "Configuration file")->required();
  conv->add_option("--N", degrees, "Degrees to run")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return splitdg::cmd_verify(vopt);
    if (run->parsed()) return splitdg::cmd_run(splitdg::parse_config_file(run_cfg));
    if (compare->parsed())
      return splitdg::cmd_compare(splitdg::parse_config_file(compare_cfg));
    return splitdg::cmd_convergence(splitdg::parse_config_file(conv_cfg),
                                    degrees);
  } catch (const splitdg::ParseError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const splitdg::ValidationError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const splitdg::NonPositiveJacobian& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const splitdg::NonConvergence& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
