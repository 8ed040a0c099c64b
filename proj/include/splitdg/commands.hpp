#pragma once

// Batch front-end internals: problem assembly from a RunConfig, the
// verification suite, and the subcommand drivers with their CSV/JSON
// emitters. Kept out of main() so tests can drive them directly.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "splitdg/config.hpp"
#include "splitdg/solver.hpp"

namespace splitdg {

// A configured problem ready to march.
struct Problem {
  std::shared_ptr<const Discretization> disc;
  SolverState state;
  // Closed-form solution u(x, t) when one is known (constant states; pure
  // translation for constant-velocity advection); empty otherwise.
  BoundaryFn exact;
  double dt = 0;
  double out_interval = 0;
};

Problem build_problem(const RunConfig& cfg);

// sqrt(sum_e (J (U - u_ex), U - u_ex)_N) at the state's current time.
double solution_error(const SolverState& state, const BoundaryFn& exact);

// Directory for emitted files: $SPLITDG_OUT_DIR when set (created if
// missing), otherwise the working directory.
std::string output_dir();
std::string output_path(const std::string& name);

struct VerifyOptions {
  int nmax = 8;                      // sweep degrees 1..nmax
  std::uint64_t seed = 12345;
  std::string json_path;             // default: <outdir>/verify.json
  std::string dump_quadrature_dir;   // write lgl_<N>.csv per degree when set
  bool force_cross_metrics = false;  // exercise the metric-identity failure
};

struct CheckResult {
  std::string name;
  double value = 0;
  double threshold = 0;
  bool require_below = true;  // pass: value <= threshold; else value > threshold
  bool pass = false;
};

std::vector<CheckResult> run_verification(const VerifyOptions& opt);

// Exit codes: 0 success / all checks pass, 3 verification failure.
// Parse/validation and numerical errors propagate as exceptions; the CLI
// entry point maps them to exit codes 1 and 2.
int cmd_verify(const VerifyOptions& opt);
int cmd_run(const RunConfig& cfg);
int cmd_compare(const RunConfig& cfg);
int cmd_convergence(const RunConfig& cfg, const std::vector<int>& degrees);

}  // namespace splitdg
