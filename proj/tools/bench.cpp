// Residual-kernel benchmark: serial textbook assembly vs the OpenMP
// production kernels, at several thread counts, on one warped acoustics
// problem. Also reports the worst elementwise discrepancy so the speedup
// table doubles as a consistency check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "splitdg/solver.hpp"

namespace {

using splitdg::Form;
using splitdg::NodalStateField;
using splitdg::SolverState;

double time_best(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

double max_diff(const std::vector<NodalStateField>& a,
                const std::vector<NodalStateField>& b) {
  double m = 0;
  for (size_t e = 0; e < a.size(); ++e)
    for (size_t t = 0; t < a[e].size(); ++t)
      m = std::max(m, std::abs(a[e].data()[t] - b[e].data()[t]));
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark the residual kernels"};
  int degree = 6;
  std::vector<int> counts{4, 4, 3};
  int reps = 5;
  double warp = 0.03;
  app.add_option("--degree", degree, "Polynomial degree");
  app.add_option("--counts", counts, "Elements per direction (3 values)");
  app.add_option("--reps", reps, "Repetitions (best time is reported)");
  app.add_option("--warp", warp, "Mesh warp amplitude");
  CLI11_PARSE(app, argc, argv);
  if (counts.size() != 3) {
    std::fprintf(stderr, "--counts needs 3 values\n");
    return 1;
  }

  const std::array<double, 6> extents{0, 1, 0, 1, 0, 1};
  const std::array<int, 3> nel{counts[0], counts[1], counts[2]};
  splitdg::Mesh mesh = splitdg::build_box_mesh(extents, nel, warp, degree,
                                               splitdg::MetricMode::Curl);
  splitdg::HyperbolicSystem sys = splitdg::make_acoustics(1.0);

  std::vector<int> thread_counts{1};
#ifdef _OPENMP
  const int hw = omp_get_max_threads();
  for (int t = 2; t < hw; t *= 2) thread_counts.push_back(t);
  if (hw > 1) thread_counts.push_back(hw);
#endif

  std::printf("mesh %dx%dx%d, degree %d, %d elements, %zu nodes, acoustics\n",
              nel[0], nel[1], nel[2], degree, mesh.n_elements(),
              mesh.n_elements() * static_cast<size_t>(degree + 1) *
                  (degree + 1) * (degree + 1));

  // Reference baseline (thread count irrelevant for the serial assembly).
  auto disc0 = std::make_shared<splitdg::Discretization>(mesh, sys,
                                                         splitdg::BoundaryFn{}, 1);
  SolverState state = splitdg::make_state(disc0, Form::DS, 1.0);
  splitdg::randomize_state(state, 7);

  std::vector<NodalStateField> ref;
  const double t_ref = time_best(
      reps, [&] { ref = splitdg::reference::residual(state, Form::DS); });
  std::printf("%-24s %10.3f ms\n", "reference (serial)", 1e3 * t_ref);

  for (int threads : thread_counts) {
    auto disc = std::make_shared<splitdg::Discretization>(mesh, sys,
                                                          splitdg::BoundaryFn{},
                                                          threads);
    SolverState s = splitdg::make_state(disc, Form::DS, 1.0);
    s.U = state.U;
    std::vector<NodalStateField> out;
    const double t = time_best(reps, [&] { out = splitdg::residual(s); });
    char label[64];
    std::snprintf(label, sizeof label, "production (%d thread%s)", threads,
                  threads == 1 ? "" : "s");
    std::printf("%-24s %10.3f ms   speedup vs reference %5.2fx   max diff %.3g\n",
                label, 1e3 * t, t_ref / t, max_diff(ref, out));
  }
  return 0;
}
