// Benchmark: OpenMP kernels against their serial reference implementations.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "cantor/cantor_set.hpp"
#include "cantor/gamma.hpp"
#include "cantor/verify.hpp"

using namespace cantor;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int level = argc > 1 ? std::atoi(argv[1]) : 9;
  const int grid = argc > 2 ? std::atoi(argv[2]) : 1024;
  const auto& pc = pair_constants();
  const auto K = make_middle_cantor(pc.p);
  const auto Kp = make_middle_cantor(pc.q);

  auto t0 = Clock::now();
  const IntervalSet fast = difference_scan(K, Kp, 1, level);
  const double t_fast = ms_since(t0);
  t0 = Clock::now();
  const IntervalSet ref = difference_scan_reference(K, Kp, 1, level);
  const double t_ref = ms_since(t0);
  std::printf("difference level %d: kernel %.1f ms, reference %.1f ms, speedup %.2fx, %s\n",
              level, t_fast, t_ref, t_ref / t_fast,
              fast.intervals() == ref.intervals() ? "results identical" : "RESULTS DIFFER");

  t0 = Clock::now();
  const Certificate sample = verify_lemma1(VerifyMode::Sample, grid);
  const double t_sample = ms_since(t0);
  t0 = Clock::now();
  const Certificate rig = verify_lemma1(VerifyMode::Rigorous, grid);
  const double t_rig = ms_since(t0);
  std::printf("lemma-1 sweep: sample(%d) %.1f ms (%zu entries, %s), rigorous %.1f ms (%s)\n",
              grid, t_sample, sample.entries().size(), sample.all_pass() ? "pass" : "FAIL",
              t_rig, rig.all_pass() ? "pass" : "FAIL");
  return fast.intervals() == ref.intervals() && sample.all_pass() && rig.all_pass() ? 0 : 1;
}
