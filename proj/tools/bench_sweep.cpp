// Compares the serial and OpenMP correspondence sweeps on a fixed
// workload: the standard axiom corpus against all full frames up to the
// chosen size.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "alba/checker.hpp"
#include "alba/engine.hpp"
#include "alba/formula.hpp"
#include "alba/frames.hpp"

using namespace alba;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch())
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  int size = argc > 1 ? std::atoi(argv[1]) : 3;
  uint64_t budget = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 0;

  const char* corpus[] = {
      "box p <= p",        "box p <= box box p", "p <= box dia p",
      "dia box p <= box dia p", "dia p <= dia dia p", "box p <= dia p",
      "p <= dia p",        "dia dia p <= dia p",
      "box (p -> q) <= box p -> box q", "dia (p & q) <= dia p",
  };

  FrameEnumConfig cfg;
  cfg.max_size = size;
  cfg.acc_budget = budget;
  cfg.seed = 7;
  std::vector<PossibilityFrame> frames = collect_full_frames(cfg);
  std::cout << "frames: " << frames.size() << " (size <= " << size << ")\n";
#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (built without OpenMP)\n";
#endif

  double serial_total = 0, parallel_total = 0;
  for (const char* text : corpus) {
    Inequality iq = parse_inequality(text);
    AlbaResult res = run_alba(iq);
    if (!res.success) {
      std::cout << text << ": ALBA failure, skipped\n";
      continue;
    }
    double t0 = now_seconds();
    auto serial = verify_correspondence(iq, res.fo, frames, false);
    double t1 = now_seconds();
    auto parallel = verify_correspondence(iq, res.fo, frames, true);
    double t2 = now_seconds();
    if (serial.disagreements != parallel.disagreements) {
      std::cerr << "mismatch between serial and parallel sweeps on " << text
                << "\n";
      return 1;
    }
    serial_total += t1 - t0;
    parallel_total += t2 - t1;
    std::cout << text << ": serial " << (t1 - t0) << "s, parallel "
              << (t2 - t1) << "s, agree " << serial.frames_checked << "/"
              << serial.frames_checked << "\n";
  }
  std::cout << "total: serial " << serial_total << "s, parallel "
            << parallel_total << "s";
  if (parallel_total > 0)
    std::cout << ", speedup " << serial_total / parallel_total << "x";
  std::cout << "\n";
  return 0;
}
