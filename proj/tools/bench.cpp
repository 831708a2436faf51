// Benchmark comparing the serial Monte-Carlo kernel against the OpenMP one.
// Both run the same stream partitioning, so they must agree bit for bit;
// the benchmark reports the timings, the speedup and that agreement.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "belief/beta.hpp"
#include "belief/oracle.hpp"

namespace {

double seconds(std::uint64_t nanoseconds) { return nanoseconds * 1e-9; }

template <typename F>
std::uint64_t timed(F&& body, double* result) {
  const auto start = std::chrono::steady_clock::now();
  *result = body();
  const auto stop = std::chrono::steady_clock::now();
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start)
          .count());
}

}  // namespace

int main(int argc, char** argv) {
  long n = 10'000'000;
  std::uint64_t seed = 42;
  double alpha = 8.0;
  double beta = 2.0;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    const double value = std::strtod(argv[i + 1], nullptr);
    if (flag == "--n") n = static_cast<long>(value);
    else if (flag == "--seed") seed = static_cast<std::uint64_t>(value);
    else if (flag == "--alpha") alpha = value;
    else if (flag == "--beta") beta = value;
  }

  const blc::BetaShape shape{alpha, beta};
  std::printf("beta(%g,%g), n = %ld draws, seed = %llu\n", alpha, beta, n,
              static_cast<unsigned long long>(seed));
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled in this build\n");
#endif

  double serial_mean = 0.0;
  const std::uint64_t serial_ns = timed(
      [&] { return blc::mc_mean_serial(shape, n, seed); }, &serial_mean);
  double parallel_mean = 0.0;
  const std::uint64_t parallel_ns =
      timed([&] { return blc::mc_mean(shape, n, seed); }, &parallel_mean);

  std::printf("serial   : %.3fs  mean = %.12g\n", seconds(serial_ns),
              serial_mean);
  std::printf("parallel : %.3fs  mean = %.12g\n", seconds(parallel_ns),
              parallel_mean);
  std::printf("speedup  : %.2fx\n",
              seconds(serial_ns) / seconds(parallel_ns));
  std::printf("bitwise agreement: %s\n",
              serial_mean == parallel_mean ? "yes" : "NO");
  return serial_mean == parallel_mean ? 0 : 1;
}
