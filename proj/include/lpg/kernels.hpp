#pragma once

// Data-parallel kernels. Every kernel has a serial reference implementation
// and an OpenMP implementation; both produce identical results because work
// items are independent and results are written to fixed slots.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

#include <Eigen/Dense>

namespace lpg {

enum class ExecutionPolicy { Serial, Parallel };

using FMatrix = Eigen::MatrixXcd;
using FVector = Eigen::VectorXcd;

struct PowerIterationConfig {
  double p = 3.0;
  int random_starts = 8;
  int max_basis_starts = 64;
  int max_iterations = 200;
  double tolerance = 1e-10;
  std::uint64_t seed = 0x5eedULL;
};

namespace kernels {

// Number of starting vectors used for an n-column matrix: all-ones, the
// standard basis (capped), then random complex starts.
std::size_t start_count(std::size_t n, const PowerIterationConfig& cfg);

// Start vector k, normalized in ℓ^p. Depends only on (n, k, cfg), so adding
// restarts never changes earlier starts.
FVector start_vector(std::size_t n, std::size_t k, const PowerIterationConfig& cfg);

// Best ‖A x‖_p / ‖x‖_p seen along the Boyd–Higham iteration from one start.
double power_iteration_from(const FMatrix& a, const FVector& start, const PowerIterationConfig& cfg);

// Per-start lower bounds (slot k holds start k).
std::vector<double> power_iteration_starts_serial(const FMatrix& a, const PowerIterationConfig& cfg);
std::vector<double> power_iteration_starts_omp(const FMatrix& a, const PowerIterationConfig& cfg);

std::vector<double> power_iteration_starts(const FMatrix& a, const PowerIterationConfig& cfg, ExecutionPolicy policy);

double lp_norm(const FVector& v, double p);

// Runs body(i) for i in [0, n). Exceptions thrown by body are rethrown
// (the one from the smallest index wins) after all iterations finish.
template <class Body>
void for_each_index(std::size_t n, ExecutionPolicy policy, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  if (policy == ExecutionPolicy::Serial) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace kernels
}  // namespace lpg
