#include "lpg/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lpg::kernels {

namespace {

// Hölder dual direction: returns w with ‖w‖_q = 1 and Σ conj(w_i) v_i = ‖v‖_p.
FVector dual_vector(const FVector& v, double p) {
  const double norm = lp_norm(v, p);
  FVector w = FVector::Zero(v.size());
  if (norm == 0.0) return w;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag == 0.0) continue;
    w[i] = (v[i] / mag) * std::pow(mag / norm, p - 1.0);
  }
  return w;
}

double ratio(const FMatrix& a, const FVector& x, double p) {
  const double nx = lp_norm(x, p);
  return nx == 0.0 ? 0.0 : lp_norm(a * x, p) / nx;
}

}  // namespace

double lp_norm(const FVector& v, double p) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

std::size_t start_count(std::size_t n, const PowerIterationConfig& cfg) {
  return 1 + std::min<std::size_t>(n, static_cast<std::size_t>(cfg.max_basis_starts)) +
         static_cast<std::size_t>(std::max(cfg.random_starts, 0));
}

FVector start_vector(std::size_t n, std::size_t k, const PowerIterationConfig& cfg) {
  const std::size_t basis = std::min<std::size_t>(n, static_cast<std::size_t>(cfg.max_basis_starts));
  FVector x(static_cast<Eigen::Index>(n));
  if (k == 0) {
    x.setOnes();
  } else if (k <= basis) {
    x.setZero();
    x[static_cast<Eigen::Index>(k - 1)] = 1.0;
  } else {
    std::mt19937_64 rng(cfg.seed ^ (0x9E3779B97F4A7C15ULL * (k + 1)));
    std::normal_distribution<double> d(0.0, 1.0);
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = {d(rng), d(rng)};
  }
  return x / lp_norm(x, cfg.p);
}

double power_iteration_from(const FMatrix& a, const FVector& start, const PowerIterationConfig& cfg) {
  const double p = cfg.p;
  const double q = p / (p - 1.0);
  FVector x = start;
  double best = ratio(a, x, p);
  double previous = best;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    FVector y = a * x;
    if (lp_norm(y, p) == 0.0) break;
    FVector z = a.adjoint() * dual_vector(y, p);
    const double zq = lp_norm(z, q);
    const double zx = (z.adjoint() * x)(0, 0).real();
    if (zq <= zx * (1.0 + 1e-14)) break;
    x = dual_vector(z, q);
    const double est = ratio(a, x, p);
    best = std::max(best, est);
    if (std::abs(est - previous) <= cfg.tolerance * std::max(1.0, est)) break;
    previous = est;
  }
  return best;
}

std::vector<double> power_iteration_starts_serial(const FMatrix& a, const PowerIterationConfig& cfg) {
  const auto n = static_cast<std::size_t>(a.cols());
  std::vector<double> out(start_count(n, cfg));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = power_iteration_from(a, start_vector(n, k, cfg), cfg);
  return out;
}

std::vector<double> power_iteration_starts_omp(const FMatrix& a, const PowerIterationConfig& cfg) {
  const auto n = static_cast<std::size_t>(a.cols());
  std::vector<double> out(start_count(n, cfg));
  const auto count = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < count; ++k) {
    out[static_cast<std::size_t>(k)] = power_iteration_from(a, start_vector(n, static_cast<std::size_t>(k), cfg), cfg);
  }
  return out;
}

std::vector<double> power_iteration_starts(const FMatrix& a, const PowerIterationConfig& cfg, ExecutionPolicy policy) {
  return policy == ExecutionPolicy::Serial ? power_iteration_starts_serial(a, cfg) : power_iteration_starts_omp(a, cfg);
}

}  // namespace lpg::kernels
