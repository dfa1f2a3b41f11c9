#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpg/exact/matrix.hpp"
#include "lpg/kernels.hpp"

namespace lpg {

using exact::CMatrix;
using exact::GaussRational;
using exact::Rational;

// Exponent p in [1, ∞). The exact value is kept so p = 2 and p = 1 are
// recognized without floating comparisons.
class PExponent {
 public:
  explicit PExponent(Rational p);
  static PExponent parse(std::string_view text) { return PExponent(Rational::parse(text)); }

  const Rational& exact() const { return p_; }
  double value() const { return p_.to_double(); }
  bool is_one() const { return p_ == Rational(1); }
  bool is_two() const { return p_ == Rational(2); }
  // Hölder dual p' = p/(p-1); +∞ when p = 1.
  double dual() const;
  std::string to_string() const { return p_.to_string(); }

  // Throws ExcludedExponent naming the operation when p = 2.
  void require_not_two(std::string_view operation) const;

 private:
  Rational p_;
};

enum class NormMethod { ExactP1, ExactP2, PowerIteration, Interpolation, NonnegExact };
std::string_view method_name(NormMethod m);

// Interval [lower, upper] certified to contain an ℓ^p operator norm.
struct NormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  NormMethod method = NormMethod::PowerIteration;
  double width() const { return upper - lower; }
};

struct NormOptions {
  int random_starts = 8;
  int max_iterations = 200;
  double tolerance = 1e-10;
  // Relative slack on the upper end of a nonneg-exact estimate.
  double nonneg_slack = 1e-9;
  std::uint64_t seed = 0x5eedULL;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
};

FMatrix to_floating(const CMatrix& m);

// ‖M‖_{ℓ^p → ℓ^p}. Exact for p = 1 (max column sum) and p = 2 (largest
// singular value). Otherwise the lower end is the best multistart
// Boyd–Higham iterate and the upper end is the Riesz–Thorin bound
// ‖M‖_1^{1/p} ‖M‖_∞^{1-1/p}.
NormEstimate p_operator_norm(const FMatrix& m, const PExponent& p, const NormOptions& opts = {});
NormEstimate p_operator_norm(const CMatrix& m, const PExponent& p, const NormOptions& opts = {});

// ---------------------------------------------------------------------------
// Lamperti isometries of ℓ^p_n (p ≠ 2): unimodular diagonal times permutation.

struct LampertiFactorization {
  std::vector<GaussRational> diagonal;
  // M e_j = diagonal[permutation[j]] e_{permutation[j]}.
  std::vector<int> permutation;
  CMatrix recompose() const;
};

bool is_lamperti_isometry(const CMatrix& m, const PExponent& p);
// Structural test only (unimodular diagonal times permutation), valid for any p.
bool has_lamperti_form(const CMatrix& m);
// Throws std::invalid_argument if m is not of Lamperti form.
LampertiFactorization lamperti_decompose(const CMatrix& m, const PExponent& p);

// ---------------------------------------------------------------------------

// A unital (or not) subalgebra of M_n given by an exact basis.
class RepresentedAlgebra {
 public:
  // Validates independence, closure under products, and (if unital) that the
  // identity lies in the span.
  static RepresentedAlgebra make(std::size_t n, std::vector<CMatrix> basis, bool unital);
  // Extracts an independent subset of the spanning set, then validates.
  static RepresentedAlgebra span_of(std::size_t n, const std::vector<CMatrix>& spanning, bool unital);
  // Closure of the generators (and the identity when unital) under products.
  static RepresentedAlgebra generated_by(std::size_t n, const std::vector<CMatrix>& generators, bool unital);

  static RepresentedAlgebra full_matrix(std::size_t n);
  static RepresentedAlgebra upper_triangular(std::size_t n);
  static RepresentedAlgebra diagonal(std::size_t n);
  static RepresentedAlgebra scalars(std::size_t n);

  std::size_t ambient() const { return n_; }
  std::size_t dimension() const { return basis_.size(); }
  bool unital() const { return unital_; }
  const std::vector<CMatrix>& basis() const { return basis_; }

  bool contains(const CMatrix& m) const;
  std::optional<std::vector<GaussRational>> coordinates(const CMatrix& m) const;
  CMatrix element(const std::vector<GaussRational>& coefficients) const;
  bool is_commutative() const;
  // True when both algebras span the same subspace of M_n.
  bool same_span(const RepresentedAlgebra& other) const;
  bool contains_all(const RepresentedAlgebra& other) const;

 private:
  RepresentedAlgebra(std::size_t n, std::vector<CMatrix> basis, bool unital);

  std::size_t n_ = 0;
  std::vector<CMatrix> basis_;
  bool unital_ = false;
  std::shared_ptr<const exact::SpanSolver<GaussRational>> solver_;
};

std::vector<GaussRational> flatten(const CMatrix& m);

struct CoreResult {
  RepresentedAlgebra core;
  // Real-linear basis of the hermitian part A_h.
  std::vector<CMatrix> hermitian_basis;
  bool commutative = false;
  std::vector<std::string> notes;
};

// core(A) = A_h + i A_h. For p ≠ 2, A_h = A ∩ {real diagonal}; for p = 2,
// A_h = {a ∈ A : a = a*}. Solved as an exact real-linear system.
CoreResult core_of(const RepresentedAlgebra& a, const PExponent& p);

// Finite spectrum of a commutative diagonal algebra: diagonal coordinates
// grouped by agreement of every element.
struct Spectrum {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<int> class_of;  // coordinate -> point
  std::vector<CMatrix> idempotents;  // indicator of each point
  std::size_t size() const { return classes.size(); }
};

Spectrum spectrum_points(const RepresentedAlgebra& c);

// Values of m on the spectrum when m is diagonal and constant on each class.
std::optional<std::vector<GaussRational>> as_function_on(const Spectrum& s, const CMatrix& m);

// ---------------------------------------------------------------------------

struct HermitianOptions {
  std::vector<double> grid{0.1, -0.1, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 3.141592653589793, -3.141592653589793};
  double tau = 1e-6;
  NormOptions norm;
};

enum class DynamicVerdict { Isometric, Expanding, Inconclusive };
std::string_view verdict_name(DynamicVerdict v);

struct HermitianEvidence {
  double t = 0.0;
  NormEstimate estimate;
};

struct HermitianVerdict {
  bool hermitian = false;  // structural verdict, authoritative
  DynamicVerdict dynamic = DynamicVerdict::Inconclusive;
  std::vector<HermitianEvidence> evidence;
  bool agree() const {
    return (hermitian && dynamic == DynamicVerdict::Isometric) || (!hermitian && dynamic == DynamicVerdict::Expanding);
  }
};

// Structural test (real diagonal for p ≠ 2, self-adjoint for p = 2) with a
// cross-check of ‖exp(ita)‖_p over the configured grid of t.
HermitianVerdict is_hermitian(const RepresentedAlgebra& alg, const CMatrix& a, const PExponent& p,
                              const HermitianOptions& opts = {});

}  // namespace lpg
