#include "lpg/lp_norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "lpg/errors.hpp"

namespace lpg {

PExponent::PExponent(Rational p) : p_(p) {
  if (p_ < Rational(1)) throw std::invalid_argument("p must be at least 1, got " + p_.to_string());
}

double PExponent::dual() const {
  if (is_one()) return std::numeric_limits<double>::infinity();
  return (p_ / (p_ - Rational(1))).to_double();
}

void PExponent::require_not_two(std::string_view operation) const {
  if (is_two()) {
    throw ExcludedExponent(std::string(operation) +
                           " requires p != 2: on Hilbert space the invertible isometries are all unitaries, "
                           "so the Lamperti description and the commutative core are unavailable");
  }
}

std::string_view method_name(NormMethod m) {
  switch (m) {
    case NormMethod::ExactP1: return "exact-p1";
    case NormMethod::ExactP2: return "exact-p2";
    case NormMethod::PowerIteration: return "power-iteration";
    case NormMethod::Interpolation: return "interpolation";
    case NormMethod::NonnegExact: return "nonneg-exact";
  }
  return "unknown";
}

FMatrix to_floating(const CMatrix& m) {
  FMatrix f(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) f(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c).to_complex();
  return f;
}

namespace {

double max_column_sum(const FMatrix& m) {
  double best = 0.0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) best = std::max(best, m.col(c).cwiseAbs().sum());
  return best;
}

double max_row_sum(const FMatrix& m) {
  double best = 0.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) best = std::max(best, m.row(r).cwiseAbs().sum());
  return best;
}

bool entrywise_nonnegative(const FMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (m(r, c).imag() != 0.0 || m(r, c).real() < 0.0) return false;
  return true;
}

// Scaling and squaring with a truncated Taylor series.
FMatrix expm(const FMatrix& a) {
  const double norm = max_column_sum(a);
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const FMatrix b = a / std::pow(2.0, s);
  FMatrix result = FMatrix::Identity(a.rows(), a.cols());
  FMatrix term = result;
  for (int k = 1; k <= 24; ++k) {
    term = term * b / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < s; ++i) result = result * result;
  return result;
}

}  // namespace

NormEstimate p_operator_norm(const FMatrix& m, const PExponent& p, const NormOptions& opts) {
  if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("operator norm of an empty matrix");
  if (!m.allFinite()) throw std::invalid_argument("operator norm of a matrix with non-finite entries");
  NormEstimate est;
  if (p.is_one()) {
    est.lower = est.upper = max_column_sum(m);
    est.method = NormMethod::ExactP1;
    return est;
  }
  if (p.is_two()) {
    Eigen::JacobiSVD<FMatrix> svd(m);
    est.lower = est.upper = svd.singularValues()(0);
    est.method = NormMethod::ExactP2;
    return est;
  }
  const double pv = p.value();
  const double one = max_column_sum(m);
  const double inf = max_row_sum(m);
  const double rt = std::pow(one, 1.0 / pv) * std::pow(inf, 1.0 - 1.0 / pv);
  // Account for rounding in the bound itself.
  const double upper = rt * (1.0 + 8 * std::numeric_limits<double>::epsilon());

  PowerIterationConfig cfg;
  cfg.p = pv;
  cfg.random_starts = opts.random_starts;
  cfg.max_iterations = opts.max_iterations;
  cfg.tolerance = opts.tolerance;
  cfg.seed = opts.seed;
  auto per_start = kernels::power_iteration_starts(m, cfg, opts.policy);
  double lower = *std::max_element(per_start.begin(), per_start.end());
  lower = std::min(lower, upper);

  est.lower = lower;
  est.upper = upper;
  est.method = NormMethod::PowerIteration;
  if (upper - lower <= opts.tolerance * std::max(1.0, upper)) {
    est.method = NormMethod::Interpolation;
  } else if (entrywise_nonnegative(m)) {
    est.upper = std::min(upper, lower * (1.0 + opts.nonneg_slack));
    est.method = NormMethod::NonnegExact;
  }
  return est;
}

NormEstimate p_operator_norm(const CMatrix& m, const PExponent& p, const NormOptions& opts) {
  return p_operator_norm(to_floating(m), p, opts);
}

// ---------------------------------------------------------------------------

CMatrix LampertiFactorization::recompose() const {
  const std::size_t n = diagonal.size();
  CMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto r = static_cast<std::size_t>(permutation[j]);
    m(r, j) = diagonal[r];
  }
  return m;
}

namespace {

std::optional<LampertiFactorization> try_lamperti(const CMatrix& m) {
  if (!m.square() || m.rows() == 0) return std::nullopt;
  const std::size_t n = m.rows();
  LampertiFactorization f;
  f.diagonal.assign(n, GaussRational(0));
  f.permutation.assign(n, -1);
  std::vector<bool> row_used(n, false);
  for (std::size_t c = 0; c < n; ++c) {
    int hit = -1;
    for (std::size_t r = 0; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      if (hit >= 0) return std::nullopt;
      hit = static_cast<int>(r);
    }
    if (hit < 0 || row_used[static_cast<std::size_t>(hit)]) return std::nullopt;
    const GaussRational& v = m(static_cast<std::size_t>(hit), c);
    if (v.abs2() != Rational(1)) return std::nullopt;
    row_used[static_cast<std::size_t>(hit)] = true;
    f.permutation[c] = hit;
    f.diagonal[static_cast<std::size_t>(hit)] = v;
  }
  return f;
}

}  // namespace

bool has_lamperti_form(const CMatrix& m) { return try_lamperti(m).has_value(); }

bool is_lamperti_isometry(const CMatrix& m, const PExponent& p) {
  p.require_not_two("Lamperti isometry test");
  return has_lamperti_form(m);
}

LampertiFactorization lamperti_decompose(const CMatrix& m, const PExponent& p) {
  p.require_not_two("Lamperti decomposition");
  auto f = try_lamperti(m);
  if (!f) throw std::invalid_argument("matrix is not a unimodular diagonal times a permutation");
  if (!(f->recompose() == m)) throw VerificationFailure("Lamperti factorization does not recompose");
  return *f;
}

// ---------------------------------------------------------------------------

std::vector<GaussRational> flatten(const CMatrix& m) { return m.data(); }

RepresentedAlgebra::RepresentedAlgebra(std::size_t n, std::vector<CMatrix> basis, bool unital)
    : n_(n), basis_(std::move(basis)), unital_(unital) {
  auto solver = std::make_shared<exact::SpanSolver<GaussRational>>(n * n);
  for (const auto& b : basis_) {
    if (b.rows() != n || b.cols() != n) throw std::invalid_argument("basis matrix has the wrong size");
    if (!solver->insert(flatten(b))) throw std::invalid_argument("basis matrices are linearly dependent");
  }
  solver_ = std::move(solver);
}

RepresentedAlgebra RepresentedAlgebra::make(std::size_t n, std::vector<CMatrix> basis, bool unital) {
  RepresentedAlgebra a(n, std::move(basis), unital);
  for (std::size_t i = 0; i < a.basis_.size(); ++i)
    for (std::size_t j = 0; j < a.basis_.size(); ++j)
      if (!a.contains(a.basis_[i] * a.basis_[j])) {
        throw std::invalid_argument("span is not closed under multiplication (basis " + std::to_string(i) + " * " +
                                    std::to_string(j) + ")");
      }
  if (unital && !a.contains(CMatrix::identity(n))) throw std::invalid_argument("unital algebra must contain the identity");
  return a;
}

RepresentedAlgebra RepresentedAlgebra::span_of(std::size_t n, const std::vector<CMatrix>& spanning, bool unital) {
  exact::SpanSolver<GaussRational> s(n * n);
  std::vector<CMatrix> basis;
  for (const auto& m : spanning)
    if (s.insert(flatten(m))) basis.push_back(m);
  return make(n, std::move(basis), unital);
}

RepresentedAlgebra RepresentedAlgebra::generated_by(std::size_t n, const std::vector<CMatrix>& generators, bool unital) {
  exact::SpanSolver<GaussRational> s(n * n);
  std::vector<CMatrix> basis;
  auto add = [&](const CMatrix& m) {
    if (s.insert(flatten(m))) basis.push_back(m);
  };
  if (unital) add(CMatrix::identity(n));
  for (const auto& g : generators) add(g);
  for (std::size_t done = 0; done < basis.size(); ++done) {
    for (std::size_t j = 0; j <= done; ++j) {
      add(basis[done] * basis[j]);
      add(basis[j] * basis[done]);
    }
  }
  return make(n, std::move(basis), unital);
}

RepresentedAlgebra RepresentedAlgebra::full_matrix(std::size_t n) {
  std::vector<CMatrix> b;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) b.push_back(CMatrix::unit(n, r, c));
  return make(n, std::move(b), true);
}

RepresentedAlgebra RepresentedAlgebra::upper_triangular(std::size_t n) {
  std::vector<CMatrix> b;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) b.push_back(CMatrix::unit(n, r, c));
  return make(n, std::move(b), true);
}

RepresentedAlgebra RepresentedAlgebra::diagonal(std::size_t n) {
  std::vector<CMatrix> b;
  for (std::size_t r = 0; r < n; ++r) b.push_back(CMatrix::unit(n, r, r));
  return make(n, std::move(b), true);
}

RepresentedAlgebra RepresentedAlgebra::scalars(std::size_t n) { return make(n, {CMatrix::identity(n)}, true); }

bool RepresentedAlgebra::contains(const CMatrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) return false;
  return solver_->contains(flatten(m));
}

std::optional<std::vector<GaussRational>> RepresentedAlgebra::coordinates(const CMatrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) return std::nullopt;
  return solver_->coordinates(flatten(m));
}

CMatrix RepresentedAlgebra::element(const std::vector<GaussRational>& coefficients) const {
  if (coefficients.size() != basis_.size()) throw std::invalid_argument("coefficient count does not match the dimension");
  CMatrix m(n_, n_);
  for (std::size_t k = 0; k < basis_.size(); ++k)
    if (!coefficients[k].is_zero()) m += coefficients[k] * basis_[k];
  return m;
}

bool RepresentedAlgebra::is_commutative() const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = i + 1; j < basis_.size(); ++j)
      if (!(basis_[i] * basis_[j] == basis_[j] * basis_[i])) return false;
  return true;
}

bool RepresentedAlgebra::contains_all(const RepresentedAlgebra& other) const {
  for (const auto& b : other.basis_)
    if (!contains(b)) return false;
  return true;
}

bool RepresentedAlgebra::same_span(const RepresentedAlgebra& other) const {
  return n_ == other.n_ && dimension() == other.dimension() && contains_all(other);
}

// ---------------------------------------------------------------------------

CoreResult core_of(const RepresentedAlgebra& a, const PExponent& p) {
  if (!a.unital()) throw std::invalid_argument("the core is defined for unital algebras");
  const std::size_t n = a.ambient();
  const std::size_t d = a.dimension();
  const auto& basis = a.basis();

  // Unknowns (x_0..x_{d-1}, y_0..y_{d-1}) for the element Σ (x_k + i y_k) B_k.
  // Real and imaginary parts of entry (r, c) are linear forms in them; only
  // positions where some basis matrix is nonzero contribute.
  using SparseRow = std::map<std::size_t, Rational>;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::pair<std::size_t, GaussRational>>> entries;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (!basis[k](r, c).is_zero()) entries[{r, c}].emplace_back(k, basis[k](r, c));
  auto add_re = [&](SparseRow& row, std::size_t r, std::size_t c, const Rational& sign) {
    auto it = entries.find({r, c});
    if (it == entries.end()) return;
    for (const auto& [k, v] : it->second) {
      row[k] += sign * v.re();
      row[d + k] -= sign * v.im();
    }
  };
  auto add_im = [&](SparseRow& row, std::size_t r, std::size_t c, const Rational& sign) {
    auto it = entries.find({r, c});
    if (it == entries.end()) return;
    for (const auto& [k, v] : it->second) {
      row[k] += sign * v.im();
      row[d + k] += sign * v.re();
    }
  };

  std::set<std::vector<std::pair<std::size_t, Rational>>> constraints;
  auto push = [&](const SparseRow& row) {
    std::vector<std::pair<std::size_t, Rational>> compact;
    for (const auto& [k, v] : row)
      if (!v.is_zero()) compact.emplace_back(k, v);
    if (!compact.empty()) constraints.insert(std::move(compact));
  };
  for (const auto& [pos, list] : entries) {
    const auto [r, c] = pos;
    if (!p.is_two()) {
      // Real diagonal: off-diagonal entries vanish, diagonal entries are real.
      SparseRow re, im;
      if (r != c) add_re(re, r, c, Rational(1));
      add_im(im, r, c, Rational(1));
      push(re);
      push(im);
    } else {
      // Self-adjoint: M_rc = conj(M_cr).
      SparseRow re, im;
      add_re(re, r, c, Rational(1));
      add_re(re, c, r, Rational(-1));
      add_im(im, r, c, Rational(1));
      add_im(im, c, r, Rational(1));
      push(re);
      push(im);
    }
  }
  // Reduce to independent rows before the null space solve.
  exact::SpanSolver<Rational> rows(2 * d);
  std::vector<std::vector<Rational>> independent;
  for (const auto& sparse : constraints) {
    std::vector<Rational> row(2 * d);
    for (const auto& [k, v] : sparse) row[k] = v;
    if (rows.insert(row)) independent.push_back(std::move(row));
  }
  exact::QMatrix system(independent.size(), 2 * d);
  for (std::size_t r = 0; r < independent.size(); ++r)
    for (std::size_t c = 0; c < 2 * d; ++c) system(r, c) = independent[r][c];
  auto kernel = exact::nullspace(system);

  CoreResult out{RepresentedAlgebra::scalars(n), {}, false, {}};
  for (const auto& v : kernel) {
    std::vector<GaussRational> coeffs(d);
    for (std::size_t k = 0; k < d; ++k) coeffs[k] = GaussRational(v[k], v[d + k]);
    out.hermitian_basis.push_back(a.element(coeffs));
  }
  // A_h ∩ i A_h = {0}: the real basis stays independent over C.
  std::vector<std::vector<GaussRational>> flat;
  for (const auto& h : out.hermitian_basis) flat.push_back(flatten(h));
  if (exact::rank_of(flat, n * n) != out.hermitian_basis.size()) {
    throw VerificationFailure("hermitian part meets i times itself nontrivially");
  }
  out.core = RepresentedAlgebra::span_of(n, out.hermitian_basis, true);
  out.commutative = out.core.is_commutative();
  out.notes.push_back("representation assumed isometric for the intended norm");
  if (!p.is_two()) {
    out.notes.push_back("hermitian = real diagonal (Lamperti form of exp(ita) for counting measure)");
    if (!out.commutative) throw VerificationFailure("core for p != 2 is not commutative");
  } else {
    out.notes.push_back("hermitian = self-adjoint; commutativity not asserted for p = 2");
  }
  return out;
}

Spectrum spectrum_points(const RepresentedAlgebra& c) {
  if (!c.unital()) throw std::invalid_argument("spectrum requires a unital algebra");
  if (!c.is_commutative()) throw std::invalid_argument("spectrum requires a commutative algebra");
  for (const auto& b : c.basis())
    if (!b.is_diagonal()) throw std::invalid_argument("spectrum requires a diagonal representation");
  const std::size_t n = c.ambient();
  std::map<std::vector<GaussRational>, std::size_t, std::less<>> index;
  Spectrum s;
  s.class_of.assign(n, -1);
  auto key_less = [](const std::vector<GaussRational>& x, const std::vector<GaussRational>& y) {
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] == y[k]) continue;
      if (x[k].re() != y[k].re()) return x[k].re() < y[k].re();
      return x[k].im() < y[k].im();
    }
    return false;
  };
  std::vector<std::vector<GaussRational>> keys;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<GaussRational> sig;
    for (const auto& b : c.basis()) sig.push_back(b(i, i));
    auto it = std::find_if(keys.begin(), keys.end(), [&](const auto& k) { return !key_less(k, sig) && !key_less(sig, k); });
    std::size_t cls;
    if (it == keys.end()) {
      cls = keys.size();
      keys.push_back(sig);
      s.classes.emplace_back();
    } else {
      cls = static_cast<std::size_t>(it - keys.begin());
    }
    s.classes[cls].push_back(i);
    s.class_of[i] = static_cast<int>(cls);
  }
  CMatrix total(n, n);
  for (const auto& cls : s.classes) {
    CMatrix e(n, n);
    for (auto i : cls) e(i, i) = GaussRational(1);
    if (!c.contains(e)) throw VerificationFailure("class indicator is not in the algebra");
    total += e;
    s.idempotents.push_back(std::move(e));
  }
  if (!(total == CMatrix::identity(n))) throw VerificationFailure("minimal idempotents do not sum to the identity");
  return s;
}

std::optional<std::vector<GaussRational>> as_function_on(const Spectrum& s, const CMatrix& m) {
  if (!m.is_diagonal()) return std::nullopt;
  std::vector<GaussRational> values;
  for (const auto& cls : s.classes) {
    const GaussRational& v = m(cls.front(), cls.front());
    for (auto i : cls)
      if (!(m(i, i) == v)) return std::nullopt;
    values.push_back(v);
  }
  return values;
}

// ---------------------------------------------------------------------------

std::string_view verdict_name(DynamicVerdict v) {
  switch (v) {
    case DynamicVerdict::Isometric: return "isometric";
    case DynamicVerdict::Expanding: return "expanding";
    case DynamicVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

HermitianVerdict is_hermitian(const RepresentedAlgebra& alg, const CMatrix& a, const PExponent& p,
                              const HermitianOptions& opts) {
  if (!alg.contains(a)) throw std::invalid_argument("element is not in the algebra's span");
  HermitianVerdict v;
  if (p.is_two()) {
    v.hermitian = adjoint(a) == a;
  } else {
    v.hermitian = a.is_diagonal();
    for (std::size_t i = 0; i < a.rows() && v.hermitian; ++i) v.hermitian = a(i, i).is_real();
  }
  const FMatrix fa = to_floating(a);
  const std::complex<double> iu(0.0, 1.0);
  bool all_isometric = true;
  bool any_expanding = false;
  for (double t : opts.grid) {
    FMatrix e = expm(iu * t * fa);
    NormEstimate est = p_operator_norm(e, p, opts.norm);
    v.evidence.push_back({t, est});
    if (est.lower < 1.0 - opts.tau || est.upper > 1.0 + opts.tau) all_isometric = false;
    if (est.lower > 1.0 + opts.tau) any_expanding = true;
  }
  if (all_isometric) {
    v.dynamic = DynamicVerdict::Isometric;
  } else if (any_expanding) {
    v.dynamic = DynamicVerdict::Expanding;
  }
  return v;
}

}  // namespace lpg
