#pragma once

// Exact symbolic Leavitt algebra L_n, matrices over it, and generator-level
// checks of the homomorphisms M_2 ⊗ L_n <-> F(Z_2 * Z_{n+1}, X) and
// L_{2k} <-> M_2 ⊗ L_{2k}.

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lpg/exact/gaussian.hpp"
#include "lpg/exact/matrix.hpp"
#include "lpg/lp_norms.hpp"

namespace lpg::leavitt {

// Letters +j = s_j and -j = t_j, 1 <= j <= n.
using RawWord = std::vector<int>;
using RawElement = std::map<RawWord, GaussRational>;

// The monomial s_μ t_ν with t_ν = (s_μ)^* = t_{ν_k} ... t_{ν_1}.
struct LeavittWord {
  std::vector<int> mu, nu;

  std::size_t degree() const { return mu.size() + nu.size(); }
  // Not both μ and ν end in n.
  bool is_normal(int n) const;
  RawWord letters() const;
  std::string to_string() const;

  auto operator<=>(const LeavittWord&) const = default;
  bool operator==(const LeavittWord&) const = default;
};

class LeavittElement {
 public:
  explicit LeavittElement(int n);  // zero

  static LeavittElement one(int n);
  static LeavittElement scalar(int n, const GaussRational& c);
  static LeavittElement s(int n, int j);
  static LeavittElement t(int n, int j);
  // c·w for an arbitrary word, reduced.
  static LeavittElement monomial(int n, const LeavittWord& w, const GaussRational& c = GaussRational(1));

  int n() const { return n_; }
  const std::map<LeavittWord, GaussRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t degree() const;
  RawElement raw() const;
  std::string to_string() const;

  LeavittElement& operator+=(const LeavittElement& o);
  LeavittElement& operator-=(const LeavittElement& o);
  friend LeavittElement operator+(LeavittElement a, const LeavittElement& b) { return a += b; }
  friend LeavittElement operator-(LeavittElement a, const LeavittElement& b) { return a -= b; }
  LeavittElement operator-() const;
  friend LeavittElement operator*(const GaussRational& c, const LeavittElement& e);
  friend LeavittElement operator*(const LeavittElement& a, const LeavittElement& b);
  bool operator==(const LeavittElement& o) const { return n_ == o.n_ && terms_ == o.terms_; }

 private:
  friend LeavittElement from_reduced(int n, const RawElement& e);
  void check_same(const LeavittElement& o) const;

  int n_;
  std::map<LeavittWord, GaussRational> terms_;
};

// Rewrites t_j s_k -> δ_jk and s_n t_n -> 1 - Σ_{j<n} s_j t_j to a fixpoint.
LeavittElement normal_form(int n, const RawElement& e);
// Same rules applied in an order drawn from rng; the result is a raw element
// whose words have no redex.
RawElement reduce_randomized(int n, const RawElement& e, std::mt19937_64& rng);
LeavittElement from_reduced(int n, const RawElement& e);

LeavittElement add(const LeavittElement& a, const LeavittElement& b);
LeavittElement multiply(const LeavittElement& a, const LeavittElement& b);

// Sum of terms like "2 s1 t2", "-1/2 s1s2", "i t1", "1". Throws
// std::invalid_argument on malformed input.
LeavittElement parse_element(int n, std::string_view text);

class LeavittMatrix {
 public:
  LeavittMatrix(int n, std::size_t size);

  static LeavittMatrix identity(int n, std::size_t size);
  // e_rs ⊗ x.
  static LeavittMatrix unit(std::size_t size, std::size_t r, std::size_t c, const LeavittElement& x);

  int n() const { return n_; }
  std::size_t size() const { return size_; }
  LeavittElement& operator()(std::size_t r, std::size_t c) { return entries_[r * size_ + c]; }
  const LeavittElement& operator()(std::size_t r, std::size_t c) const { return entries_[r * size_ + c]; }
  bool is_zero() const;
  std::string to_string() const;

  LeavittMatrix& operator+=(const LeavittMatrix& o);
  friend LeavittMatrix operator+(LeavittMatrix a, const LeavittMatrix& b) { return a += b; }
  friend LeavittMatrix operator-(const LeavittMatrix& a, const LeavittMatrix& b);
  friend LeavittMatrix operator*(const LeavittMatrix& a, const LeavittMatrix& b);
  bool operator==(const LeavittMatrix& o) const = default;

 private:
  void check_same(const LeavittMatrix& o) const;

  int n_;
  std::size_t size_;
  std::vector<LeavittElement> entries_;
};

LeavittMatrix power(const LeavittMatrix& m, unsigned k);

struct IdentityCheck {
  std::string name;
  bool holds = false;
  std::string difference;  // normal form of lhs - rhs when it fails
};

struct LeavittReport {
  std::vector<IdentityCheck> checks;

  bool passed() const;
  std::vector<const IdentityCheck*> failures() const;
  void expect_equal(std::string name, const LeavittMatrix& lhs, const LeavittMatrix& rhs);
  void expect(std::string name, bool holds, std::string detail = {});
  void append(const LeavittReport& other);
};

// T_j S_k = δ_jk I and Σ S_j T_j = I.
LeavittReport check_cuntz_relations(const std::vector<LeavittMatrix>& S, const std::vector<LeavittMatrix>& T);

struct AbsorptionGenerators {
  int k = 0;
  std::vector<LeavittMatrix> x, y;  // x_1..x_2k and y_1..y_2k in M_2(L_2k)
};

AbsorptionGenerators absorption_generators(int k);
// Cuntz relations for x, y plus explicit words in x, y for e_rs ⊗ 1,
// e_11 ⊗ s_j and e_11 ⊗ t_j.
LeavittReport verify_matrix_absorption(const AbsorptionGenerators& g);
LeavittReport verify_matrix_absorption(int k);

struct CovariantGenerators {
  int n = 0;
  LeavittMatrix a{2, 2}, b{2, 2}, f{2, 2};  // ψ(a), ψ(b), ψ(f) in M_2(L_n)
};

CovariantGenerators covariant_generators(int n);
// The φ-words of the 2n + 4 generators of M_2 ⊗ L_n, as (name, generator,
// image under ψ of the φ-word).
struct GeneratorImage {
  std::string name;
  LeavittMatrix generator;
  LeavittMatrix image;
};
std::vector<GeneratorImage> psi_of_phi(const CovariantGenerators& g);
// a² = I, b^{n+1} = I, f² = f, f + afa = I, Σ_k b^k f b^{-k} = I, b^k ≠ I
// for 1 <= k <= n, and ψ∘φ = id on generators.
LeavittReport verify_covariant_presentation(const CovariantGenerators& g);
LeavittReport verify_covariant_presentation(int n);

// Replaces entry (r, c) of the named generator ("a", "b", "f", "x3", "y2").
void mutate(CovariantGenerators& g, const std::string& name, std::size_t r, std::size_t c, const LeavittElement& value);
void mutate(AbsorptionGenerators& g, const std::string& name, std::size_t r, std::size_t c, const LeavittElement& value);

// s_j, t_j on ℓ^p of the words of length <= L.
class TruncatedModel {
 public:
  TruncatedModel(int n, std::size_t depth);

  int n() const { return n_; }
  std::size_t depth() const { return depth_; }
  const std::vector<std::vector<int>>& words() const { return words_; }
  std::size_t index(const std::vector<int>& w) const { return index_.at(w); }

  // Dense matrices, built on demand.
  CMatrix s(int j) const;
  CMatrix t(int j) const;
  CMatrix represent(const LeavittElement& e) const;
  // ρ(e) e_w computed word by word.
  std::map<std::vector<int>, GaussRational> apply(const LeavittElement& e, const std::vector<int>& w) const;
  // Letters applied right to left; nullopt when the vector is killed.
  std::optional<std::vector<int>> apply_raw(const RawWord& letters, std::vector<int> w) const;

 private:
  int n_;
  std::size_t depth_;
  std::vector<std::vector<int>> words_;
  std::map<std::vector<int>, std::size_t> index_;
};

struct TruncatedReport {
  // Lengths ℓ such that the relation holds on span{e_w : |w| = ℓ}.
  std::vector<std::size_t> orthogonality_lengths;  // t_j s_k = δ_jk
  std::vector<std::size_t> completeness_lengths;   // Σ s_j t_j = 1
  bool spatial = false;          // each column of s_j, t_j has at most one entry, equal to 1
  double max_generator_norm = 0; // max p-norm upper bound over s_j, t_j
};

TruncatedReport truncated_report(const TruncatedModel& m, const PExponent& p);

// Normal-form monomials with |μ| + |ν| <= d.
std::vector<LeavittWord> normal_monomials(int n, std::size_t d);

}  // namespace lpg::leavitt
