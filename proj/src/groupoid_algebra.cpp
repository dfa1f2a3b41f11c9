#include "lpg/groupoid_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lpg/errors.hpp"

namespace lpg {

ConvElement::ConvElement(std::shared_ptr<const FiniteGroupoid> g, std::vector<GaussRational> coefficients)
    : g_(std::move(g)), c_(std::move(coefficients)) {
  if (!g_) throw std::invalid_argument("convolution element needs a groupoid");
  if (c_.size() != g_->size()) throw std::invalid_argument("coefficient vector does not match the arrow count");
}

ConvElement ConvElement::zero(std::shared_ptr<const FiniteGroupoid> g) {
  const std::size_t n = g->size();
  return ConvElement(std::move(g), std::vector<GaussRational>(n));
}

ConvElement ConvElement::delta(std::shared_ptr<const FiniteGroupoid> g, Arrow a) {
  if (a < 0 || static_cast<std::size_t>(a) >= g->size()) throw std::invalid_argument("arrow out of range");
  ConvElement e = zero(std::move(g));
  e.c_[static_cast<std::size_t>(a)] = GaussRational(1);
  return e;
}

ConvElement ConvElement::unit(std::shared_ptr<const FiniteGroupoid> g) {
  ConvElement e = zero(g);
  for (Arrow x : g->units()) e.c_[static_cast<std::size_t>(x)] = GaussRational(1);
  return e;
}

ConvElement ConvElement::on_units(std::shared_ptr<const FiniteGroupoid> g, const std::vector<GaussRational>& values) {
  if (values.size() != g->unit_count()) throw std::invalid_argument("one value per unit expected");
  ConvElement e = zero(g);
  for (std::size_t i = 0; i < values.size(); ++i) e.c_[static_cast<std::size_t>(g->units()[i])] = values[i];
  return e;
}

std::vector<Arrow> ConvElement::support() const {
  std::vector<Arrow> out;
  for (std::size_t a = 0; a < c_.size(); ++a)
    if (!c_[a].is_zero()) out.push_back(static_cast<Arrow>(a));
  return out;
}

bool ConvElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const GaussRational& z) { return z.is_zero(); });
}

bool ConvElement::supported_on_units() const {
  for (std::size_t a = 0; a < c_.size(); ++a)
    if (!c_[a].is_zero() && !g_->is_unit(static_cast<Arrow>(a))) return false;
  return true;
}

void ConvElement::check_same(const ConvElement& o) const {
  if (g_ != o.g_ && !(*g_ == *o.g_)) throw std::invalid_argument("elements live on different groupoids");
}

ConvElement& ConvElement::operator+=(const ConvElement& o) {
  check_same(o);
  for (std::size_t a = 0; a < c_.size(); ++a) c_[a] += o.c_[a];
  return *this;
}

ConvElement& ConvElement::operator-=(const ConvElement& o) {
  check_same(o);
  for (std::size_t a = 0; a < c_.size(); ++a) c_[a] -= o.c_[a];
  return *this;
}

ConvElement operator*(const GaussRational& s, ConvElement a) {
  for (auto& z : a.c_) z *= s;
  return a;
}

bool operator==(const ConvElement& a, const ConvElement& b) {
  return (a.g_ == b.g_ || *a.g_ == *b.g_) && a.c_ == b.c_;
}

ConvElement convolve(const ConvElement& f, const ConvElement& g) {
  if (f.groupoid_ptr() != g.groupoid_ptr() && !(f.groupoid() == g.groupoid())) {
    throw std::invalid_argument("convolution of elements on different groupoids");
  }
  const FiniteGroupoid& G = f.groupoid();
  ConvElement out = ConvElement::zero(f.groupoid_ptr());
  std::vector<GaussRational> acc(G.size());
  const auto fs = f.support();
  const auto gs = g.support();
  for (Arrow a : fs)
    for (Arrow s : gs) {
      if (!G.composable(a, s)) continue;
      acc[static_cast<std::size_t>(G.compose(a, s))] += f[a] * g[s];
    }
  return ConvElement(f.groupoid_ptr(), std::move(acc));
}

ConvElement convolve_by_definition(const ConvElement& f, const ConvElement& g) {
  const FiniteGroupoid& G = f.groupoid();
  std::vector<GaussRational> acc(G.size());
  for (Arrow gamma = 0; gamma < static_cast<Arrow>(G.size()); ++gamma) {
    for (Arrow sigma : G.source_fiber(G.dom(gamma))) {
      acc[static_cast<std::size_t>(gamma)] += f[G.compose(gamma, G.inverse(sigma))] * g[sigma];
    }
  }
  return ConvElement(f.groupoid_ptr(), std::move(acc));
}

double sup_norm(const ConvElement& f) {
  double best = 0.0;
  for (const auto& z : f.coefficients()) best = std::max(best, std::abs(z.to_complex()));
  return best;
}

double i_norm(const ConvElement& f) {
  const FiniteGroupoid& G = f.groupoid();
  double best = 0.0;
  for (Arrow x : G.units()) {
    double range_sum = 0.0, source_sum = 0.0;
    for (Arrow s : G.range_fiber(x)) range_sum += std::abs(f[s].to_complex());
    for (Arrow s : G.source_fiber(x)) source_sum += std::abs(f[s].to_complex());
    best = std::max({best, range_sum, source_sum});
  }
  return best;
}

RegularRep regular_representation(const ConvElement& f, Arrow x) {
  const FiniteGroupoid& G = f.groupoid();
  if (x < 0 || static_cast<std::size_t>(x) >= G.size() || !G.is_unit(x)) {
    throw std::invalid_argument("regular representation needs a unit");
  }
  RegularRep rep;
  rep.unit = x;
  rep.index = G.source_fiber(x);
  const std::size_t n = rep.index.size();
  rep.matrix = CMatrix(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      rep.matrix(r, c) = f[G.compose(rep.index[r], G.inverse(rep.index[c]))];
    }
  return rep;
}

CMatrix direct_sum_representation(const ConvElement& f) {
  std::vector<CMatrix> blocks;
  for (Arrow x : f.groupoid().units()) blocks.push_back(regular_representation(f, x).matrix);
  return exact::block_diagonal(blocks);
}

NormEstimate lambda_norm(const ConvElement& f, const PExponent& p, const NormOptions& opts) {
  const auto& units = f.groupoid().units();
  std::vector<NormEstimate> blocks(units.size());
  NormOptions inner = opts;
  inner.policy = ExecutionPolicy::Serial;
  kernels::for_each_index(units.size(), opts.policy, [&](std::size_t i) {
    blocks[i] = p_operator_norm(regular_representation(f, units[i]).matrix, p, inner);
  });
  NormEstimate out = blocks.front();
  for (const auto& b : blocks) {
    out.lower = std::max(out.lower, b.lower);
    if (b.upper > out.upper) {
      out.upper = b.upper;
      out.method = b.method;
    }
  }
  return out;
}

namespace {

std::size_t position_in(const std::vector<Arrow>& index, Arrow a) {
  auto it = std::find(index.begin(), index.end(), a);
  if (it == index.end()) throw std::logic_error("arrow not in fiber");
  return static_cast<std::size_t>(it - index.begin());
}

}  // namespace

std::vector<GaussRational> j_map(const ConvElement& a) {
  const FiniteGroupoid& G = a.groupoid();
  std::vector<RegularRep> reps;
  for (Arrow x : G.units()) reps.push_back(regular_representation(a, x));
  std::vector<GaussRational> j(G.size());
  for (Arrow gamma = 0; gamma < static_cast<Arrow>(G.size()); ++gamma) {
    const RegularRep& rep = reps[G.unit_index(G.dom(gamma))];
    // ⟨π_x(a) δ_x, δ_γ⟩ is the (γ, x) entry.
    j[static_cast<std::size_t>(gamma)] = rep.matrix(position_in(rep.index, gamma), position_in(rep.index, rep.unit));
  }
  if (j != a.coefficients()) throw VerificationFailure("j does not reproduce the coefficients");
  return j;
}

std::vector<GaussRational> left_slice(const ConvElement& a, Arrow x) {
  RegularRep rep = regular_representation(a, x);
  const std::size_t col = position_in(rep.index, x);
  std::vector<GaussRational> out;
  for (std::size_t r = 0; r < rep.index.size(); ++r) out.push_back(rep.matrix(r, col));
  return out;
}

std::vector<GaussRational> right_slice(const ConvElement& a, Arrow x) {
  RegularRep rep = regular_representation(a, x);
  const std::size_t row = position_in(rep.index, x);
  std::vector<GaussRational> out;
  for (std::size_t c = 0; c < rep.index.size(); ++c) out.push_back(rep.matrix(row, c));
  return out;
}

ConvElement conditional_expectation(const ConvElement& a) {
  auto j = j_map(a);
  const FiniteGroupoid& G = a.groupoid();
  for (Arrow g = 0; g < static_cast<Arrow>(G.size()); ++g)
    if (!G.is_unit(g)) j[static_cast<std::size_t>(g)] = GaussRational(0);
  return ConvElement(a.groupoid_ptr(), std::move(j));
}

RepresentedAlgebra groupoid_algebra(const FiniteGroupoid& g) {
  auto gp = std::make_shared<const FiniteGroupoid>(g);
  std::vector<CMatrix> basis;
  for (Arrow a = 0; a < static_cast<Arrow>(g.size()); ++a) basis.push_back(direct_sum_representation(ConvElement::delta(gp, a)));
  std::size_t n = 0;
  for (Arrow x : g.units()) n += g.source_fiber(x).size();
  return RepresentedAlgebra::make(n, std::move(basis), true);
}

GroupoidCore core_of_groupoid_algebra(const FiniteGroupoid& g, const PExponent& p) {
  p.require_not_two("core of a groupoid algebra");
  RepresentedAlgebra alg = groupoid_algebra(g);
  CoreResult core = core_of(alg, p);
  auto gp = std::make_shared<const FiniteGroupoid>(g);
  std::vector<CMatrix> indicators;
  for (Arrow x : g.units()) indicators.push_back(direct_sum_representation(ConvElement::delta(gp, x)));
  RepresentedAlgebra units = RepresentedAlgebra::make(alg.ambient(), std::move(indicators), true);
  if (!core.core.same_span(units)) throw VerificationFailure("core differs from the functions on the unit space");
  return {std::move(core), std::move(units)};
}

}  // namespace lpg
