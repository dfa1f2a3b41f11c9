#include "lpg/weyl.hpp"

#include <algorithm>
#include <set>

namespace lpg {

std::string_view condition_name(AdmissibilityCondition c) {
  switch (c) {
    case AdmissibilityCondition::None: return "none";
    case AdmissibilityCondition::Positivity: return "condition (1): a f b, b f a in C(X)_+";
    case AdmissibilityCondition::Supports: return "condition (2): U, V from ba, ab";
    case AdmissibilityCondition::Realization: return "condition (3): f(alpha(x)) ba(x) = b f a(x)";
  }
  return "unknown";
}

namespace detail {
std::string describe_point_set(const std::vector<int>& pts) {
  std::string s = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? "," : "") + std::to_string(pts[i]);
  return s + "}";
}
}  // namespace detail

std::optional<std::vector<GaussRational>> GroupoidModel::as_function(const ConvElement& e) const {
  if (!e.supported_on_units()) return std::nullopt;
  std::vector<GaussRational> v;
  for (Arrow x : groupoid->units()) v.push_back(e[x]);
  return v;
}

void GroupoidModel::require_member(const ConvElement& e) const {
  if (e.groupoid_ptr() != groupoid && !(e.groupoid() == *groupoid)) {
    throw std::invalid_argument("element does not belong to this groupoid algebra");
  }
}

MatrixModel MatrixModel::from_algebra(const RepresentedAlgebra& alg, const PExponent& p) {
  CoreResult core = core_of(alg, p);
  MatrixModel m;
  m.algebra = std::make_shared<const RepresentedAlgebra>(alg);
  m.spectrum = spectrum_points(core.core);
  return m;
}

void MatrixModel::require_member(const CMatrix& e) const {
  if (!algebra->contains(e)) throw std::invalid_argument("element is not in the algebra");
}

GroupoidPair pair_from_bisection(const GroupoidModel& m, const Bisection& s, const std::optional<std::vector<Rational>>& h) {
  const FiniteGroupoid& g = *m.groupoid;
  if (!is_bisection(g, s.arrows)) throw std::invalid_argument("arrows do not form a bisection");
  std::vector<Rational> weight(g.unit_count(), Rational(1));
  if (h) {
    if (h->size() != g.unit_count()) throw std::invalid_argument("weight must have one value per unit");
    weight = *h;
  }
  std::vector<GaussRational> a(g.size()), b(g.size());
  for (Arrow gamma : s.arrows) {
    const Rational& w = weight[g.unit_index(g.dom(gamma))];
    if (w.sign() <= 0) throw std::invalid_argument("weight must be strictly positive on dom(S)");
    a[static_cast<std::size_t>(gamma)] = GaussRational(w);
    // b(γ⁻¹) = h(ran γ⁻¹) = h(dom γ).
    b[static_cast<std::size_t>(g.inverse(gamma))] = GaussRational(w);
  }
  GroupoidPair pair{ConvElement(m.groupoid, std::move(a)), ConvElement(m.groupoid, std::move(b)), std::nullopt};
  auto chk = check_admissible(m, pair.a, pair.b);
  if (!chk) throw VerificationFailure("pair built from a bisection was rejected: " + chk.detail);
  if (!(chk.homeo->alpha == bisection_action(g, s))) throw VerificationFailure("pair does not realize beta_S");
  for (Arrow gamma : s.arrows) {
    const std::size_t x = g.unit_index(g.dom(gamma));
    if (!(chk.homeo->ba[x] == GaussRational(weight[x] * weight[x]))) throw VerificationFailure("ba differs from h^2");
  }
  pair.realized = std::move(chk.homeo);
  return pair;
}

Bisection bisection_from_pair(const GroupoidModel& m, const GroupoidPair& s) {
  const FiniteGroupoid& g = *m.groupoid;
  if (!is_principal(g)) throw std::invalid_argument("bisection_from_pair requires a principal groupoid");
  RealizedHomeo homeo;
  if (s.realized) {
    homeo = *s.realized;
  } else {
    auto chk = check_admissible(m, s.a, s.b);
    if (!chk) throw std::invalid_argument("pair is not admissible: " + chk.detail);
    homeo = *chk.homeo;
  }
  std::vector<Arrow> arrows;
  for (Arrow gamma = 0; gamma < static_cast<Arrow>(g.size()); ++gamma) {
    const GaussRational prod = s.a[gamma] * s.b[g.inverse(gamma)];
    if (!prod.is_nonneg_real()) throw VerificationFailure("claim 1 fails: a(gamma) b(gamma^-1) is not >= 0");
    if (!s.a[gamma].is_zero() && !s.b[g.inverse(gamma)].is_zero()) arrows.push_back(gamma);
  }
  if (!is_bisection(g, arrows)) throw VerificationFailure("support set is not a bisection");
  Bisection S = make_bisection(g, arrows);
  PartialBijection beta = bisection_action(g, S);
  if (beta.domain() != homeo.U) throw VerificationFailure("claim 4 fails: dom(S) differs from U_s");
  if (!(beta == homeo.alpha)) throw VerificationFailure("claim 3 fails: beta_S differs from alpha_s");
  return S;
}

WeylResult weyl_groupoid(const FiniteGroupoid& g, const PExponent& p, const WeylOptions& opts) {
  p.require_not_two("Weyl groupoid");
  GroupoidCore core = core_of_groupoid_algebra(g, p);
  if (spectrum_points(core.unit_functions).size() != g.unit_count()) {
    throw VerificationFailure("spectrum of the core is not the unit space");
  }
  GroupoidModel model{std::make_shared<const FiniteGroupoid>(g)};
  std::vector<Bisection> bis = enumerate_bisections(g, opts.max_bisections);
  std::vector<PartialBijection> maps(bis.size());
  kernels::for_each_index(bis.size(), opts.policy, [&](std::size_t i) {
    maps[i] = pair_from_bisection(model, bis[i]).realized->alpha;
  });
  std::set<PartialBijection> distinct(maps.begin(), maps.end());

  WeylResult out{germ_groupoid(g.unit_count(), std::vector<PartialBijection>(distinct.begin(), distinct.end())), bis.size(),
                 distinct.size(), is_principal(g), std::nullopt};
  if (!is_principal(out.germs.groupoid)) throw VerificationFailure("germ groupoid is not principal");
  if (out.principal) {
    auto iso = find_isomorphism(out.germs.groupoid, g, opts.isomorphism_node_limit);
    if (!iso.map) throw VerificationFailure("Weyl groupoid is not isomorphic to the principal groupoid");
    out.isomorphism = std::move(iso.map);
  }
  return out;
}

}  // namespace lpg
