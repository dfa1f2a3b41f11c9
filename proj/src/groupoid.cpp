#include "lpg/groupoid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "lpg/errors.hpp"

namespace lpg {

std::string_view axiom_name(Axiom a) {
  switch (a) {
    case Axiom::TableShape: return "table-shape";
    case Axiom::DomRanInUnits: return "dom-ran-in-units";
    case Axiom::UnitFixedPoints: return "unit-fixed-points";
    case Axiom::ComposabilityDomain: return "composability-domain";
    case Axiom::ComposeDomRan: return "compose-dom-ran";
    case Axiom::InverseInvolution: return "inverse-involution";
    case Axiom::InverseDomRan: return "inverse-dom-ran";
    case Axiom::DomainIsInverseProduct: return "dom-equals-inverse-times-arrow";
    case Axiom::RangeIsProductInverse: return "ran-equals-arrow-times-inverse";
    case Axiom::UnitsAreIdempotentSelfInverse: return "units-are-idempotent-self-inverse";
    case Axiom::Associativity: return "associativity";
    case Axiom::Cancellation: return "cancellation";
  }
  return "unknown";
}

namespace {

std::string witness_text(const std::vector<Arrow>& w) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? ", " : "") << w[i];
  os << ")";
  return os.str();
}

[[noreturn]] void fail(Axiom a, std::vector<Arrow> w, const std::string& detail) {
  throw GroupoidAxiomError(a, std::move(w), detail);
}

}  // namespace

GroupoidAxiomError::GroupoidAxiomError(Axiom axiom, std::vector<Arrow> witnesses, const std::string& detail)
    : std::runtime_error("groupoid axiom '" + std::string(axiom_name(axiom)) + "' violated at arrows " +
                         witness_text(witnesses) + (detail.empty() ? "" : ": " + detail)),
      axiom_(axiom),
      witnesses_(std::move(witnesses)) {}

FiniteGroupoid::FiniteGroupoid(GroupoidTables t) : t_(std::move(t)) {
  const std::size_t n = t_.arrows;
  unit_index_.assign(n, -1);
  for (std::size_t g = 0; g < n; ++g) {
    if (t_.dom[g] == static_cast<Arrow>(g)) {
      unit_index_[g] = static_cast<std::int32_t>(units_.size());
      units_.push_back(static_cast<Arrow>(g));
    }
  }
  source_.resize(units_.size());
  range_.resize(units_.size());
  for (std::size_t g = 0; g < n; ++g) {
    source_[static_cast<std::size_t>(unit_index_[static_cast<std::size_t>(t_.dom[g])])].push_back(static_cast<Arrow>(g));
    range_[static_cast<std::size_t>(unit_index_[static_cast<std::size_t>(t_.ran[g])])].push_back(static_cast<Arrow>(g));
  }
}

std::size_t FiniteGroupoid::unit_index(Arrow unit) const {
  if (unit < 0 || static_cast<std::size_t>(unit) >= t_.arrows || unit_index_[static_cast<std::size_t>(unit)] < 0) {
    throw std::invalid_argument("arrow " + std::to_string(unit) + " is not a unit");
  }
  return static_cast<std::size_t>(unit_index_[static_cast<std::size_t>(unit)]);
}

bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  return a.t_.arrows == b.t_.arrows && a.t_.dom == b.t_.dom && a.t_.ran == b.t_.ran &&
         a.t_.inverse == b.t_.inverse && a.t_.compose == b.t_.compose;
}

FiniteGroupoid FiniteGroupoid::validate(GroupoidTables t) {
  const std::size_t n = t.arrows;
  const auto N = static_cast<Arrow>(n);
  if (n == 0) fail(Axiom::TableShape, {}, "a groupoid needs at least one arrow");
  if (t.dom.size() != n || t.ran.size() != n || t.inverse.size() != n || t.compose.size() != n * n) {
    fail(Axiom::TableShape, {}, "table sizes do not match the arrow count");
  }
  if (t.labels.empty()) {
    for (std::size_t g = 0; g < n; ++g) t.labels.push_back("a" + std::to_string(g));
  }
  if (t.labels.size() != n) fail(Axiom::TableShape, {}, "label count does not match the arrow count");
  auto in_range = [N](Arrow a) { return a >= 0 && a < N; };
  for (Arrow g = 0; g < N; ++g) {
    auto gi = static_cast<std::size_t>(g);
    if (!in_range(t.dom[gi]) || !in_range(t.ran[gi]) || !in_range(t.inverse[gi])) {
      fail(Axiom::TableShape, {g}, "dom/ran/inverse entry out of range");
    }
    for (Arrow h = 0; h < N; ++h) {
      Arrow c = t.compose[gi * n + static_cast<std::size_t>(h)];
      if (c != kNoArrow && !in_range(c)) fail(Axiom::TableShape, {g, h}, "composition entry out of range");
    }
  }
  auto dom = [&](Arrow g) { return t.dom[static_cast<std::size_t>(g)]; };
  auto ran = [&](Arrow g) { return t.ran[static_cast<std::size_t>(g)]; };
  auto inv = [&](Arrow g) { return t.inverse[static_cast<std::size_t>(g)]; };
  auto mul = [&](Arrow g, Arrow h) { return t.compose[static_cast<std::size_t>(g) * n + static_cast<std::size_t>(h)]; };
  auto is_unit = [&](Arrow g) { return dom(g) == g; };

  for (Arrow g = 0; g < N; ++g) {
    if (!is_unit(dom(g)) || !is_unit(ran(g))) fail(Axiom::DomRanInUnits, {g}, "dom or ran is not a unit");
  }
  for (Arrow u = 0; u < N; ++u) {
    if (is_unit(u) && ran(u) != u) fail(Axiom::UnitFixedPoints, {u}, "unit with ran(u) != u");
  }
  for (Arrow g = 0; g < N; ++g)
    for (Arrow h = 0; h < N; ++h) {
      bool defined = mul(g, h) != kNoArrow;
      if (defined != (dom(g) == ran(h))) {
        fail(Axiom::ComposabilityDomain, {g, h},
             defined ? "composition defined on a non-matching pair" : "composition undefined on a matching pair");
      }
      if (defined && (dom(mul(g, h)) != dom(h) || ran(mul(g, h)) != ran(g))) {
        fail(Axiom::ComposeDomRan, {g, h}, "dom(gh) != dom(h) or ran(gh) != ran(g)");
      }
    }
  for (Arrow g = 0; g < N; ++g) {
    if (inv(inv(g)) != g) fail(Axiom::InverseInvolution, {g}, "(g^-1)^-1 != g");
    if (dom(inv(g)) != ran(g) || ran(inv(g)) != dom(g)) fail(Axiom::InverseDomRan, {g}, "inverse swaps dom and ran");
  }
  for (Arrow g = 0; g < N; ++g) {
    if (mul(inv(g), g) != dom(g)) fail(Axiom::DomainIsInverseProduct, {g}, "g^-1 g != dom(g)");
    if (mul(g, inv(g)) != ran(g)) fail(Axiom::RangeIsProductInverse, {g}, "g g^-1 != ran(g)");
  }
  for (Arrow g = 0; g < N; ++g) {
    bool idem_self_inverse = dom(g) == ran(g) && mul(g, g) == g && inv(g) == g;
    if (idem_self_inverse != is_unit(g)) {
      fail(Axiom::UnitsAreIdempotentSelfInverse, {g},
           is_unit(g) ? "unit that is not idempotent and self-inverse" : "idempotent self-inverse arrow that is not a unit");
    }
  }
  for (Arrow g = 0; g < N; ++g)
    for (Arrow h = 0; h < N; ++h) {
      Arrow gh = mul(g, h);
      if (gh == kNoArrow) continue;
      for (Arrow k = 0; k < N; ++k) {
        Arrow hk = mul(h, k);
        if (hk == kNoArrow) continue;
        if (mul(gh, k) != mul(g, hk)) fail(Axiom::Associativity, {g, h, k}, "(gh)k != g(hk)");
      }
    }
  for (Arrow g = 0; g < N; ++g)
    for (Arrow h = 0; h < N; ++h) {
      Arrow gh = mul(g, h);
      if (gh == kNoArrow) continue;
      if (mul(inv(g), gh) != h) fail(Axiom::Cancellation, {g, h}, "g^-1(gh) != h");
      if (mul(gh, inv(h)) != g) fail(Axiom::Cancellation, {g, h}, "(gh)h^-1 != g");
    }
  return FiniteGroupoid(std::move(t));
}

// ---------------------------------------------------------------------------

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table, std::vector<std::string> names) {
  const std::size_t n = table.size();
  if (n == 0) throw std::invalid_argument("group table is empty");
  for (const auto& row : table) {
    if (row.size() != n) throw std::invalid_argument("group table is not square");
    for (int v : row)
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw std::invalid_argument("group table entry out of range");
  }
  FiniteGroup grp;
  grp.table_ = std::move(table);
  int e = -1;
  for (std::size_t a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (std::size_t b = 0; b < n && ok; ++b)
      ok = grp.table_[a][b] == static_cast<int>(b) && grp.table_[b][a] == static_cast<int>(b);
    if (ok) e = static_cast<int>(a);
  }
  if (e < 0) throw std::invalid_argument("group table has no identity element");
  grp.identity_ = e;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (grp.table_[static_cast<std::size_t>(grp.table_[a][b])][c] != grp.table_[a][static_cast<std::size_t>(grp.table_[b][c])]) {
          throw std::invalid_argument("group table is not associative at (" + std::to_string(a) + ", " +
                                      std::to_string(b) + ", " + std::to_string(c) + ")");
        }
  grp.inverse_.assign(n, -1);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (grp.table_[a][b] == e && grp.table_[b][a] == e) grp.inverse_[a] = static_cast<int>(b);
    if (grp.inverse_[a] < 0) throw std::invalid_argument("element " + std::to_string(a) + " has no inverse");
  }
  if (names.empty()) {
    for (std::size_t a = 0; a < n; ++a) names.push_back("g" + std::to_string(a));
  }
  if (names.size() != n) throw std::invalid_argument("group element name count mismatch");
  grp.names_ = std::move(names);
  return grp;
}

GroupAction GroupAction::make(FiniteGroup group, std::size_t points, std::vector<std::vector<int>> perms) {
  if (perms.size() != group.order()) throw std::invalid_argument("need one permutation per group element");
  for (const auto& p : perms) {
    if (p.size() != points) throw std::invalid_argument("permutation length does not match the point count");
    std::vector<bool> seen(points, false);
    for (int v : p) {
      if (v < 0 || static_cast<std::size_t>(v) >= points || seen[static_cast<std::size_t>(v)]) {
        throw std::invalid_argument("action map is not a permutation");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
  }
  const int n = static_cast<int>(group.order());
  for (int x = 0; x < static_cast<int>(points); ++x) {
    if (perms[static_cast<std::size_t>(group.identity())][static_cast<std::size_t>(x)] != x) {
      throw std::invalid_argument("identity element does not act trivially");
    }
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (std::size_t x = 0; x < points; ++x) {
        int lhs = perms[static_cast<std::size_t>(group.mul(g, h))][x];
        int rhs = perms[static_cast<std::size_t>(g)][static_cast<std::size_t>(perms[static_cast<std::size_t>(h)][x])];
        if (lhs != rhs) {
          throw std::invalid_argument("action is not a homomorphism at (" + std::to_string(g) + ", " +
                                      std::to_string(h) + ")");
        }
      }
  GroupAction a;
  a.group_ = std::move(group);
  a.points_ = points;
  a.perms_ = std::move(perms);
  return a;
}

std::vector<int> GroupAction::orbit_ids() const {
  std::vector<int> id(points_, -1);
  for (std::size_t x = 0; x < points_; ++x) {
    if (id[x] >= 0) continue;
    for (std::size_t g = 0; g < group_.order(); ++g) id[static_cast<std::size_t>(perms_[g][x])] = static_cast<int>(x);
  }
  return id;
}

bool GroupAction::is_free() const {
  for (std::size_t g = 0; g < group_.order(); ++g) {
    if (static_cast<int>(g) == group_.identity()) continue;
    for (std::size_t x = 0; x < points_; ++x)
      if (perms_[g][x] == static_cast<int>(x)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

PartialBijection PartialBijection::identity(std::size_t n) {
  PartialBijection p{n, std::vector<int>(n)};
  std::iota(p.image.begin(), p.image.end(), 0);
  return p;
}

PartialBijection PartialBijection::empty(std::size_t n) { return {n, std::vector<int>(n, -1)}; }

PartialBijection PartialBijection::from_image(std::vector<int> image) {
  const std::size_t n = image.size();
  std::vector<bool> hit(n, false);
  for (int v : image) {
    if (v < 0) continue;
    if (static_cast<std::size_t>(v) >= n || hit[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("partial map is not injective into the point set");
    }
    hit[static_cast<std::size_t>(v)] = true;
  }
  return {n, std::move(image)};
}

std::vector<int> PartialBijection::domain() const {
  std::vector<int> d;
  for (std::size_t x = 0; x < n; ++x)
    if (image[x] >= 0) d.push_back(static_cast<int>(x));
  return d;
}

std::vector<int> PartialBijection::range() const {
  std::vector<int> r;
  for (int v : image)
    if (v >= 0) r.push_back(v);
  std::sort(r.begin(), r.end());
  return r;
}

PartialBijection PartialBijection::after(const PartialBijection& inner) const {
  if (inner.n != n) throw std::invalid_argument("partial bijections on different sets");
  PartialBijection out = empty(n);
  for (std::size_t x = 0; x < n; ++x) {
    int y = inner.image[x];
    if (y >= 0) out.image[x] = image[static_cast<std::size_t>(y)];
  }
  return out;
}

PartialBijection PartialBijection::inverse() const {
  PartialBijection out = empty(n);
  for (std::size_t x = 0; x < n; ++x)
    if (image[x] >= 0) out.image[static_cast<std::size_t>(image[x])] = static_cast<int>(x);
  return out;
}

PartialBijection PartialBijection::restricted_to(const std::vector<bool>& keep) const {
  PartialBijection out = *this;
  for (std::size_t x = 0; x < n; ++x)
    if (!keep[x]) out.image[x] = -1;
  return out;
}

std::string PartialBijection::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (std::size_t x = 0; x < n; ++x) {
    if (image[x] < 0) continue;
    os << (first ? "" : ", ") << x << "->" << image[x];
    first = false;
  }
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------

FiniteGroupoid transformation_groupoid(const GroupAction& action) {
  const FiniteGroup& grp = action.group();
  const std::size_t m = action.points();
  const std::size_t n = grp.order() * m;
  GroupoidTables t;
  t.arrows = n;
  t.dom.resize(n);
  t.ran.resize(n);
  t.inverse.resize(n);
  t.compose.assign(n * n, kNoArrow);
  const int e = grp.identity();
  for (int g = 0; g < static_cast<int>(grp.order()); ++g)
    for (int x = 0; x < static_cast<int>(m); ++x) {
      auto a = static_cast<std::size_t>(transformation_arrow(action, g, x));
      t.dom[a] = transformation_arrow(action, e, x);
      t.ran[a] = transformation_arrow(action, e, action.act(g, x));
      // (g, x)^{-1} = (g^{-1}, σ_g(x))
      t.inverse[a] = transformation_arrow(action, grp.inverse(g), action.act(g, x));
      t.labels.push_back("(" + grp.name(g) + "," + std::to_string(x) + ")");
    }
  // (g, σ_h(x)) (h, x) = (gh, x)
  for (int g = 0; g < static_cast<int>(grp.order()); ++g)
    for (int h = 0; h < static_cast<int>(grp.order()); ++h)
      for (int x = 0; x < static_cast<int>(m); ++x) {
        auto left = static_cast<std::size_t>(transformation_arrow(action, g, action.act(h, x)));
        auto right = static_cast<std::size_t>(transformation_arrow(action, h, x));
        t.compose[left * n + right] = transformation_arrow(action, grp.mul(g, h), x);
      }
  return FiniteGroupoid::validate(std::move(t));
}

std::vector<Arrow> isotropy_group(const FiniteGroupoid& g, Arrow unit) {
  std::vector<Arrow> iso;
  for (Arrow a : g.source_fiber(unit))
    if (g.ran(a) == unit) iso.push_back(a);
  for (Arrow a : iso) {
    if (std::find(iso.begin(), iso.end(), g.inverse(a)) == iso.end()) {
      throw VerificationFailure("isotropy group not closed under inverse");
    }
    for (Arrow b : iso)
      if (std::find(iso.begin(), iso.end(), g.compose(a, b)) == iso.end()) {
        throw VerificationFailure("isotropy group not closed under composition");
      }
  }
  return iso;
}

bool is_principal(const FiniteGroupoid& g) {
  for (Arrow u : g.units())
    if (isotropy_group(g, u).size() != 1) return false;
  return true;
}

bool is_bisection(const FiniteGroupoid& g, const std::vector<Arrow>& arrows) {
  std::vector<bool> d(g.size(), false), r(g.size(), false);
  for (Arrow a : arrows) {
    auto da = static_cast<std::size_t>(g.dom(a));
    auto ra = static_cast<std::size_t>(g.ran(a));
    if (d[da] || r[ra]) return false;
    d[da] = r[ra] = true;
  }
  return true;
}

Bisection make_bisection(const FiniteGroupoid& g, std::vector<Arrow> arrows) {
  std::sort(arrows.begin(), arrows.end());
  arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
  for (Arrow a : arrows)
    if (a < 0 || static_cast<std::size_t>(a) >= g.size()) throw std::invalid_argument("arrow out of range");
  if (!is_bisection(g, arrows)) throw std::invalid_argument("dom or ran is not injective on the arrow set");
  return Bisection{std::move(arrows)};
}

std::optional<std::uint64_t> count_bisections(const FiniteGroupoid& g) {
  const std::size_t k = g.unit_count();
  if (k > 24) return std::nullopt;
  // Process source units in order; the mask records range units in use.
  std::vector<std::uint64_t> ways(std::size_t{1} << k, 0);
  ways[0] = 1;
  for (Arrow x : g.units()) {
    std::vector<std::uint64_t> next = ways;
    for (std::size_t mask = 0; mask < ways.size(); ++mask) {
      if (ways[mask] == 0) continue;
      for (Arrow a : g.source_fiber(x)) {
        std::size_t bit = std::size_t{1} << g.unit_index(g.ran(a));
        if (mask & bit) continue;
        std::uint64_t add = ways[mask];
        if (next[mask | bit] > UINT64_MAX - add) return std::nullopt;
        next[mask | bit] += add;
      }
    }
    ways = std::move(next);
  }
  std::uint64_t total = 0;
  for (auto w : ways) {
    if (total > UINT64_MAX - w) return std::nullopt;
    total += w;
  }
  return total;
}

std::vector<Bisection> enumerate_bisections(const FiniteGroupoid& g, std::uint64_t max_count) {
  auto count = count_bisections(g);
  if (count && *count > max_count) {
    throw GuardExceeded("bisection count " + std::to_string(*count) + " exceeds the configured bound " +
                            std::to_string(max_count),
                        count);
  }
  std::vector<Bisection> out;
  std::vector<Arrow> current;
  std::vector<bool> used_ran(g.unit_count(), false);
  const auto& units = g.units();
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == units.size()) {
      if (out.size() >= max_count) {
        throw GuardExceeded("bisection count exceeds the configured bound " + std::to_string(max_count), count);
      }
      std::vector<Arrow> s = current;
      std::sort(s.begin(), s.end());
      out.push_back(Bisection{std::move(s)});
      return;
    }
    rec(i + 1);
    for (Arrow a : g.source_fiber(units[i])) {
      std::size_t r = g.unit_index(g.ran(a));
      if (used_ran[r]) continue;
      used_ran[r] = true;
      current.push_back(a);
      rec(i + 1);
      current.pop_back();
      used_ran[r] = false;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

Bisection bisection_product(const FiniteGroupoid& g, const Bisection& s, const Bisection& t) {
  std::vector<Arrow> out;
  for (Arrow a : s.arrows)
    for (Arrow b : t.arrows)
      if (g.composable(a, b)) out.push_back(g.compose(a, b));
  return make_bisection(g, std::move(out));
}

Bisection bisection_inverse(const FiniteGroupoid& g, const Bisection& s) {
  std::vector<Arrow> out;
  for (Arrow a : s.arrows) out.push_back(g.inverse(a));
  return make_bisection(g, std::move(out));
}

PartialBijection bisection_action(const FiniteGroupoid& g, const Bisection& s) {
  PartialBijection p = PartialBijection::empty(g.unit_count());
  for (Arrow a : s.arrows) {
    auto x = g.unit_index(g.dom(a));
    if (p.image[x] >= 0) throw std::invalid_argument("not a bisection: dom is not injective");
    p.image[x] = static_cast<int>(g.unit_index(g.ran(a)));
  }
  return PartialBijection::from_image(std::move(p.image));
}

GermGroupoid germ_groupoid(std::size_t points, const std::vector<PartialBijection>& maps) {
  std::vector<int> parent(points);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  std::vector<bool> covered(points, false);
  for (const auto& m : maps) {
    if (m.n != points) throw std::invalid_argument("partial bijection on a different point set");
    for (std::size_t x = 0; x < points; ++x) {
      int y = m.image[x];
      if (y < 0) continue;
      covered[x] = covered[static_cast<std::size_t>(y)] = true;
      int a = find(static_cast<int>(x)), b = find(y);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  std::vector<int> unit_points;
  for (std::size_t x = 0; x < points; ++x)
    if (covered[x]) unit_points.push_back(static_cast<int>(x));
  if (unit_points.empty()) throw std::invalid_argument("no point lies in the domain of any map");

  // Germ (y, x): units first, then non-unit pairs in lexicographic order.
  std::vector<std::pair<int, int>> germs;
  for (int x : unit_points) germs.emplace_back(x, x);
  for (int y : unit_points)
    for (int x : unit_points)
      if (x != y && find(x) == find(y)) germs.emplace_back(y, x);
  std::map<std::pair<int, int>, Arrow> index;
  for (std::size_t i = 0; i < germs.size(); ++i) index[germs[i]] = static_cast<Arrow>(i);

  const std::size_t n = germs.size();
  GroupoidTables t;
  t.arrows = n;
  t.compose.assign(n * n, kNoArrow);
  for (const auto& [y, x] : germs) {
    t.dom.push_back(index.at({x, x}));
    t.ran.push_back(index.at({y, y}));
    t.inverse.push_back(index.at({x, y}));
    t.labels.push_back(x == y ? std::to_string(x) : "[" + std::to_string(y) + "<-" + std::to_string(x) + "]");
  }
  // [s, t(x)] [t, x] = [st, x], i.e. (z, y)(y, x) = (z, x).
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (germs[i].second == germs[j].first) t.compose[i * n + j] = index.at({germs[i].first, germs[j].second});
  return GermGroupoid{FiniteGroupoid::validate(std::move(t)), std::move(unit_points)};
}

// ---------------------------------------------------------------------------

namespace {

struct UnitSignature {
  std::size_t isotropy;
  std::size_t orbit;
  friend bool operator==(const UnitSignature&, const UnitSignature&) = default;
};

std::vector<UnitSignature> unit_signatures(const FiniteGroupoid& g) {
  std::vector<UnitSignature> sig;
  for (Arrow u : g.units()) {
    std::size_t iso = 0;
    for (Arrow a : g.source_fiber(u)) iso += g.ran(a) == u;
    sig.push_back({iso, g.source_fiber(u).size() / iso});
  }
  return sig;
}

class IsoSearcher {
 public:
  IsoSearcher(const FiniteGroupoid& g, const FiniteGroupoid& h, std::uint64_t limit)
      : g_(g), h_(h), limit_(limit), fwd_(g.size(), kNoArrow), bwd_(h.size(), kNoArrow) {}

  std::optional<std::vector<Arrow>> run() {
    sig_g_ = unit_signatures(g_);
    sig_h_ = unit_signatures(h_);
    if (search_units(0)) return fwd_;
    return std::nullopt;
  }
  std::uint64_t nodes() const { return nodes_; }

 private:
  void tick() {
    if (++nodes_ > limit_) {
      throw GuardExceeded("isomorphism search exceeded " + std::to_string(limit_) + " nodes");
    }
  }

  // Assigns a -> b and everything it forces; false on conflict. All changes
  // are recorded on the trail.
  bool assign(Arrow a, Arrow b) {
    std::vector<std::pair<Arrow, Arrow>> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = work.back();
      work.pop_back();
      auto xi = static_cast<std::size_t>(x), yi = static_cast<std::size_t>(y);
      if (fwd_[xi] == y) continue;
      if (fwd_[xi] != kNoArrow || bwd_[yi] != kNoArrow) return false;
      if (g_.is_unit(x) != h_.is_unit(y)) return false;
      if (!g_.is_unit(x)) {
        if (fwd_[static_cast<std::size_t>(g_.dom(x))] != h_.dom(y)) return false;
        if (fwd_[static_cast<std::size_t>(g_.ran(x))] != h_.ran(y)) return false;
      }
      fwd_[xi] = y;
      bwd_[yi] = x;
      trail_.push_back(x);
      if (g_.is_unit(x)) continue;
      work.emplace_back(g_.inverse(x), h_.inverse(y));
      for (Arrow c : assigned_snapshot()) {
        if (g_.is_unit(c)) continue;
        Arrow fc = fwd_[static_cast<std::size_t>(c)];
        if (g_.composable(x, c)) work.emplace_back(g_.compose(x, c), h_.compose(y, fc));
        if (g_.composable(c, x)) work.emplace_back(g_.compose(c, x), h_.compose(fc, y));
      }
    }
    return true;
  }

  std::vector<Arrow> assigned_snapshot() const { return trail_; }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      Arrow x = trail_.back();
      trail_.pop_back();
      bwd_[static_cast<std::size_t>(fwd_[static_cast<std::size_t>(x)])] = kNoArrow;
      fwd_[static_cast<std::size_t>(x)] = kNoArrow;
    }
  }

  bool search_units(std::size_t i) {
    const auto& ug = g_.units();
    if (i == ug.size()) return search_arrows(0);
    for (std::size_t j = 0; j < h_.unit_count(); ++j) {
      Arrow cand = h_.units()[j];
      if (bwd_[static_cast<std::size_t>(cand)] != kNoArrow || !(sig_g_[i] == sig_h_[j])) continue;
      tick();
      std::size_t mark = trail_.size();
      if (assign(ug[i], cand) && search_units(i + 1)) return true;
      undo(mark);
    }
    return false;
  }

  bool search_arrows(std::size_t from) {
    std::size_t a = from;
    while (a < g_.size() && fwd_[a] != kNoArrow) ++a;
    if (a == g_.size()) return true;
    auto arrow = static_cast<Arrow>(a);
    Arrow d = fwd_[static_cast<std::size_t>(g_.dom(arrow))];
    Arrow r = fwd_[static_cast<std::size_t>(g_.ran(arrow))];
    for (Arrow cand : h_.source_fiber(d)) {
      if (h_.ran(cand) != r || bwd_[static_cast<std::size_t>(cand)] != kNoArrow) continue;
      tick();
      std::size_t mark = trail_.size();
      if (assign(arrow, cand) && search_arrows(a + 1)) return true;
      undo(mark);
    }
    return false;
  }

  const FiniteGroupoid& g_;
  const FiniteGroupoid& h_;
  std::uint64_t limit_;
  std::uint64_t nodes_ = 0;
  std::vector<Arrow> fwd_, bwd_, trail_;
  std::vector<UnitSignature> sig_g_, sig_h_;
};

}  // namespace

bool is_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h, const std::vector<Arrow>& map) {
  if (g.size() != h.size() || map.size() != g.size()) return false;
  std::vector<bool> hit(h.size(), false);
  for (Arrow b : map) {
    if (b < 0 || static_cast<std::size_t>(b) >= h.size() || hit[static_cast<std::size_t>(b)]) return false;
    hit[static_cast<std::size_t>(b)] = true;
  }
  auto f = [&](Arrow a) { return map[static_cast<std::size_t>(a)]; };
  for (Arrow a = 0; a < static_cast<Arrow>(g.size()); ++a) {
    if (g.is_unit(a) != h.is_unit(f(a))) return false;
    if (f(g.dom(a)) != h.dom(f(a)) || f(g.ran(a)) != h.ran(f(a)) || f(g.inverse(a)) != h.inverse(f(a))) return false;
    for (Arrow b = 0; b < static_cast<Arrow>(g.size()); ++b)
      if (g.composable(a, b) && f(g.compose(a, b)) != h.compose(f(a), f(b))) return false;
  }
  return true;
}

IsomorphismSearch find_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h, std::uint64_t node_limit) {
  IsomorphismSearch result;
  if (g.size() != h.size() || g.unit_count() != h.unit_count()) return result;
  IsoSearcher searcher(g, h, node_limit);
  result.map = searcher.run();
  result.nodes = searcher.nodes();
  if (result.map && !is_isomorphism(g, h, *result.map)) {
    throw VerificationFailure("isomorphism search returned a map that is not an isomorphism");
  }
  return result;
}

// ---------------------------------------------------------------------------

bool is_coe_witness(const GroupAction& a, const GroupAction& b, const CoeWitness& w) {
  const std::size_t nx = a.points(), ny = b.points();
  if (nx != ny || w.theta.size() != nx) return false;
  std::vector<int> inv(ny, -1);
  for (std::size_t x = 0; x < nx; ++x) {
    int y = w.theta[x];
    if (y < 0 || static_cast<std::size_t>(y) >= ny || inv[static_cast<std::size_t>(y)] >= 0) return false;
    inv[static_cast<std::size_t>(y)] = static_cast<int>(x);
  }
  for (std::size_t g = 0; g < a.group().order(); ++g)
    for (std::size_t x = 0; x < nx; ++x) {
      int h = w.cocycle_h.at(g).at(x);
      if (w.theta[static_cast<std::size_t>(a.act(static_cast<int>(g), static_cast<int>(x)))] !=
          b.act(h, w.theta[x])) {
        return false;
      }
    }
  for (std::size_t h = 0; h < b.group().order(); ++h)
    for (std::size_t y = 0; y < ny; ++y) {
      int g = w.cocycle_g.at(h).at(y);
      if (inv[static_cast<std::size_t>(b.act(static_cast<int>(h), static_cast<int>(y)))] !=
          a.act(g, inv[y])) {
        return false;
      }
    }
  return true;
}

CoeSearch coe_search(const GroupAction& a, const GroupAction& b, std::uint64_t node_limit) {
  CoeSearch result;
  const std::size_t n = a.points();
  if (n != b.points()) return result;
  auto orb_a = a.orbit_ids();
  auto orb_b = b.orbit_ids();
  auto orbit_size = [](const std::vector<int>& ids, std::size_t x) {
    return static_cast<std::size_t>(std::count(ids.begin(), ids.end(), ids[x]));
  };
  std::vector<int> theta(n, -1);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> rec = [&](std::size_t x) {
    if (x == n) return true;
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || orbit_size(orb_a, x) != orbit_size(orb_b, y)) continue;
      bool ok = true;
      for (std::size_t prev = 0; prev < x && ok; ++prev) {
        bool same_a = orb_a[prev] == orb_a[x];
        bool same_b = orb_b[static_cast<std::size_t>(theta[prev])] == orb_b[y];
        ok = same_a == same_b;
      }
      if (!ok) continue;
      if (++result.nodes > node_limit) {
        throw GuardExceeded("orbit-equivalence search exceeded " + std::to_string(node_limit) + " nodes");
      }
      theta[x] = static_cast<int>(y);
      used[y] = true;
      if (rec(x + 1)) return true;
      used[y] = false;
      theta[x] = -1;
    }
    return false;
  };
  if (!rec(0)) return result;

  CoeWitness w;
  w.theta = theta;
  std::vector<int> inv(n);
  for (std::size_t x = 0; x < n; ++x) inv[static_cast<std::size_t>(theta[x])] = static_cast<int>(x);
  w.cocycle_h.assign(a.group().order(), std::vector<int>(n, -1));
  w.cocycle_g.assign(b.group().order(), std::vector<int>(n, -1));
  for (std::size_t g = 0; g < a.group().order(); ++g)
    for (std::size_t x = 0; x < n; ++x) {
      int target = theta[static_cast<std::size_t>(a.act(static_cast<int>(g), static_cast<int>(x)))];
      for (std::size_t h = 0; h < b.group().order(); ++h)
        if (b.act(static_cast<int>(h), theta[x]) == target) {
          w.cocycle_h[g][x] = static_cast<int>(h);
          break;
        }
    }
  for (std::size_t h = 0; h < b.group().order(); ++h)
    for (std::size_t y = 0; y < n; ++y) {
      int target = inv[static_cast<std::size_t>(b.act(static_cast<int>(h), static_cast<int>(y)))];
      for (std::size_t g = 0; g < a.group().order(); ++g)
        if (a.act(static_cast<int>(g), inv[y]) == target) {
          w.cocycle_g[h][y] = static_cast<int>(g);
          break;
        }
    }
  if (!is_coe_witness(a, b, w)) throw VerificationFailure("orbit-matching bijection produced an invalid cocycle");
  result.witness = std::move(w);
  return result;
}

}  // namespace lpg
