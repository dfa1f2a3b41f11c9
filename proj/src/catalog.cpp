#include "lpg/catalog.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace lpg::catalog {

FiniteGroup trivial_group() { return FiniteGroup::from_table({{0}}, {"1"}); }

FiniteGroup cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    names.push_back(a == 0 ? "1" : (a == 1 ? "b" : "b^" + std::to_string(a)));
  }
  return FiniteGroup::from_table(std::move(t), std::move(names));
}

FiniteGroup symmetric_group3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const std::size_t n = perms.size();
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[static_cast<std::size_t>(x)] = perms[a][static_cast<std::size_t>(perms[b][static_cast<std::size_t>(x)])];
      t[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  std::vector<std::string> names;
  for (const auto& q : perms) names.push_back("[" + std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]) + "]");
  return FiniteGroup::from_table(std::move(t), std::move(names));
}

FiniteGroup product_group(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order();
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  std::vector<std::string> names;
  for (std::size_t g = 0; g < na; ++g)
    for (std::size_t h = 0; h < nb; ++h) {
      names.push_back("(" + a.name(static_cast<int>(g)) + "," + b.name(static_cast<int>(h)) + ")");
      for (std::size_t g2 = 0; g2 < na; ++g2)
        for (std::size_t h2 = 0; h2 < nb; ++h2)
          t[g * nb + h][g2 * nb + h2] = a.mul(static_cast<int>(g), static_cast<int>(g2)) * static_cast<int>(nb) +
                                        b.mul(static_cast<int>(h), static_cast<int>(h2));
    }
  return FiniteGroup::from_table(std::move(t), std::move(names));
}

FiniteGroupoid unit_groupoid(int n) {
  GroupoidTables t;
  t.arrows = static_cast<std::size_t>(n);
  t.compose.assign(t.arrows * t.arrows, kNoArrow);
  for (int i = 0; i < n; ++i) {
    t.dom.push_back(i);
    t.ran.push_back(i);
    t.inverse.push_back(i);
    t.compose[static_cast<std::size_t>(i) * t.arrows + static_cast<std::size_t>(i)] = i;
    t.labels.push_back(std::to_string(i));
  }
  return FiniteGroupoid::validate(std::move(t));
}

FiniteGroupoid pair_groupoid(int n) {
  GroupoidTables t;
  t.arrows = static_cast<std::size_t>(n * n);
  t.compose.assign(t.arrows * t.arrows, kNoArrow);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      t.dom.push_back(pair_arrow(n, j, j));
      t.ran.push_back(pair_arrow(n, i, i));
      t.inverse.push_back(pair_arrow(n, j, i));
      t.labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
      // (i, j)(j, k) = (i, k)
      for (int k = 0; k < n; ++k) {
        t.compose[static_cast<std::size_t>(pair_arrow(n, i, j)) * t.arrows + static_cast<std::size_t>(pair_arrow(n, j, k))] =
            pair_arrow(n, i, k);
      }
    }
  return FiniteGroupoid::validate(std::move(t));
}

FiniteGroupoid group_groupoid(const FiniteGroup& g) {
  const std::size_t n = g.order();
  GroupoidTables t;
  t.arrows = n;
  t.compose.assign(n * n, kNoArrow);
  for (std::size_t a = 0; a < n; ++a) {
    t.dom.push_back(g.identity());
    t.ran.push_back(g.identity());
    t.inverse.push_back(g.inverse(static_cast<int>(a)));
    t.labels.push_back(g.name(static_cast<int>(a)));
    for (std::size_t b = 0; b < n; ++b) t.compose[a * n + b] = g.mul(static_cast<int>(a), static_cast<int>(b));
  }
  return FiniteGroupoid::validate(std::move(t));
}

GroupAction trivial_action(const FiniteGroup& g, int points) {
  std::vector<int> id(static_cast<std::size_t>(points));
  for (int x = 0; x < points; ++x) id[static_cast<std::size_t>(x)] = x;
  return GroupAction::make(g, static_cast<std::size_t>(points), std::vector<std::vector<int>>(g.order(), id));
}

GroupAction translation_action(const FiniteGroup& g) {
  std::vector<std::vector<int>> perms(g.order(), std::vector<int>(g.order()));
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t x = 0; x < g.order(); ++x) perms[a][x] = g.mul(static_cast<int>(a), static_cast<int>(x));
  return GroupAction::make(g, g.order(), std::move(perms));
}

GroupAction rotation_action(int n, int m) {
  if (m <= 0 || n % m != 0) throw std::invalid_argument("rotation action needs m dividing n");
  std::vector<std::vector<int>> perms(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(m)));
  for (int k = 0; k < n; ++k)
    for (int x = 0; x < m; ++x) perms[static_cast<std::size_t>(k)][static_cast<std::size_t>(x)] = (x + k) % m;
  return GroupAction::make(cyclic_group(n), static_cast<std::size_t>(m), std::move(perms));
}

GroupAction product_action(const GroupAction& a, const GroupAction& b) {
  FiniteGroup grp = product_group(a.group(), b.group());
  const std::size_t na = a.group().order(), nb = b.group().order();
  const std::size_t px = a.points(), py = b.points();
  std::vector<std::vector<int>> perms(na * nb, std::vector<int>(px * py));
  for (std::size_t g = 0; g < na; ++g)
    for (std::size_t h = 0; h < nb; ++h)
      for (std::size_t x = 0; x < px; ++x)
        for (std::size_t y = 0; y < py; ++y)
          perms[g * nb + h][x * py + y] = a.act(static_cast<int>(g), static_cast<int>(x)) * static_cast<int>(py) +
                                          b.act(static_cast<int>(h), static_cast<int>(y));
  return GroupAction::make(std::move(grp), px * py, std::move(perms));
}

GroupAction relabeled(const GroupAction& a, const std::vector<int>& perm) {
  const std::size_t n = a.points();
  if (perm.size() != n) throw std::invalid_argument("relabeling has the wrong length");
  std::vector<int> inv(n);
  for (std::size_t x = 0; x < n; ++x) inv[static_cast<std::size_t>(perm[x])] = static_cast<int>(x);
  std::vector<std::vector<int>> perms(a.group().order(), std::vector<int>(n));
  for (std::size_t g = 0; g < a.group().order(); ++g)
    for (std::size_t y = 0; y < n; ++y)
      perms[g][y] = perm[static_cast<std::size_t>(a.act(static_cast<int>(g), inv[y]))];
  return GroupAction::make(a.group(), n, std::move(perms));
}

std::vector<NamedGroupoid> acceptance_groupoids() {
  std::vector<NamedGroupoid> out;
  out.push_back({"unit(3)", unit_groupoid(3)});
  out.push_back({"pair(2)", pair_groupoid(2)});
  out.push_back({"pair(3)", pair_groupoid(3)});
  out.push_back({"Z2 swap on 2 points", transformation_groupoid(rotation_action(2, 2))});
  out.push_back({"Z3 rotation on 3 points", transformation_groupoid(rotation_action(3, 3))});
  out.push_back({"S3 translation on S3", transformation_groupoid(translation_action(symmetric_group3()))});
  return out;
}

std::vector<std::pair<std::string, FiniteGroup>> acceptance_groups() {
  return {{"Z2", cyclic_group(2)}, {"Z3", cyclic_group(3)}, {"Z4", cyclic_group(4)}, {"S3", symmetric_group3()}};
}

}  // namespace lpg::catalog
