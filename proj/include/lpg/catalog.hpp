#pragma once

// Standard small groups, actions and groupoids used by tests, the shipped
// spec files and the CLI's built-in object kinds.

#include <string>
#include <utility>
#include <vector>

#include "lpg/groupoid.hpp"

namespace lpg::catalog {

FiniteGroup trivial_group();
FiniteGroup cyclic_group(int n);
// S_3 as permutations of {0,1,2}; element 0 is the identity.
FiniteGroup symmetric_group3();
FiniteGroup product_group(const FiniteGroup& a, const FiniteGroup& b);

// Unit groupoid: n arrows, all units.
FiniteGroupoid unit_groupoid(int n);
// Pair groupoid on n points; arrow (i, j) has ran i and dom j, index i*n + j.
FiniteGroupoid pair_groupoid(int n);
inline Arrow pair_arrow(int n, int i, int j) { return static_cast<Arrow>(i * n + j); }
// A group as a groupoid with one unit; arrow g is group element g.
FiniteGroupoid group_groupoid(const FiniteGroup& g);

GroupAction trivial_action(const FiniteGroup& g, int points);
// The group acting on itself by left translation (free and transitive).
GroupAction translation_action(const FiniteGroup& g);
// Z_n acting on {0..m-1} by x -> x + k mod m (requires m | n).
GroupAction rotation_action(int n, int m);
// Product action (g, h)(x, y) = (g x, h y) on X × Y, point index x * |Y| + y.
GroupAction product_action(const GroupAction& a, const GroupAction& b);
// Relabels the points of an action by a permutation of the point set.
GroupAction relabeled(const GroupAction& a, const std::vector<int>& perm);

struct NamedGroupoid {
  std::string name;
  FiniteGroupoid groupoid;
};

// The groupoids the acceptance criteria quantify over: unit(3), pair(2),
// pair(3), Z2 swap, Z3 rotation, S3 translation.
std::vector<NamedGroupoid> acceptance_groupoids();
// Group algebras used for the group-algebra core and Weyl checks.
std::vector<std::pair<std::string, FiniteGroup>> acceptance_groups();

}  // namespace lpg::catalog
