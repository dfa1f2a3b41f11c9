#pragma once

// Finite étale groupoids with the discrete topology: every subset is open,
// "dense" means "everything", and continuity of maps is automatic.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lpg {

using Arrow = std::int32_t;
inline constexpr Arrow kNoArrow = -1;

enum class Axiom {
  TableShape,
  DomRanInUnits,
  UnitFixedPoints,
  ComposabilityDomain,
  ComposeDomRan,
  InverseInvolution,
  InverseDomRan,
  DomainIsInverseProduct,
  RangeIsProductInverse,
  UnitsAreIdempotentSelfInverse,
  Associativity,
  Cancellation,
};

std::string_view axiom_name(Axiom a);

class GroupoidAxiomError : public std::runtime_error {
 public:
  GroupoidAxiomError(Axiom axiom, std::vector<Arrow> witnesses, const std::string& detail);
  Axiom axiom() const { return axiom_; }
  const std::vector<Arrow>& witnesses() const { return witnesses_; }

 private:
  Axiom axiom_;
  std::vector<Arrow> witnesses_;
};

// Raw structure tables. compose[g * arrows + h] is g∘h ("g after h"), which
// must be defined exactly when dom(g) == ran(h).
struct GroupoidTables {
  std::size_t arrows = 0;
  std::vector<Arrow> dom;
  std::vector<Arrow> ran;
  std::vector<Arrow> inverse;
  std::vector<Arrow> compose;
  std::vector<std::string> labels;
};

class FiniteGroupoid {
 public:
  // Checks every groupoid axiom; throws GroupoidAxiomError naming the first
  // violated axiom and its witnessing arrows.
  static FiniteGroupoid validate(GroupoidTables tables);

  std::size_t size() const { return t_.arrows; }
  Arrow dom(Arrow g) const { return t_.dom[static_cast<std::size_t>(g)]; }
  Arrow ran(Arrow g) const { return t_.ran[static_cast<std::size_t>(g)]; }
  Arrow inverse(Arrow g) const { return t_.inverse[static_cast<std::size_t>(g)]; }
  bool composable(Arrow g, Arrow h) const { return dom(g) == ran(h); }
  // g∘h, or kNoArrow when dom(g) != ran(h).
  Arrow compose(Arrow g, Arrow h) const {
    return t_.compose[static_cast<std::size_t>(g) * t_.arrows + static_cast<std::size_t>(h)];
  }

  bool is_unit(Arrow g) const { return unit_index_[static_cast<std::size_t>(g)] >= 0; }
  const std::vector<Arrow>& units() const { return units_; }
  std::size_t unit_count() const { return units_.size(); }
  // Position of a unit arrow in units().
  std::size_t unit_index(Arrow unit) const;
  // Gx = {g : dom(g) = x}.
  const std::vector<Arrow>& source_fiber(Arrow unit) const { return source_[unit_index(unit)]; }
  // xG = {g : ran(g) = x}.
  const std::vector<Arrow>& range_fiber(Arrow unit) const { return range_[unit_index(unit)]; }

  const std::string& label(Arrow g) const { return t_.labels[static_cast<std::size_t>(g)]; }
  const GroupoidTables& tables() const { return t_; }

  // Structural equality; labels are ignored.
  friend bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b);

 private:
  explicit FiniteGroupoid(GroupoidTables t);

  GroupoidTables t_;
  std::vector<Arrow> units_;
  std::vector<std::int32_t> unit_index_;
  std::vector<std::vector<Arrow>> source_;
  std::vector<std::vector<Arrow>> range_;
};

// Finite group given by its multiplication table; element 0 need not be the
// identity (it is located during validation).
class FiniteGroup {
 public:
  static FiniteGroup from_table(std::vector<std::vector<int>> table, std::vector<std::string> names = {});

  std::size_t order() const { return table_.size(); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  const std::string& name(int a) const { return names_[static_cast<std::size_t>(a)]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<std::string> names_;
  int identity_ = 0;
};

// Left action by permutations: act(g, x) = σ_g(x), with σ_{gh} = σ_g ∘ σ_h.
class GroupAction {
 public:
  static GroupAction make(FiniteGroup group, std::size_t points, std::vector<std::vector<int>> perms);

  const FiniteGroup& group() const { return group_; }
  std::size_t points() const { return points_; }
  int act(int g, int x) const { return perms_[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)]; }
  const std::vector<std::vector<int>>& perms() const { return perms_; }
  // Orbit id per point (ids are the smallest point of each orbit).
  std::vector<int> orbit_ids() const;
  // Every point has trivial stabilizer.
  bool is_free() const;

 private:
  FiniteGroup group_;
  std::size_t points_ = 0;
  std::vector<std::vector<int>> perms_;
};

// Injective map from a subset of {0..n-1} into {0..n-1}; image[x] == -1
// where undefined.
struct PartialBijection {
  std::size_t n = 0;
  std::vector<int> image;

  static PartialBijection identity(std::size_t n);
  static PartialBijection empty(std::size_t n);
  // Validates injectivity and range.
  static PartialBijection from_image(std::vector<int> image);

  bool defined(int x) const { return image[static_cast<std::size_t>(x)] >= 0; }
  std::vector<int> domain() const;
  std::vector<int> range() const;
  // (*this) ∘ inner, defined where inner(x) lands in this map's domain.
  PartialBijection after(const PartialBijection& inner) const;
  PartialBijection inverse() const;
  PartialBijection restricted_to(const std::vector<bool>& keep) const;
  std::string to_string() const;

  friend bool operator==(const PartialBijection&, const PartialBijection&) = default;
  friend auto operator<=>(const PartialBijection&, const PartialBijection&) = default;
};

// Sorted set of arrows on which dom and ran are both injective.
struct Bisection {
  std::vector<Arrow> arrows;
  friend bool operator==(const Bisection&, const Bisection&) = default;
  friend auto operator<=>(const Bisection&, const Bisection&) = default;
};

FiniteGroupoid transformation_groupoid(const GroupAction& action);

// Arrow index of (g, x) in transformation_groupoid(action).
inline Arrow transformation_arrow(const GroupAction& action, int g, int x) {
  return static_cast<Arrow>(static_cast<std::size_t>(g) * action.points() + static_cast<std::size_t>(x));
}

// {g : dom(g) = ran(g) = x}; throws std::invalid_argument if x is not a unit.
std::vector<Arrow> isotropy_group(const FiniteGroupoid& g, Arrow unit);

// Trivial isotropy at every unit (on a finite discrete unit space the dense
// set of trivial-isotropy units must be all of them).
bool is_principal(const FiniteGroupoid& g);

bool is_bisection(const FiniteGroupoid& g, const std::vector<Arrow>& arrows);
Bisection make_bisection(const FiniteGroupoid& g, std::vector<Arrow> arrows);

// Number of bisections by dynamic programming over subsets of range units;
// nullopt if the unit space is too large for the bitmask.
std::optional<std::uint64_t> count_bisections(const FiniteGroupoid& g);

// All bisections (including the empty one), in a canonical order. Throws
// GuardExceeded if the count exceeds max_count.
std::vector<Bisection> enumerate_bisections(const FiniteGroupoid& g, std::uint64_t max_count = 1'000'000);

Bisection bisection_product(const FiniteGroupoid& g, const Bisection& s, const Bisection& t);
Bisection bisection_inverse(const FiniteGroupoid& g, const Bisection& s);

// β_S on unit indices: dom(γ) ↦ ran(γ) for γ in S.
PartialBijection bisection_action(const FiniteGroupoid& g, const Bisection& s);

struct GermGroupoid {
  FiniteGroupoid groupoid;
  // Point of the underlying set represented by each unit (in units() order).
  std::vector<int> unit_points;
};

// Groupoid of germs of the inverse semigroup generated by the maps. With the
// discrete topology the germ [s, x] is the pair (s(x), x), so the result is
// the equivalence relation generated by the graphs, on the points covered by
// some domain or range.
GermGroupoid germ_groupoid(std::size_t points, const std::vector<PartialBijection>& maps);

struct IsomorphismSearch {
  std::optional<std::vector<Arrow>> map;  // arrow of G -> arrow of H
  std::uint64_t nodes = 0;
};

// Backtracking search with unit-signature pruning and forced propagation
// through inverses and products. Exhaustion certifies non-isomorphism.
// Throws GuardExceeded when more than node_limit nodes are visited.
IsomorphismSearch find_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h,
                                   std::uint64_t node_limit = 10'000'000);

// Checks that map is a groupoid isomorphism g -> h.
bool is_isomorphism(const FiniteGroupoid& g, const FiniteGroupoid& h, const std::vector<Arrow>& map);

struct CoeWitness {
  std::vector<int> theta;                 // X -> Y
  std::vector<std::vector<int>> cocycle_h;  // [g][x] -> h
  std::vector<std::vector<int>> cocycle_g;  // [h][y] -> g
};

struct CoeSearch {
  std::optional<CoeWitness> witness;
  std::uint64_t nodes = 0;
};

// Continuous orbit equivalence between two finite actions. Continuity of θ
// and of the cocycles is automatic for discrete spaces.
CoeSearch coe_search(const GroupAction& a, const GroupAction& b, std::uint64_t node_limit = 10'000'000);

// Checks both defining identities of the witness.
bool is_coe_witness(const GroupAction& a, const GroupAction& b, const CoeWitness& w);

}  // namespace lpg
