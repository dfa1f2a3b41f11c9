// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//   lpg_acceptance [--only N]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lpg/catalog.hpp"
#include "lpg/crossed_product.hpp"
#include "lpg/errors.hpp"
#include "lpg/leavitt.hpp"
#include "lpg/weyl.hpp"

using namespace lpg;
using namespace lpg::catalog;

namespace {

using GPtr = std::shared_ptr<const FiniteGroupoid>;
using Clock = std::chrono::steady_clock;

const PExponent P1(Rational(1)), P32(Rational(3, 2)), P2(Rational(2)), P3(Rational(3));

GPtr share(FiniteGroupoid g) { return std::make_shared<const FiniteGroupoid>(std::move(g)); }

// Collects failures; `detail` is printed after the verdict.
struct Outcome {
  std::vector<std::string> failures;
  std::string detail;
  std::mutex mu;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    std::lock_guard lock(mu);
    if (failures.size() < 5) failures.push_back(what);
    else if (failures.size() == 5) failures.push_back("...");
  }
};

ConvElement random_element(const GPtr& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3), den(1, 3);
  std::bernoulli_distribution keep(0.6);
  std::vector<GaussRational> c(g->size());
  for (auto& z : c)
    if (keep(rng)) z = GaussRational(Rational(d(rng), den(rng)), Rational(d(rng), den(rng)));
  return ConvElement(g, std::move(c));
}

ConvElement random_unit_function(const GPtr& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  std::vector<GaussRational> v;
  for (std::size_t i = 0; i < g->unit_count(); ++i) v.emplace_back(Rational(d(rng)), Rational(d(rng)));
  return ConvElement::on_units(g, v);
}

std::vector<Rational> random_weight(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 4);
  std::vector<Rational> h;
  for (std::size_t i = 0; i < n; ++i) h.emplace_back(num(rng), den(rng));
  return h;
}

GaussRational unimodular(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  int a = 0, b = 0;
  while (a == 0 && b == 0) {
    a = d(rng);
    b = d(rng);
  }
  const Rational n(a * a + b * b);
  return GaussRational(Rational(a * a - b * b) / n, Rational(2 * a * b) / n);
}

std::string pname(const PExponent& p) { return "p=" + p.to_string(); }

// ---------------------------------------------------------------------------

void groupoid_cores(Outcome& o) {
  const auto start = Clock::now();
  for (const auto& ng : acceptance_groupoids())
    for (const auto& p : {P1, P32, P3}) {
      auto c = core_of_groupoid_algebra(ng.groupoid, p);
      o.check(c.result.core.same_span(c.unit_functions) && c.result.core.dimension() == ng.groupoid.unit_count(),
              ng.name + " " + pname(p));
    }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  o.check(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  o.detail = "6 groupoids x 3 exponents, " + std::to_string(secs).substr(0, 5) + " s";
}

void group_cores(Outcome& o) {
  for (const auto& [name, grp] : acceptance_groups())
    for (const auto& p : {P1, P3}) {
      auto c = core_of_groupoid_algebra(group_groupoid(grp), p);
      const auto scalars = RepresentedAlgebra::scalars(c.result.core.ambient());
      o.check(c.result.core.same_span(scalars), name + " " + pname(p));
    }
  o.detail = "Z2, Z3, Z4, S3 at p=1, 3";
}

void matrix_cores(Outcome& o) {
  for (std::size_t n : {2u, 3u, 4u})
    for (const auto& p : {P1, P3}) {
      auto c = core_of(RepresentedAlgebra::full_matrix(n), p);
      o.check(c.core.same_span(RepresentedAlgebra::diagonal(n)) && c.core.dimension() == n,
              "M" + std::to_string(n) + " " + pname(p));
    }
  auto h = core_of(RepresentedAlgebra::full_matrix(2), P2);
  o.check(h.core.same_span(RepresentedAlgebra::full_matrix(2)), "M2 p=2 is not full");
  o.detail = "M2, M3, M4 diagonal; M2 full at p=2";
}

void weyl_reconstruction(Outcome& o) {
  for (const auto& ng : acceptance_groupoids())
    for (const auto& p : {P1, P3}) {
      auto w = weyl_groupoid(ng.groupoid, p);
      o.check(w.isomorphism && is_isomorphism(w.germs.groupoid, ng.groupoid, *w.isomorphism), ng.name + " " + pname(p));
    }
  for (const auto& [name, grp] : acceptance_groups())
    for (const auto& p : {P1, P3}) {
      auto w = weyl_groupoid(group_groupoid(grp), p);
      o.check(w.germs.groupoid.size() == 1 && w.germs.groupoid.unit_count() == 1, name + " " + pname(p));
    }
  o.detail = "6 groupoids and 4 group algebras at p=1, 3";
}

void bisection_pairs(Outcome& o) {
  std::size_t round_trips = 0, samples = 0;
  for (const auto& ng : acceptance_groupoids()) {
    const GroupoidModel m{share(ng.groupoid)};
    const auto& g = *m.groupoid;
    const auto bis = enumerate_bisections(g);
    kernels::for_each_index(bis.size(), ExecutionPolicy::Parallel, [&](std::size_t i) {
      std::mt19937_64 rng(1000 + i);
      for (int t = 0; t < 10; ++t) {
        bool ok = false;
        try {
          auto pair = pair_from_bisection(m, bis[i], random_weight(rng, m.points()));
          ok = bisection_from_pair(m, pair) == bis[i];
        } catch (const std::exception&) {
        }
        o.check(ok, ng.name + " bisection " + std::to_string(i));
      }
    });
    round_trips += bis.size() * 10;

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<std::size_t> pick(0, bis.size() - 1), arrow(0, g.size() - 1);
    for (int t = 0; t < 500; ++t) {
      std::vector<GaussRational> ca(g.size()), cb(g.size());
      if (t % 3 == 0) {
        for (auto& z : ca) z = GaussRational(coef(rng) * (coef(rng) == 0));
        for (auto& z : cb) z = GaussRational(coef(rng) * (coef(rng) == 0));
      } else {
        const auto& s = bis[pick(rng)];
        auto ha = random_weight(rng, m.points()), hb = random_weight(rng, m.points());
        for (Arrow gamma : s.arrows) {
          ca[static_cast<std::size_t>(gamma)] = GaussRational(ha[g.unit_index(g.dom(gamma))]);
          cb[static_cast<std::size_t>(g.inverse(gamma))] = GaussRational(hb[g.unit_index(g.dom(gamma))]);
        }
        if (t % 3 == 2) ca[arrow(rng)] += GaussRational(coef(rng));
      }
      const ConvElement a(m.groupoid, ca), b(m.groupoid, cb);
      auto r = check_admissible(m, a, b);
      if (!r) continue;
      bool ok = false;
      try {
        ok = bisection_action(g, bisection_from_pair(m, GroupoidPair{a, b, r.homeo})) == r.homeo->alpha;
      } catch (const std::exception&) {
      }
      o.check(ok, ng.name + " random pair " + std::to_string(t));
    }
    samples += 500;
  }
  o.detail = std::to_string(round_trips) + " round trips, " + std::to_string(samples) + " random pairs";
}

void coe_rigidity(Outcome& o) {
  const std::vector<GroupAction> acts{rotation_action(2, 2),
                                      rotation_action(3, 3),
                                      rotation_action(4, 4),
                                      translation_action(product_group(cyclic_group(2), cyclic_group(2))),
                                      translation_action(symmetric_group3()),
                                      rotation_action(6, 6),
                                      relabeled(rotation_action(4, 4), {1, 3, 0, 2}),
                                      relabeled(rotation_action(3, 3), {2, 0, 1})};
  std::size_t pairs = 0, equivalent = 0;
  for (const auto& a : acts)
    for (const auto& b : acts) {
      const bool coe = coe_search(a, b).witness.has_value();
      const bool iso = find_isomorphism(transformation_groupoid(a), transformation_groupoid(b)).map.has_value();
      o.check(coe == iso, "pair " + std::to_string(pairs));
      ++pairs;
      equivalent += coe;
    }
  o.detail = std::to_string(pairs) + " action pairs, " + std::to_string(equivalent) + " equivalent";
}

void norm_sandwich(Outcome& o) {
  std::size_t count = 0;
  double worst_collapse = 0;
  for (const auto& ng : acceptance_groupoids()) {
    const GPtr g = share(ng.groupoid);
    std::vector<double> collapse(200, 0.0);
    NormOptions inner;
    inner.policy = ExecutionPolicy::Serial;
    kernels::for_each_index(200, ExecutionPolicy::Parallel, [&](std::size_t t) {
      std::mt19937_64 rng(500 + t);
      auto f = random_element(g, rng);
      const double s = sup_norm(f), i = i_norm(f);
      for (const auto& p : {P1, P32, P3}) {
        auto e = lambda_norm(f, p, inner);
        o.check(s <= e.lower + 1e-9 && e.upper <= i + 1e-9, ng.name + " element " + std::to_string(t) + " " + pname(p));
      }
      auto u = random_unit_function(g, rng);
      const double su = sup_norm(u);
      for (const auto& p : {P1, P32, P3}) {
        auto e = lambda_norm(u, p, inner);
        collapse[t] = std::max({collapse[t], std::abs(e.lower - su), std::abs(e.upper - su)});
      }
      o.check(collapse[t] <= 1e-9, ng.name + " unit function " + std::to_string(t));
    });
    count += 200;
    worst_collapse = std::max(worst_collapse, *std::max_element(collapse.begin(), collapse.end()));
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu elements x 3 exponents, max collapse gap %.2g", count, worst_collapse);
  o.detail = buf;
}

void algebraic_identities(Outcome& o) {
  std::mt19937_64 rng(8);
  std::size_t instances = 0;
  for (const auto& ng : acceptance_groupoids()) {
    const GPtr g = share(ng.groupoid);
    for (int t = 0; t < 100; ++t) {
      auto a = random_element(g, rng), b = random_element(g, rng);
      const auto ja = j_map(a), jb = j_map(b), jab = j_map(convolve(a, b));
      o.check(ja == a.coefficients(), ng.name + " j recovery " + std::to_string(t));

      // Convolution formula for j.
      for (Arrow gamma = 0; gamma < static_cast<Arrow>(g->size()); ++gamma) {
        GaussRational sum;
        for (Arrow s : g->source_fiber(g->dom(gamma)))
          sum += ja[static_cast<std::size_t>(g->compose(gamma, g->inverse(s)))] * jb[static_cast<std::size_t>(s)];
        o.check(jab[static_cast<std::size_t>(gamma)] == sum, ng.name + " j convolution formula " + std::to_string(t));
      }

      // <π_x(a) δ_σ, δ_γ> = <π_ran σ(a) δ_ran σ, δ_γσ⁻¹>.
      for (Arrow x : g->units()) {
        const auto rep = regular_representation(a, x);
        for (std::size_t si = 0; si < rep.index.size(); ++si) {
          const Arrow s = rep.index[si];
          const auto other = regular_representation(a, g->ran(s));
          auto pos = [&](Arrow e) {
            return static_cast<std::size_t>(std::find(other.index.begin(), other.index.end(), e) - other.index.begin());
          };
          for (std::size_t gi = 0; gi < rep.index.size(); ++gi) {
            const Arrow moved = g->compose(rep.index[gi], g->inverse(s));
            o.check(rep.matrix(gi, si) == other.matrix(pos(moved), pos(other.unit)), ng.name + " moved delta " + std::to_string(t));
          }
        }
      }

      // E(f a h) = f E(a) h.
      auto f = random_unit_function(g, rng), h = random_unit_function(g, rng);
      o.check(conditional_expectation(convolve(convolve(f, a), h)) == convolve(convolve(f, conditional_expectation(a)), h),
              ng.name + " expectation bimodule " + std::to_string(t));
      ++instances;
    }
  }
  o.detail = std::to_string(instances) + " instances of each identity";
}

void crossed_core(Outcome& o) {
  const auto m2 = RepresentedAlgebra::full_matrix(2);
  CMatrix swap(2, 2);
  swap(0, 1) = swap(1, 0) = GaussRational(1);
  const std::vector<std::pair<std::string, IsometricAlgebraAction>> actions{
      {"Z2 trivial on M2", trivial_algebra_action(cyclic_group(2), m2)},
      {"Z2 Ad(swap) on M2", IsometricAlgebraAction::make(cyclic_group(2), m2, {CMatrix::identity(2), swap})},
      {"Z2 on C(2)", function_algebra_action(rotation_action(2, 2))},
      {"Z3 on C(3)", function_algebra_action(rotation_action(3, 3))}};
  for (const auto& [name, act] : actions) {
    const CrossedProduct cp(act);
    for (const auto& p : {P1, P3}) {
      auto r = verify_core_theorem(cp, p);
      o.check(r.passed(), name + " " + pname(p));
    }
  }
  o.detail = "4 actions at p=1, 3";
}

void leavitt_checks(Outcome& o) {
  using namespace lpg::leavitt;
  const auto start = Clock::now();
  std::size_t identities = 0;
  for (int n : {2, 3, 4}) {
    auto r = verify_covariant_presentation(n);
    identities += r.checks.size();
    o.check(r.passed(), "covariant n=" + std::to_string(n));
    std::size_t phi = 0;
    for (const auto& c : r.checks) phi += c.name.rfind("psi(phi(", 0) == 0;
    o.check(phi == static_cast<std::size_t>(2 * n + 4), "covariant n=" + std::to_string(n) + " generator count");
  }
  for (int k : {2, 3}) {
    auto r = verify_matrix_absorption(k);
    identities += r.checks.size();
    o.check(r.passed(), "absorption k=" + std::to_string(k));
  }

  // One mutated entry must make a named identity fail.
  auto cov = covariant_generators(3);
  mutate(cov, "b", 1, 0, LeavittElement(3));
  auto bad = verify_covariant_presentation(cov);
  o.check(!bad.passed() && !bad.failures().empty() && !bad.failures().front()->name.empty(), "covariant negative control");
  auto abs = absorption_generators(2);
  mutate(abs, "x1", 0, 0, -LeavittElement::s(4, 1));
  auto bad2 = verify_matrix_absorption(abs);
  o.check(!bad2.passed() && !bad2.failures().empty(), "absorption negative control");

  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  o.check(secs < 60.0, "runtime " + std::to_string(secs) + " s");
  std::ostringstream d;
  d << identities << " identities, negative controls fail at '" << (bad.failures().empty() ? "" : bad.failures().front()->name)
    << "' and '" << (bad2.failures().empty() ? "" : bad2.failures().front()->name) << "', " << std::to_string(secs).substr(0, 5)
    << " s";
  o.detail = d.str();
}

void lamperti_and_hermitian(Outcome& o) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<GaussRational> diag;
    for (int i = 0; i < n; ++i) diag.push_back(unimodular(rng));
    const LampertiFactorization f{diag, perm};
    const PExponent& p = trial % 2 ? P3 : P1;
    bool ok = false;
    try {
      auto back = lamperti_decompose(f.recompose(), p);
      ok = back.diagonal == diag && back.permutation == perm && is_lamperti_isometry(f.recompose(), p);
    } catch (const std::exception&) {
    }
    o.check(ok, "round trip " + std::to_string(trial));
  }

  std::uniform_int_distribution<int> entry(-2, 2);
  int rejected = 0;
  while (rejected < 100) {
    const std::size_t n = 2 + static_cast<std::size_t>(rejected % 3);
    CMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = GaussRational(Rational(entry(rng)), Rational(entry(rng)));
    // Skip the rare monomial sample with unimodular entries.
    std::size_t nonzero = 0;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) nonzero += !m(r, c).is_zero();
    if (nonzero <= n) continue;
    o.check(!is_lamperti_isometry(m, rejected % 2 ? P3 : P1), "non-Lamperti " + std::to_string(rejected));
    ++rejected;
  }

  const std::vector<std::pair<std::string, RepresentedAlgebra>> algebras{
      {"M2", RepresentedAlgebra::full_matrix(2)},
      {"M3", RepresentedAlgebra::full_matrix(3)},
      {"T3", RepresentedAlgebra::upper_triangular(3)},
      {"D3", RepresentedAlgebra::diagonal(3)},
      {"C*(S3)", groupoid_algebra(group_groupoid(symmetric_group3()))}};
  std::size_t hermitian = 0, total = 0;
  std::bernoulli_distribution real_only(0.5), sparse(0.5);
  for (const auto& [name, alg] : algebras)
    for (const auto& p : {P1, P3})
      for (int t = 0; t < 100; ++t) {
        const bool real = real_only(rng), diag_only = sparse(rng);
        std::vector<GaussRational> c;
        for (std::size_t k = 0; k < alg.dimension(); ++k) c.emplace_back(Rational(entry(rng)), real ? Rational(0) : Rational(entry(rng)));
        CMatrix a = alg.element(c);
        // Half the samples are projected onto the diagonal so both verdicts occur.
        if (diag_only)
          for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t s = 0; s < a.cols(); ++s)
              if (r != s) a(r, s) = GaussRational();
        if (!alg.contains(a)) a = alg.element(c);
        auto v = is_hermitian(alg, a, p);
        o.check(v.agree(), name + " " + pname(p) + " sample " + std::to_string(t));
        hermitian += v.hermitian;
        ++total;
      }

  CMatrix inv(2, 2);
  inv(0, 1) = inv(1, 0) = GaussRational(1);
  const auto m2 = RepresentedAlgebra::full_matrix(2);
  o.check(!is_hermitian(m2, inv, P3).hermitian, "involution hermitian at p=3");
  o.check(is_hermitian(m2, inv, P2).hermitian, "involution not hermitian at p=2");
  o.detail = "1000 round trips, 100 rejections, " + std::to_string(total) + " hermitian samples (" +
             std::to_string(hermitian) + " hermitian)";
}

struct Criterion {
  int id;
  std::string title;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks for the groupoid / L^p workbench"};
  std::vector<int> only;
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "groupoid algebra cores equal C(G0)", groupoid_cores},
      {2, "group algebra cores are scalars", group_cores},
      {3, "matrix algebra cores", matrix_cores},
      {4, "Weyl groupoid reconstruction", weyl_reconstruction},
      {5, "bisection <-> admissible pair correspondence", bisection_pairs},
      {6, "COE agrees with groupoid isomorphism", coe_rigidity},
      {7, "norm sandwich and collapse on C(G0)", norm_sandwich},
      {8, "j map, convolution formula, moved deltas, expectation", algebraic_identities},
      {9, "crossed product core theorem", crossed_core},
      {10, "Leavitt presentations", leavitt_checks},
      {11, "Lamperti round trip and hermitian verdicts", lamperti_and_hermitian},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Outcome o;
    const auto start = Clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool ok = o.failures.empty();
    failed += !ok;
    std::printf("[%s] %2d %s: %s (%.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), o.detail.c_str(), secs);
    for (const auto& f : o.failures) std::printf("       - %s\n", f.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
