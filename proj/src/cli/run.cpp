#include "lpg/cli/run.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "lpg/catalog.hpp"
#include "lpg/crossed_product.hpp"
#include "lpg/errors.hpp"
#include "lpg/groupoid_algebra.hpp"
#include "lpg/leavitt.hpp"
#include "lpg/weyl.hpp"

namespace lpg::cli {

using json = nlohmann::ordered_json;

void Tolerances::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("tolerance must be KEY=VAL: " + assignment);
  const std::string key = assignment.substr(0, eq);
  double v = 0;
  try {
    std::size_t used = 0;
    v = std::stod(assignment.substr(eq + 1), &used);
    if (used != assignment.size() - eq - 1) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("tolerance value is not a number: " + assignment);
  }
  if (!(v >= 0)) throw std::invalid_argument("tolerance must be nonnegative: " + assignment);
  if (key == "sandwich") sandwich = v;
  else if (key == "collapse") collapse = v;
  else if (key == "interval") interval = v;
  else throw std::invalid_argument("unknown tolerance key '" + key + "' (sandwich, collapse, interval)");
}

namespace {

std::string render_matrix(const CMatrix& m) {
  std::string s;
  if (m.is_diagonal()) {
    s = "diag(";
    for (std::size_t i = 0; i < m.rows(); ++i) s += (i ? ", " : "") + m(i, i).to_string();
    return s + ")";
  }
  s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s += r ? "; " : "";
    for (std::size_t c = 0; c < m.cols(); ++c) s += (c ? ", " : "") + m(r, c).to_string();
  }
  return s + "]";
}

json render_basis(const std::vector<CMatrix>& basis) {
  json out = json::array();
  for (const auto& b : basis) out.push_back(render_matrix(b));
  return out;
}

IntervalRecord interval(std::string label, const PExponent& p, const NormEstimate& e) {
  return {std::move(label), p.to_string(), format_double(e.lower), format_double(e.upper), std::string(method_name(e.method))};
}

std::string pkey(const PExponent& p) { return "p=" + p.to_string(); }

// Outcome of one p-value: pass, or a message for a failure.
struct Verdict {
  TaskReport& rep;
  void fail(const std::string& msg) {
    rep.status = Status::Fail;
    rep.messages.push_back(msg);
  }
  void inconclusive(const std::string& msg) {
    if (rep.status == Status::Pass) rep.status = Status::Inconclusive;
    rep.messages.push_back(msg);
  }
};

// Runs body(slot), converting the library's error types into report
// entries; the slot is stored under parent[key] afterwards.
template <class F>
void guarded(Verdict& v, json& parent, const std::string& key, F&& body) {
  json slot = json::object();
  try {
    body(slot);
  } catch (const ExcludedExponent& e) {
    slot = "rejected: requires p != 2";
    v.fail(key + ": rejected, the statement requires p != 2 (" + e.what() + ")");
  } catch (const GuardExceeded& e) {
    slot = "guard exceeded";
    std::string msg = key + ": guard exceeded (" + e.what() + ")";
    if (e.exact_count()) msg += ", exact count " + std::to_string(*e.exact_count());
    v.inconclusive(msg);
  } catch (const std::exception& e) {
    slot = std::string("error: ") + e.what();
    v.fail(key + ": " + e.what());
  }
  parent[key] = std::move(slot);
}

ConvElement random_conv(const std::shared_ptr<const FiniteGroupoid>& g, std::mt19937_64& rng, bool units_only) {
  std::uniform_int_distribution<int> c(-3, 3), keep(0, 2);
  std::vector<GaussRational> v(g->size());
  for (Arrow a = 0; a < static_cast<Arrow>(g->size()); ++a) {
    if (units_only && !g->is_unit(a)) continue;
    if (keep(rng) == 0) continue;
    v[static_cast<std::size_t>(a)] = GaussRational(Rational(c(rng)), Rational(c(rng)));
  }
  return ConvElement(g, std::move(v));
}

std::shared_ptr<const FiniteGroupoid> resolve_groupoid(const SpecFile& spec, const TaskDef& t) {
  if (const auto* name = t.param("groupoid")) return spec.groupoids.at(*name);
  if (const auto* name = t.param("group")) {
    return std::make_shared<const FiniteGroupoid>(catalog::group_groupoid(spec.groups.at(*name)));
  }
  throw std::invalid_argument("task needs a groupoid or group");
}

void task_validate(const SpecFile& spec, const TaskDef& t, TaskReport& rep, Verdict& v) {
  rep.anchor = "finite groupoid axioms, principality and bisections";
  const auto& g = *spec.groupoids.at(*t.param("groupoid"));
  rep.results["arrows"] = g.size();
  rep.results["units"] = g.unit_count();
  const bool principal = is_principal(g);
  rep.results["principal"] = principal;
  json iso = json::array();
  for (Arrow u : g.units()) iso.push_back(isotropy_group(g, u).size());
  rep.results["isotropy_orders"] = iso;
  auto count = count_bisections(g);
  if (count) rep.results["bisections"] = *count;
  else rep.results["bisections"] = "overflow";
  if (const auto* e = t.param("expect")) {
    if (*e == "principal" && !principal) v.fail("expected a principal groupoid");
    else if (*e == "not-principal" && principal) v.fail("expected a non-principal groupoid");
    else if (*e != "principal" && *e != "not-principal") v.fail("unknown expectation '" + *e + "'");
  }
}

void task_core(const SpecFile& spec, const TaskDef& t, TaskReport& rep, Verdict& v) {
  if (t.param("algebra")) {
    rep.anchor = "the C*-core is A_h + iA_h; for p != 2 the hermitian part is the real-diagonal part";
    const RepresentedAlgebra& alg = *spec.algebras.at(*t.param("algebra")).algebra;
    const std::string* expect = t.param("expect");
    for (const auto& p : t.p) {
      guarded(v, rep.results, pkey(p), [&](json& slot) {
        CoreResult c = core_of(alg, p);
        slot = json::object();
        slot["dimension"] = c.core.dimension();
        slot["commutative"] = c.commutative;
        slot["basis"] = render_basis(c.core.basis());
        if (!expect) return;
        bool ok = true;
        const std::size_t n = alg.ambient();
        if (*expect == "diagonal") ok = c.core.same_span(RepresentedAlgebra::diagonal(n));
        else if (*expect == "scalars") ok = c.core.same_span(RepresentedAlgebra::scalars(n));
        else if (*expect == "full") ok = c.core.same_span(alg);
        else if (expect->rfind("dim:", 0) == 0) ok = c.core.dimension() == std::stoul(expect->substr(4));
        else throw std::invalid_argument("unknown expectation '" + *expect + "'");
        if (!ok) v.fail(pkey(p) + ": core does not match expectation '" + *expect + "'");
      });
    }
    return;
  }
  rep.anchor = "for p != 2 the C*-core of the reduced groupoid algebra is C(G^(0))";
  const auto g = resolve_groupoid(spec, t);
  for (const auto& p : t.p) {
    guarded(v, rep.results, pkey(p), [&](json& slot) {
      GroupoidCore c = core_of_groupoid_algebra(*g, p);
      slot = json::object();
      slot["dimension"] = c.result.core.dimension();
      slot["units"] = g->unit_count();
      slot["equals_unit_functions"] = true;
      slot["spectrum_points"] = spectrum_points(c.result.core).size();
    });
  }
}

void task_weyl(const SpecFile& spec, const TaskDef& t, TaskReport& rep, Verdict& v, ExecutionPolicy policy) {
  rep.anchor = "the Weyl groupoid of admissible pairs over the core recovers a topologically principal G";
  const auto g = resolve_groupoid(spec, t);
  WeylOptions opts;
  opts.policy = policy;
  if (t.guard) opts.max_bisections = opts.isomorphism_node_limit = *t.guard;
  const std::string* expect = t.param("expect");
  for (const auto& p : t.p) {
    guarded(v, rep.results, pkey(p), [&](json& slot) {
      WeylResult w = weyl_groupoid(*g, p, opts);
      slot = json::object();
      slot["bisections"] = w.bisections;
      slot["distinct_maps"] = w.distinct_maps;
      slot["germ_arrows"] = w.germs.groupoid.size();
      slot["germ_units"] = w.germs.groupoid.unit_count();
      slot["input_principal"] = w.principal;
      if (w.isomorphism) {
        slot["isomorphism"] = *w.isomorphism;
        if (!is_isomorphism(w.germs.groupoid, *g, *w.isomorphism)) v.fail(pkey(p) + ": exhibited map is not an isomorphism");
      }
      if (!expect) return;
      if (*expect == "isomorphic") {
        if (!w.isomorphism) v.fail(pkey(p) + ": no isomorphism with the input groupoid");
      } else if (expect->rfind("units:", 0) == 0) {
        const auto want = std::stoul(expect->substr(6));
        if (w.germs.groupoid.unit_count() != want || w.germs.groupoid.size() != want) {
          v.fail(pkey(p) + ": expected the trivial groupoid on " + std::to_string(want) + " unit(s)");
        }
      } else {
        throw std::invalid_argument("unknown expectation '" + *expect + "'");
      }
    });
  }
}

void task_coe(const SpecFile& spec, const TaskDef& t, TaskReport& rep, Verdict& v) {
  rep.anchor = "continuous orbit equivalence of actions agrees with isomorphism of transformation groupoids";
  const GroupAction& a = spec.actions.at(*t.param("left"));
  const GroupAction& b = spec.actions.at(*t.param("right"));
  const std::uint64_t limit = t.guard.value_or(10'000'000);
  guarded(v, rep.results, "search", [&](json& slot) {
    CoeSearch coe = coe_search(a, b, limit);
    const FiniteGroupoid ga = transformation_groupoid(a), gb = transformation_groupoid(b);
    IsomorphismSearch iso = find_isomorphism(ga, gb, limit);
    slot = json::object();
    slot["coe"] = coe.witness.has_value();
    slot["groupoids_isomorphic"] = iso.map.has_value();
    slot["agree"] = coe.witness.has_value() == iso.map.has_value();
    if (coe.witness) {
      slot["theta"] = coe.witness->theta;
      if (!is_coe_witness(a, b, *coe.witness)) v.fail("orbit equivalence witness fails verification");
    }
    if (iso.map && !is_isomorphism(ga, gb, *iso.map)) v.fail("groupoid isomorphism fails verification");
    if (coe.witness.has_value() != iso.map.has_value()) v.fail("orbit equivalence and groupoid isomorphism disagree");
    if (const auto* e = t.param("expect")) {
      if (*e != "equivalent" && *e != "inequivalent") throw std::invalid_argument("unknown expectation '" + *e + "'");
      if ((*e == "equivalent") != coe.witness.has_value()) v.fail("expected " + *e);
    }
  });
}

void task_norms(const SpecFile& spec, const TaskDef& t, TaskReport& rep, Verdict& v, std::uint64_t seed,
                const Tolerances& tol, ExecutionPolicy policy) {
  rep.anchor = "sup norm <= reduced norm <= I-norm, with the reduced norm equal to the sup norm on C(G^(0))";
  const auto g = spec.groupoids.at(*t.param("groupoid"));
  const std::uint64_t samples = t.samples ? t.samples : 20;
  std::optional<ConvElement> given;
  if (const auto* e = t.param("element")) {
    std::vector<GaussRational> c;
    for (const auto& item : split_list(*e)) c.push_back(GaussRational::parse(item));
    if (c.size() != g->size()) {
      v.fail("element needs one coefficient per arrow (" + std::to_string(g->size()) + ")");
    } else {
      given = ConvElement(g, std::move(c));
    }
  }
  for (const auto& p : t.p) {
    guarded(v, rep.results, pkey(p), [&](json& slot) {
      NormOptions no;
      no.policy = policy;
      std::mt19937_64 rng(seed);
      std::size_t sandwich_violations = 0, collapse_violations = 0;
      double max_width = 0;
      for (std::uint64_t s = 0; s < samples; ++s) {
        ConvElement f = random_conv(g, rng, false);
        NormEstimate e = lambda_norm(f, p, no);
        if (sup_norm(f) > e.lower + tol.sandwich || e.upper > i_norm(f) + tol.sandwich) ++sandwich_violations;
        max_width = std::max(max_width, e.width());
        ConvElement u = random_conv(g, rng, true);
        NormEstimate eu = lambda_norm(u, p, no);
        const double sup = sup_norm(u);
        if (std::abs(eu.lower - sup) > tol.collapse || std::abs(eu.upper - sup) > tol.collapse) ++collapse_violations;
      }
      slot = json::object();
      slot["samples"] = samples;
      slot["sandwich_violations"] = sandwich_violations;
      slot["collapse_violations"] = collapse_violations;
      slot["max_interval_width"] = format_double(max_width);
      if (sandwich_violations) v.fail(pkey(p) + ": norm sandwich violated on " + std::to_string(sandwich_violations) + " sample(s)");
      if (collapse_violations) {
        v.fail(pkey(p) + ": unit-supported interval did not collapse on " + std::to_string(collapse_violations) + " sample(s)");
      }
      if (given) {
        NormEstimate e = lambda_norm(*given, p, no);
        rep.intervals.push_back(interval("lambda(element)", p, e));
        slot["element_sup"] = format_double(sup_norm(*given));
        slot["element_i_norm"] = format_double(i_norm(*given));
        if (e.width() > tol.interval * std::max(1.0, e.upper)) {
          v.inconclusive(pkey(p) + ": interval width " + format_double(e.width()) + " exceeds tolerance");
        }
      }
    });
  }
}

void task_crossed(const SpecFile& spec, const TaskDef& t, TaskReport& rep, Verdict& v) {
  rep.anchor = "the C*-core of an L^p crossed product by a finite group is the C*-core of the coefficient algebra";
  std::optional<CrossedProduct> cp;
  guarded(v, rep.results, "construction", [&](json& build) {
    if (const auto* a = t.param("action")) {
      cp.emplace(function_algebra_action(spec.actions.at(*a)));
    } else {
      const FiniteGroup& g = spec.groups.at(*t.param("group"));
      const RepresentedAlgebra& alg = *spec.algebras.at(*t.param("algebra")).algebra;
      if (const auto* imp = t.param("implementers")) {
        cp.emplace(IsometricAlgebraAction::make(g, alg, parse_matrices(*imp)));
      } else {
        cp.emplace(trivial_algebra_action(g, alg));
      }
    }
    build = json::object();
    build["group_order"] = cp->order();
    build["block"] = cp->block();
    build["dimension"] = cp->algebra().dimension();
  });
  if (!cp) return;
  for (const auto& p : t.p) {
    guarded(v, rep.results, pkey(p), [&](json& slot) {
      CoreTheoremReport r = verify_core_theorem(*cp, p);
      slot = json::object();
      slot["core_dimension"] = r.core_dimension;
      slot["crossed_core_dimension"] = r.crossed_core_dimension;
      slot["identified"] = r.identified;
      slot["expectation_kills_translates"] = r.expectation_kills_translates;
      slot["core_fixed_by_expectation"] = r.core_fixed_by_expectation;
      if (!r.passed()) v.fail(pkey(p) + ": crossed-product core identity fails");
    });
  }
}

template <class Gens>
void apply_mutation(const TaskDef& t, Gens& gens, int n) {
  const auto* m = t.param("mutate");
  if (!m) return;
  std::istringstream is(*m);
  std::string name;
  std::size_t r = 0, c = 0;
  if (!(is >> name >> r >> c)) throw std::invalid_argument("mutate must be 'GENERATOR ROW COL VALUE'");
  std::string rest;
  std::getline(is, rest);
  leavitt::mutate(gens, name, r, c, leavitt::parse_element(n, rest));
}

void task_leavitt(const TaskDef& t, TaskReport& rep, Verdict& v) {
  const std::string& kind = *t.param("kind");
  guarded(v, rep.results, "identities", [&](json& slot) {
    leavitt::LeavittReport lr;
    if (kind == "covariant") {
      rep.anchor = "M_2 tensor O_n^p as a crossed product of C(X) by Z_2 * Z_{n+1}: covariant relations and psi o phi = id";
      const int n = std::stoi(*t.param("n"));
      auto g = leavitt::covariant_generators(n);
      apply_mutation(t, g, n);
      lr = leavitt::verify_covariant_presentation(g);
    } else {
      rep.anchor = "M_2 tensor O_2k^p is isomorphic to O_2k^p: Cuntz relations and generation of matrix units";
      const int k = std::stoi(*t.param("k"));
      auto g = leavitt::absorption_generators(k);
      apply_mutation(t, g, 2 * k);
      lr = leavitt::verify_matrix_absorption(g);
    }
    slot = json::object();
    slot["checked"] = lr.checks.size();
    slot["failed"] = lr.failures().size();
    for (const auto* f : lr.failures()) v.fail("identity fails: " + f->name + "; difference " + f->difference);
  });
}

}  // namespace

TaskReport run_task(const SpecFile& spec, const TaskDef& task, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  TaskReport rep;
  rep.id = task.id;
  rep.command = task.command;
  Verdict v{rep};
  const std::uint64_t seed = task.seed.value_or(opts.seed);
  // Inner kernels run serially when tasks themselves run in parallel.
  const ExecutionPolicy inner = opts.policy;
  guarded(v, rep.results, "task", [&](json&) {
    const std::string& c = task.command;
    if (c == "validate") task_validate(spec, task, rep, v);
    else if (c == "core") task_core(spec, task, rep, v);
    else if (c == "weyl") task_weyl(spec, task, rep, v, inner);
    else if (c == "coe") task_coe(spec, task, rep, v);
    else if (c == "norms") task_norms(spec, task, rep, v, seed, opts.tolerances, inner);
    else if (c == "crossed") task_crossed(spec, task, rep, v);
    else if (c == "leavitt") task_leavitt(task, rep, v);
    else throw std::invalid_argument("unknown command '" + c + "'");
  });
  if (rep.results["task"].is_object() && rep.results["task"].empty()) rep.results.erase("task");
  if (const auto* note = task.param("note")) rep.messages.insert(rep.messages.begin(), "note: " + *note);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Report run(const SpecFile& spec, const RunOptions& opts) {
  Report r;
  r.spec = spec.origin.substr(spec.origin.find_last_of('/') == std::string::npos ? 0 : spec.origin.find_last_of('/') + 1);
  r.seed = opts.seed;
  r.tasks.resize(spec.tasks.size());
  RunOptions inner = opts;
  if (opts.policy == ExecutionPolicy::Parallel) inner.policy = ExecutionPolicy::Serial;
  kernels::for_each_index(spec.tasks.size(), opts.policy,
                          [&](std::size_t i) { r.tasks[i] = run_task(spec, spec.tasks[i], inner); });
  return r;
}

}  // namespace lpg::cli
