#include "lpg/cli/spec.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "lpg/catalog.hpp"
#include "lpg/groupoid_algebra.hpp"

namespace lpg::cli {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string format_location(const std::string& origin, int line, int column, const std::string& message) {
  return origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

class SectionReader {
 public:
  SectionReader(const Section& s, const std::string& origin) : s_(s), origin_(origin) {}

  [[noreturn]] void fail(const std::string& msg) const { throw SpecError(origin_, s_.line, 1, label() + ": " + msg); }
  [[noreturn]] void fail_at(const std::string& key, const std::string& msg) const {
    const Entry& e = s_.entries.at(key);
    throw SpecError(origin_, e.line, e.column, label() + "." + key + ": " + msg);
  }

  std::string label() const { return "[" + s_.kind + "." + s_.name + "]"; }
  bool has(const std::string& key) const { return s_.entries.count(key) > 0; }

  const std::string& get(const std::string& key) const {
    auto it = s_.entries.find(key);
    if (it == s_.entries.end()) fail("missing key '" + key + "'");
    return it->second.value;
  }

  std::int64_t integer(const std::string& key, std::int64_t min = 0) const {
    const std::string& v = get(key);
    std::int64_t x = 0;
    try {
      std::size_t used = 0;
      x = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      fail_at(key, "expected an integer, got '" + v + "'");
    }
    if (x < min) fail_at(key, "must be at least " + std::to_string(min));
    return x;
  }

  void allow_only(const std::set<std::string>& keys) const {
    for (const auto& [k, e] : s_.entries)
      if (!keys.count(k)) throw SpecError(origin_, e.line, 1, label() + ": unknown key '" + k + "'");
  }

  template <class F>
  auto guarded(const std::string& key, F&& f) const {
    try {
      return f();
    } catch (const SpecError&) {
      throw;
    } catch (const std::exception& ex) {
      if (has(key)) fail_at(key, ex.what());
      fail(ex.what());
    }
  }

 private:
  const Section& s_;
  const std::string& origin_;
};

std::vector<std::vector<int>> int_table(const SectionReader& r, const std::string& key) {
  return r.guarded(key, [&] {
    std::vector<std::vector<int>> out;
    for (const auto& row : split_table(r.get(key))) {
      std::vector<int> v;
      for (const auto& cell : row) {
        std::size_t used = 0;
        const int x = std::stoi(cell, &used);
        if (used != cell.size()) throw std::invalid_argument("bad integer '" + cell + "'");
        v.push_back(x);
      }
      out.push_back(std::move(v));
    }
    return out;
  });
}

template <class Map>
const typename Map::mapped_type& lookup(const SectionReader& r, const Map& m, const std::string& key,
                                         const std::string& what) {
  const std::string& name = r.get(key);
  auto it = m.find(name);
  if (it == m.end()) r.fail_at(key, "undefined " + what + " '" + name + "'");
  return it->second;
}

FiniteGroup build_group(const SectionReader& r, const SpecFile& spec) {
  const std::string& kind = r.get("kind");
  if (kind == "cyclic") {
    r.allow_only({"kind", "order"});
    return catalog::cyclic_group(static_cast<int>(r.integer("order", 1)));
  }
  if (kind == "symmetric3") {
    r.allow_only({"kind"});
    return catalog::symmetric_group3();
  }
  if (kind == "trivial") {
    r.allow_only({"kind"});
    return catalog::trivial_group();
  }
  if (kind == "table") {
    r.allow_only({"kind", "table"});
    auto t = int_table(r, "table");
    return r.guarded("table", [&] { return FiniteGroup::from_table(std::move(t)); });
  }
  if (kind == "product") {
    r.allow_only({"kind", "factors"});
    auto names = split_list(r.get("factors"));
    if (names.size() != 2) r.fail_at("factors", "expected two group names");
    std::vector<FiniteGroup> f;
    for (const auto& n : names) {
      auto it = spec.groups.find(n);
      if (it == spec.groups.end()) r.fail_at("factors", "undefined group '" + n + "'");
      f.push_back(it->second);
    }
    return catalog::product_group(f[0], f[1]);
  }
  r.fail_at("kind", "unknown group kind '" + kind + "'");
}

GroupAction build_action(const SectionReader& r, const SpecFile& spec) {
  const std::string& kind = r.get("kind");
  auto finish = [&](GroupAction a) {
    if (!r.has("relabel")) return a;
    auto t = int_table(r, "relabel");
    if (t.size() != 1) r.fail_at("relabel", "expected a single row");
    return r.guarded("relabel", [&] { return catalog::relabeled(a, t[0]); });
  };
  if (kind == "translation") {
    r.allow_only({"kind", "group", "relabel"});
    return finish(catalog::translation_action(lookup(r, spec.groups, "group", "group")));
  }
  if (kind == "rotation") {
    r.allow_only({"kind", "order", "points", "relabel"});
    const int n = static_cast<int>(r.integer("order", 1)), m = static_cast<int>(r.integer("points", 1));
    return finish(r.guarded("points", [&] {
      if (n % m != 0) throw std::invalid_argument("points must divide order");
      return catalog::rotation_action(n, m);
    }));
  }
  if (kind == "trivial") {
    r.allow_only({"kind", "group", "points", "relabel"});
    return finish(catalog::trivial_action(lookup(r, spec.groups, "group", "group"), static_cast<int>(r.integer("points", 1))));
  }
  if (kind == "perms") {
    r.allow_only({"kind", "group", "perms", "relabel"});
    const FiniteGroup& g = lookup(r, spec.groups, "group", "group");
    auto t = int_table(r, "perms");
    if (t.empty()) r.fail_at("perms", "empty permutation table");
    const std::size_t pts = t.front().size();
    return finish(r.guarded("perms", [&] { return GroupAction::make(g, pts, std::move(t)); }));
  }
  if (kind == "product") {
    r.allow_only({"kind", "factors", "relabel"});
    auto names = split_list(r.get("factors"));
    if (names.size() != 2) r.fail_at("factors", "expected two action names");
    std::vector<GroupAction> f;
    for (const auto& n : names) {
      auto it = spec.actions.find(n);
      if (it == spec.actions.end()) r.fail_at("factors", "undefined action '" + n + "'");
      f.push_back(it->second);
    }
    return finish(catalog::product_action(f[0], f[1]));
  }
  r.fail_at("kind", "unknown action kind '" + kind + "'");
}

FiniteGroupoid build_groupoid(const SectionReader& r, const SpecFile& spec) {
  const std::string& kind = r.get("kind");
  if (kind == "unit" || kind == "pair") {
    r.allow_only({"kind", "points"});
    const int n = static_cast<int>(r.integer("points", 1));
    return kind == "unit" ? catalog::unit_groupoid(n) : catalog::pair_groupoid(n);
  }
  if (kind == "group") {
    r.allow_only({"kind", "group"});
    return catalog::group_groupoid(lookup(r, spec.groups, "group", "group"));
  }
  if (kind == "transformation") {
    r.allow_only({"kind", "action"});
    return transformation_groupoid(lookup(r, spec.actions, "action", "action"));
  }
  if (kind == "table") {
    r.allow_only({"kind", "dom", "ran", "inverse", "compose"});
    auto row = [&](const std::string& key) {
      auto t = int_table(r, key);
      if (t.size() != 1) r.fail_at(key, "expected a single row");
      return std::vector<Arrow>(t[0].begin(), t[0].end());
    };
    GroupoidTables tables;
    tables.dom = row("dom");
    tables.ran = row("ran");
    tables.inverse = row("inverse");
    tables.arrows = tables.dom.size();
    for (const auto& v : int_table(r, "compose")) tables.compose.insert(tables.compose.end(), v.begin(), v.end());
    return r.guarded("compose", [&] { return FiniteGroupoid::validate(std::move(tables)); });
  }
  r.fail_at("kind", "unknown groupoid kind '" + kind + "'");
}

AlgebraDef build_algebra(const SectionReader& r, const SpecFile& spec) {
  const std::string& kind = r.get("kind");
  auto make = [](RepresentedAlgebra a, std::string d) {
    return AlgebraDef{std::make_shared<const RepresentedAlgebra>(std::move(a)), std::move(d)};
  };
  if (kind == "full" || kind == "upper" || kind == "diagonal" || kind == "scalars") {
    r.allow_only({"kind", "size"});
    const auto n = static_cast<std::size_t>(r.integer("size", 1));
    const std::string d = kind + "(" + std::to_string(n) + ")";
    if (kind == "full") return make(RepresentedAlgebra::full_matrix(n), d);
    if (kind == "upper") return make(RepresentedAlgebra::upper_triangular(n), d);
    if (kind == "diagonal") return make(RepresentedAlgebra::diagonal(n), d);
    return make(RepresentedAlgebra::scalars(n), d);
  }
  if (kind == "groupoid") {
    r.allow_only({"kind", "groupoid"});
    return make(groupoid_algebra(*lookup(r, spec.groupoids, "groupoid", "groupoid")), "groupoid algebra of " + r.get("groupoid"));
  }
  if (kind == "group") {
    r.allow_only({"kind", "group"});
    return make(groupoid_algebra(catalog::group_groupoid(lookup(r, spec.groups, "group", "group"))),
                "group algebra of " + r.get("group"));
  }
  if (kind == "basis" || kind == "generated") {
    r.allow_only({"kind", "size", "basis", "generators", "unital"});
    const auto n = static_cast<std::size_t>(r.integer("size", 1));
    const std::string key = kind == "basis" ? "basis" : "generators";
    bool unital = true;
    if (r.has("unital")) {
      const std::string& u = r.get("unital");
      if (u != "true" && u != "false") r.fail_at("unital", "expected true or false");
      unital = u == "true";
    }
    auto mats = r.guarded(key, [&] { return parse_matrices(r.get(key)); });
    for (const auto& m : mats)
      if (m.rows() != n || m.cols() != n) r.fail_at(key, "matrix is not " + std::to_string(n) + "x" + std::to_string(n));
    return r.guarded(key, [&] {
      return make(kind == "basis" ? RepresentedAlgebra::make(n, mats, unital) : RepresentedAlgebra::generated_by(n, mats, unital),
                  kind + " algebra in M_" + std::to_string(n));
    });
  }
  r.fail_at("kind", "unknown algebra kind '" + kind + "'");
}

const std::map<std::string, std::set<std::string>>& command_keys() {
  static const std::map<std::string, std::set<std::string>> k{
      {"validate", {"groupoid", "expect"}},
      {"core", {"groupoid", "algebra", "group", "expect"}},
      {"weyl", {"groupoid", "group", "expect"}},
      {"coe", {"left", "right", "expect"}},
      {"norms", {"groupoid", "element"}},
      {"crossed", {"action", "group", "algebra", "implementers"}},
      {"leavitt", {"kind", "n", "k", "mutate"}},
  };
  return k;
}

TaskDef build_task(const Section& s, const SectionReader& r, const SpecFile& spec) {
  TaskDef t;
  t.id = s.name;
  t.line = s.line;
  t.command = r.get("command");
  auto ck = command_keys().find(t.command);
  if (ck == command_keys().end()) r.fail_at("command", "unknown command '" + t.command + "'");
  std::set<std::string> allowed = ck->second;
  allowed.insert({"command", "p", "seed", "guard", "samples", "note"});
  r.allow_only(allowed);
  for (const auto& [k, e] : s.entries) t.params[k] = e.value;

  if (r.has("p")) {
    for (const auto& item : split_list(r.get("p"))) {
      t.p.push_back(r.guarded("p", [&] { return PExponent::parse(item); }));
    }
    if (t.p.empty()) r.fail_at("p", "empty p list");
  }
  if (r.has("seed")) t.seed = static_cast<std::uint64_t>(r.integer("seed", 0));
  if (r.has("guard")) t.guard = static_cast<std::uint64_t>(r.integer("guard", 1));
  if (r.has("samples")) t.samples = static_cast<std::uint64_t>(r.integer("samples", 0));

  for (const auto& key : {"groupoid"})
    if (r.has(key)) lookup(r, spec.groupoids, key, "groupoid");
  if (r.has("algebra")) lookup(r, spec.algebras, "algebra", "algebra");
  if (r.has("group")) lookup(r, spec.groups, "group", "group");
  for (const auto& key : {"action", "left", "right"})
    if (r.has(key)) lookup(r, spec.actions, key, "action");

  auto need_p = [&] {
    if (t.p.empty()) r.fail("missing key 'p'");
  };
  auto exactly_one = [&](std::initializer_list<const char*> keys) {
    int c = 0;
    std::string names;
    for (const char* k : keys) {
      c += r.has(k);
      names += (names.empty() ? "" : ", ") + std::string(k);
    }
    if (c != 1) r.fail("expected exactly one of: " + names);
  };
  const std::string& cmd = t.command;
  if (cmd == "validate") r.get("groupoid");
  if (cmd == "core") need_p(), exactly_one({"groupoid", "algebra", "group"});
  if (cmd == "weyl") need_p(), exactly_one({"groupoid", "group"});
  if (cmd == "coe") r.get("left"), r.get("right");
  if (cmd == "norms") need_p(), r.get("groupoid");
  if (cmd == "crossed") {
    need_p();
    if (r.has("action")) {
      if (r.has("group") || r.has("algebra") || r.has("implementers")) r.fail("'action' excludes group/algebra/implementers");
    } else {
      r.get("group"), r.get("algebra");
      if (r.has("implementers")) r.guarded("implementers", [&] { return parse_matrices(r.get("implementers")); });
    }
  }
  if (cmd == "leavitt") {
    const std::string& kind = r.get("kind");
    if (kind == "covariant") r.integer("n", 2);
    else if (kind == "absorption") r.integer("k", 2);
    else r.fail_at("kind", "expected covariant or absorption");
  }
  return t;
}

}  // namespace

SpecError::SpecError(const std::string& origin, int line, int column, const std::string& message)
    : std::runtime_error(format_location(origin, line, column, message)), line_(line), column_(column) {}

const std::string* TaskDef::param(const std::string& key) const {
  auto it = params.find(key);
  return it == params.end() ? nullptr : &it->second;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) {
    cur = trim(cur);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<std::vector<std::string>> split_table(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::string row;
  std::istringstream is(text);
  while (std::getline(is, row, ';')) {
    row = trim(row);
    if (row.empty()) continue;
    std::vector<std::string> cells;
    if (row.find(',') != std::string::npos) {
      cells = split_list(row);
    } else {
      std::istringstream rs(row);
      std::string c;
      while (rs >> c) cells.push_back(c);
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::vector<CMatrix> parse_matrices(const std::string& text) {
  std::vector<CMatrix> out;
  std::string block;
  std::istringstream is(text);
  while (std::getline(is, block, '|')) {
    auto rows = split_table(block);
    if (rows.empty()) throw std::invalid_argument("empty matrix");
    const std::size_t n = rows.size();
    CMatrix m(n, rows[0].size());
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != m.cols()) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = GaussRational::parse(rows[i][j]);
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<Section> parse_sections(const std::string& text, const std::string& origin) {
  std::vector<Section> out;
  std::set<std::pair<std::string, std::string>> seen;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    const int indent = static_cast<int>(raw.find_first_not_of(" \t")) + 1;
    if (s[0] == '[') {
      if (s.back() != ']') throw SpecError(origin, line, indent, "unterminated section header");
      std::string head = trim(std::string_view(s).substr(1, s.size() - 2));
      const auto dot = head.find('.');
      if (dot == std::string::npos || dot == 0 || dot + 1 == head.size()) {
        throw SpecError(origin, line, indent + 1, "section header must be [kind.NAME]");
      }
      Section sec{head.substr(0, dot), head.substr(dot + 1), line, {}};
      static const std::set<std::string> kinds{"group", "action", "groupoid", "algebra", "task"};
      if (!kinds.count(sec.kind)) throw SpecError(origin, line, indent + 1, "unknown section kind '" + sec.kind + "'");
      if (!seen.insert({sec.kind, sec.name}).second) {
        throw SpecError(origin, line, indent + 1, "duplicate section [" + head + "]");
      }
      out.push_back(std::move(sec));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw SpecError(origin, line, indent, "expected key = value");
    if (out.empty()) throw SpecError(origin, line, indent, "key outside of any section");
    std::string key = trim(std::string_view(s).substr(0, eq));
    std::string value = trim(std::string_view(s).substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw SpecError(origin, line, indent, "empty key");
    const int vcol = static_cast<int>(raw.find('=')) + 2;
    if (!out.back().entries.emplace(key, Entry{value, line, vcol}).second) {
      throw SpecError(origin, line, indent, "duplicate key '" + key + "'");
    }
  }
  return out;
}

SpecFile parse_spec_text(const std::string& text, const std::string& origin) {
  SpecFile spec;
  spec.origin = origin;
  for (const Section& s : parse_sections(text, origin)) {
    SectionReader r(s, origin);
    if (s.kind == "group") spec.groups.emplace(s.name, build_group(r, spec));
    else if (s.kind == "action") spec.actions.emplace(s.name, build_action(r, spec));
    else if (s.kind == "groupoid") spec.groupoids.emplace(s.name, std::make_shared<const FiniteGroupoid>(build_groupoid(r, spec)));
    else if (s.kind == "algebra") spec.algebras.emplace(s.name, build_algebra(r, spec));
    else spec.tasks.push_back(build_task(s, r, spec));
  }
  return spec;
}

SpecFile parse_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path, 0, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str(), path);
}

}  // namespace lpg::cli
