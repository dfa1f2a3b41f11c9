#pragma once

// Structured-text spec files:
//
//   # comment
//   [group.z3]
//   kind = cyclic
//   order = 3
//
//   [task.1]
//   command = core
//   groupoid = rot3
//   p = 1, 3/2, 3
//
// Sections are [group.NAME], [action.NAME], [groupoid.NAME], [algebra.NAME]
// and [task.ID]. Objects may only reference objects defined earlier in the
// file. Tables use ';' between rows and ',' (or whitespace) between entries;
// several matrices are separated by '|'.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpg/groupoid.hpp"
#include "lpg/lp_norms.hpp"

namespace lpg::cli {

class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& origin, int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

struct Entry {
  std::string value;
  int line = 0;
  int column = 0;  // column of the value
};

struct Section {
  std::string kind;  // group, action, groupoid, algebra, task
  std::string name;
  int line = 0;
  std::map<std::string, Entry> entries;
};

struct AlgebraDef {
  std::shared_ptr<const RepresentedAlgebra> algebra;
  std::string description;
};

struct TaskDef {
  std::string id;
  std::string command;
  int line = 0;
  std::vector<PExponent> p;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> guard;
  std::uint64_t samples = 0;
  // All keys of the section, references already checked.
  std::map<std::string, std::string> params;

  const std::string* param(const std::string& key) const;
};

struct SpecFile {
  std::string origin;
  std::map<std::string, FiniteGroup> groups;
  std::map<std::string, GroupAction> actions;
  std::map<std::string, std::shared_ptr<const FiniteGroupoid>> groupoids;
  std::map<std::string, AlgebraDef> algebras;
  std::vector<TaskDef> tasks;
};

std::vector<Section> parse_sections(const std::string& text, const std::string& origin);
SpecFile parse_spec_text(const std::string& text, const std::string& origin = "<string>");
SpecFile parse_spec(const std::string& path);

// Table helpers shared with the runner.
std::vector<std::vector<std::string>> split_table(const std::string& text);
std::vector<CMatrix> parse_matrices(const std::string& text);
std::vector<std::string> split_list(const std::string& text);

inline const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> c{"validate", "core", "weyl", "coe", "norms", "crossed", "leavitt"};
  return c;
}

}  // namespace lpg::cli
