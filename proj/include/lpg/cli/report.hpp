#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace lpg::cli {

enum class Status { Pass, Fail, Inconclusive };
std::string status_name(Status s);
Status parse_status(const std::string& s);

struct IntervalRecord {
  std::string label;
  std::string p;
  std::string lower;  // 12 significant digits
  std::string upper;
  std::string method;

  bool operator==(const IntervalRecord&) const = default;
};

struct TaskReport {
  std::string id;
  std::string command;
  Status status = Status::Pass;
  std::string anchor;  // statement being checked
  std::vector<std::string> messages;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  std::vector<IntervalRecord> intervals;
  double seconds = 0.0;  // not serialized

  bool operator==(const TaskReport& o) const;
};

struct Report {
  std::string spec;
  std::uint64_t seed = 0;
  std::vector<TaskReport> tasks;

  std::size_t count(Status s) const;
  bool failed() const { return count(Status::Fail) > 0; }
  bool operator==(const Report&) const = default;
};

std::string format_double(double x);

nlohmann::ordered_json to_json(const Report& r);
Report report_from_json(const nlohmann::ordered_json& j);
std::string render_json(const Report& r);
std::string render_text(const Report& r, bool with_timings = false);

}  // namespace lpg::cli
