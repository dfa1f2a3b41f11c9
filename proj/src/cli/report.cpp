#include "lpg/cli/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace lpg::cli {

using json = nlohmann::ordered_json;

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive-interval";
  }
  return "fail";
}

Status parse_status(const std::string& s) {
  if (s == "pass") return Status::Pass;
  if (s == "fail") return Status::Fail;
  if (s == "inconclusive-interval") return Status::Inconclusive;
  throw std::invalid_argument("unknown status '" + s + "'");
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

bool TaskReport::operator==(const TaskReport& o) const {
  return id == o.id && command == o.command && status == o.status && anchor == o.anchor && messages == o.messages &&
         results == o.results && intervals == o.intervals;
}

std::size_t Report::count(Status s) const {
  std::size_t c = 0;
  for (const auto& t : tasks) c += t.status == s;
  return c;
}

json to_json(const Report& r) {
  json j;
  j["spec"] = r.spec;
  j["seed"] = r.seed;
  json tasks = json::array();
  for (const auto& t : r.tasks) {
    json tj;
    tj["id"] = t.id;
    tj["command"] = t.command;
    tj["status"] = status_name(t.status);
    tj["anchor"] = t.anchor;
    tj["messages"] = t.messages;
    tj["results"] = t.results;
    json iv = json::array();
    for (const auto& i : t.intervals)
      iv.push_back({{"label", i.label}, {"p", i.p}, {"lower", i.lower}, {"upper", i.upper}, {"method", i.method}});
    tj["intervals"] = iv;
    tasks.push_back(std::move(tj));
  }
  j["tasks"] = tasks;
  j["summary"] = {{"pass", r.count(Status::Pass)},
                  {"fail", r.count(Status::Fail)},
                  {"inconclusive-interval", r.count(Status::Inconclusive)}};
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.spec = j.at("spec").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& tj : j.at("tasks")) {
    TaskReport t;
    t.id = tj.at("id").get<std::string>();
    t.command = tj.at("command").get<std::string>();
    t.status = parse_status(tj.at("status").get<std::string>());
    t.anchor = tj.at("anchor").get<std::string>();
    t.messages = tj.at("messages").get<std::vector<std::string>>();
    t.results = tj.at("results");
    for (const auto& i : tj.at("intervals")) {
      t.intervals.push_back({i.at("label").get<std::string>(), i.at("p").get<std::string>(), i.at("lower").get<std::string>(),
                             i.at("upper").get<std::string>(), i.at("method").get<std::string>()});
    }
    r.tasks.push_back(std::move(t));
  }
  return r;
}

std::string render_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

namespace {

void render_value(std::string& out, const std::string& path, const json& v) {
  if (v.is_object() && !v.empty()) {
    for (auto it = v.begin(); it != v.end(); ++it) render_value(out, path.empty() ? it.key() : path + "." + it.key(), it.value());
    return;
  }
  out += "  " + path + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
}

}  // namespace

std::string render_text(const Report& r, bool with_timings) {
  std::string out = "spec: " + r.spec + "\nseed: " + std::to_string(r.seed) + "\n";
  for (const auto& t : r.tasks) {
    out += "\n== task " + t.id + ": " + t.command + " [" + status_name(t.status) + "]\n";
    out += "anchor: " + t.anchor + "\n";
    if (with_timings) out += "time: " + format_double(t.seconds) + " s\n";
    for (const auto& m : t.messages) out += "- " + m + "\n";
    render_value(out, "", t.results);
    for (const auto& i : t.intervals) {
      out += "  interval " + i.label + " p=" + i.p + ": [" + i.lower + ", " + i.upper + "] (" + i.method + ")\n";
    }
  }
  out += "\nsummary: " + std::to_string(r.count(Status::Pass)) + " pass, " + std::to_string(r.count(Status::Fail)) +
         " fail, " + std::to_string(r.count(Status::Inconclusive)) + " inconclusive-interval\n";
  return out;
}

}  // namespace lpg::cli
