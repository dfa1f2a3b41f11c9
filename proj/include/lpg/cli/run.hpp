#pragma once

#include <map>
#include <string>

#include "lpg/cli/report.hpp"
#include "lpg/cli/spec.hpp"
#include "lpg/kernels.hpp"

namespace lpg::cli {

struct Tolerances {
  double sandwich = 1e-9;  // slack in sup <= lambda <= I
  double collapse = 1e-9;  // lambda interval vs sup norm on C(G^0)
  double interval = 1e-6;  // relative width above which an interval is inconclusive

  // KEY=VAL with KEY in {sandwich, collapse, interval}; throws
  // std::invalid_argument otherwise.
  void set(const std::string& assignment);
};

struct RunOptions {
  std::uint64_t seed = 1;
  Tolerances tolerances;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
};

TaskReport run_task(const SpecFile& spec, const TaskDef& task, const RunOptions& opts);
// Tasks run concurrently under a parallel policy; report order is spec order.
Report run(const SpecFile& spec, const RunOptions& opts);

}  // namespace lpg::cli
