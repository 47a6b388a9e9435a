#pragma once
// Task results and their serialization.

#include <functional>
#include <string>
#include <vector>

#include "cgslab/app.hpp"

namespace cgslab {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

struct TaskOutput {
  json summary = json::object();
  std::vector<Table> tables;
};

struct Task {
  std::string name;
  std::function<TaskOutput()> body;
};

struct TaskResult {
  std::string name;
  TaskOutput output;
  double wall_seconds = 0.0;
};

/// Runs tasks over `workers` threads; results come back in task order. The
/// first failure (in task order) is rethrown with the task name prefixed.
std::vector<TaskResult> run_tasks(const std::vector<Task>& tasks, unsigned workers,
                                  const std::string& context);

/// Shortest round-trip representation, so identical runs give identical bytes.
std::string format_number(double x);

std::string render_csv(const Table& t, const std::string& run_id);

/// Writes `bytes` to dir/name and returns its digest entry.
FileDigest write_file(const std::string& dir, const std::string& name, const std::string& bytes);

}  // namespace cgslab
