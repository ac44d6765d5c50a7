#pragma once

// Task and solution file I/O (JSON) plus CSV scene export for plotting.

#include "sgr/engines.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace sgr {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Angles in task files may be given in degrees or radians via an explicit
// units field; everything is radians in memory.
Task taskFromJson(const nlohmann::json& j);
Task loadTask(const std::filesystem::path& path);

// Enforces the task invariants (bounds ordering, n >= 2, at least one
// target, positive obstacle dimensions, no target inside an obstacle).
void validateTask(const Task& task);

nlohmann::json engineConfigToJson(const EngineConfig& config);
EngineConfig engineConfigFromJson(const nlohmann::json& j);

nlohmann::json fitnessToJson(const FitnessVector& f);
FitnessVector fitnessFromJson(const nlohmann::json& j);

struct RunRecord {
  std::string task_name;
  EngineConfig config;
  std::uint64_t seed = 0;
  Individual best;
  Extended best_extended;
  std::vector<FitnessVector> history;
  double wall_seconds = 0;  // in-memory only, never persisted
};

nlohmann::json solutionToJson(const RunRecord& record);
RunRecord solutionFromJson(const nlohmann::json& j);

void saveSolution(const RunRecord& record, const std::filesystem::path& path);
RunRecord loadSolution(const std::filesystem::path& path);

// Per-configuration node polylines plus obstacle cylinders and target
// segments as CSV blocks.
void exportScene(const RunRecord& record, const Task& task,
                 const std::filesystem::path& path);

}  // namespace sgr
