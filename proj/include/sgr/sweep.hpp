#pragma once

// Repeated seeded runs over a grid of engine configurations, with global
// rank aggregation of the retrieved bests through Rank Partitioning.

#include "sgr/task_io.hpp"

#include <filesystem>
#include <optional>
#include <vector>

namespace sgr {

// Stable per-run stream derivation from the master seed (splitmix64 mixing).
std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t combo,
                         std::uint64_t run);

struct SweepOptions {
  int runs_per_combo = 50;
  int parallelism = 1;
  std::uint64_t master_seed = 1;
  // When set, every RunRecord and the rank summary are persisted here.
  std::optional<std::filesystem::path> out_dir;
};

struct SweepEntry {
  int combo_index = 0;
  int run_index = 0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  RunRecord record;     // valid when !failed
  int global_rank = 0;  // 1..#successful runs, 0 when failed
};

struct SweepResult {
  std::string task_name;
  std::vector<SweepEntry> entries;  // combo-major, run-minor order
};

SweepResult runSweep(const Task& task,
                     const std::vector<EngineConfig>& combinations,
                     const SweepOptions& options,
                     const PenaltyConfig& penalty = {},
                     const PriorityOrder& order = kDefaultPriority,
                     const BinSpec& bins = {});

// Rank summary written next to the per-run solutions.
void saveSweepSummary(const SweepResult& result,
                      const std::filesystem::path& path);
SweepResult loadSweepSummary(const std::filesystem::path& path);

// The 58 parameter combinations of the reference study: 12 GA, 27 PSO,
// 18 DE and 1 BBBC.
std::vector<EngineConfig> referenceGrid(int population, int generations);

std::vector<EngineConfig> gridFromJson(const nlohmann::json& j);
std::vector<EngineConfig> loadGrid(const std::filesystem::path& path);

}  // namespace sgr
