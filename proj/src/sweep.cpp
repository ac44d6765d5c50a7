#include "sgr/sweep.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <thread>

namespace sgr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::string comboLabel(const EngineConfig& config, int index) {
  if (!config.id.empty()) return config.id;
  return std::string(algorithmName(config.algorithm)) + "_" +
         std::to_string(index);
}

}  // namespace

std::uint64_t deriveSeed(std::uint64_t master, std::uint64_t combo,
                         std::uint64_t run) {
  return splitmix64(splitmix64(splitmix64(master) ^ combo) ^ run);
}

SweepResult runSweep(const Task& task,
                     const std::vector<EngineConfig>& combinations,
                     const SweepOptions& options, const PenaltyConfig& penalty,
                     const PriorityOrder& order, const BinSpec& bins) {
  if (options.runs_per_combo < 1) {
    throw std::invalid_argument("runSweep: runs_per_combo must be >= 1");
  }
  SweepResult result;
  result.task_name = task.name;
  const int total =
      static_cast<int>(combinations.size()) * options.runs_per_combo;
  result.entries.resize(total);
  for (int c = 0; c < static_cast<int>(combinations.size()); ++c) {
    for (int r = 0; r < options.runs_per_combo; ++r) {
      SweepEntry& e = result.entries[c * options.runs_per_combo + r];
      e.combo_index = c;
      e.run_index = r;
      e.seed = deriveSeed(options.master_seed, static_cast<std::uint64_t>(c),
                          static_cast<std::uint64_t>(r));
    }
  }

  std::atomic<int> cursor{0};
  auto worker = [&]() {
    for (int i = cursor.fetch_add(1); i < total; i = cursor.fetch_add(1)) {
      SweepEntry& e = result.entries[i];
      EngineConfig config = combinations[e.combo_index];
      config.seed = e.seed;
      try {
        const auto t0 = std::chrono::steady_clock::now();
        RunResult run = runEngine(task, config, penalty, order, bins);
        const auto t1 = std::chrono::steady_clock::now();
        e.record.task_name = task.name;
        e.record.config = config;
        e.record.seed = e.seed;
        e.record.best = std::move(run.best);
        e.record.best_extended = std::move(run.best_extended);
        e.record.history = std::move(run.history);
        e.record.wall_seconds =
            std::chrono::duration<double>(t1 - t0).count();
      } catch (const std::exception& ex) {
        e.failed = true;
        e.error = ex.what();
      }
    }
  };

  const int threads = std::max(1, std::min(options.parallelism, total));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  // Pool the retrieved bests and rank them globally.
  std::vector<FitnessVector> pooled;
  std::vector<int> pooled_entry;
  for (int i = 0; i < total; ++i) {
    if (!result.entries[i].failed) {
      pooled.push_back(result.entries[i].record.best.fitness);
      pooled_entry.push_back(i);
    }
  }
  const std::vector<int> ranks = rankPartition(pooled, order, bins);
  for (std::size_t k = 0; k < pooled_entry.size(); ++k) {
    result.entries[pooled_entry[k]].global_rank = ranks[k];
  }

  if (options.out_dir) {
    const std::filesystem::path dir = *options.out_dir / task.name;
    std::filesystem::create_directories(dir);
    for (const SweepEntry& e : result.entries) {
      if (e.failed) continue;
      const std::string name =
          comboLabel(e.record.config, e.combo_index) + "_run" +
          std::to_string(e.run_index) + ".json";
      saveSolution(e.record, dir / name);
    }
    saveSweepSummary(result, dir / "ranks.json");
  }
  return result;
}

void saveSweepSummary(const SweepResult& result,
                      const std::filesystem::path& path) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["task"] = result.task_name;
  nlohmann::json entries = nlohmann::json::array();
  for (const SweepEntry& e : result.entries) {
    nlohmann::json ej = {{"combo_index", e.combo_index},
                         {"run_index", e.run_index},
                         {"seed", e.seed}};
    if (e.failed) {
      ej["failed"] = true;
      ej["error"] = e.error;
    } else {
      ej["combo_id"] = comboLabel(e.record.config, e.combo_index);
      ej["rank"] = e.global_rank;
      ej["fitness"] = fitnessToJson(e.record.best.fitness);
    }
    entries.push_back(ej);
  }
  j["entries"] = entries;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write summary: " + path.string());
  out << j.dump(2) << "\n";
}

SweepResult loadSweepSummary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open summary: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  SweepResult result;
  result.task_name = j.value("task", std::string());
  for (const auto& ej : j.at("entries")) {
    SweepEntry e;
    e.combo_index = ej.at("combo_index").get<int>();
    e.run_index = ej.at("run_index").get<int>();
    e.seed = ej.value("seed", std::uint64_t{0});
    e.failed = ej.value("failed", false);
    if (e.failed) {
      e.error = ej.value("error", std::string());
    } else {
      e.global_rank = ej.at("rank").get<int>();
      e.record.best.fitness = fitnessFromJson(ej.at("fitness"));
      e.record.config.id = ej.value("combo_id", std::string());
    }
    result.entries.push_back(e);
  }
  return result;
}

std::vector<EngineConfig> referenceGrid(int population, int generations) {
  std::vector<EngineConfig> grid;
  auto base = [&](Algorithm algo) {
    EngineConfig c = EngineConfig::defaults(algo);
    c.population = population;
    c.generations = generations;
    return c;
  };
  int ga_id = 0;
  for (double alpha : {0.5, 0.419, 0.381}) {
    for (int pm = 0; pm < 4; ++pm) {
      EngineConfig c = base(Algorithm::GA);
      c.ga.alpha = alpha;
      if (pm == 3) {
        c.ga.dynamic_mutation = true;
      } else {
        c.ga.mutation_prob = 0.2 * (pm + 1);
      }
      c.id = "ga_" + std::to_string(++ga_id);
      grid.push_back(c);
    }
  }
  int pso_id = 0;
  for (double omega : {0.6, 0.8, 1.0}) {
    for (double c1 : {0.5, 2.5, 5.0}) {
      for (double c2 : {0.5, 2.5, 5.0}) {
        EngineConfig c = base(Algorithm::PSO);
        c.pso = {omega, c1, c2};
        c.id = "pso_" + std::to_string(++pso_id);
        grid.push_back(c);
      }
    }
  }
  int de_id = 0;
  for (DeVariant variant :
       {DeVariant::rand1, DeVariant::best1, DeVariant::rand2, DeVariant::best2,
        DeVariant::current_to_best1, DeVariant::current_to_rand1}) {
    for (double f : {0.5, 0.75, 1.0}) {
      EngineConfig c = base(Algorithm::DE);
      c.de.variant = variant;
      c.de.weight = f;
      c.id = "de_" + std::to_string(++de_id);
      grid.push_back(c);
    }
  }
  EngineConfig bbbc = base(Algorithm::BBBC);
  bbbc.id = "bbbc_1";
  grid.push_back(bbbc);
  return grid;
}

std::vector<EngineConfig> gridFromJson(const nlohmann::json& j) {
  std::vector<EngineConfig> grid;
  for (const auto& cj : j.at("combinations")) {
    grid.push_back(engineConfigFromJson(cj));
  }
  return grid;
}

std::vector<EngineConfig> loadGrid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open grid: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return gridFromJson(j);
}

}  // namespace sgr
