// Command-line front end: single optimization runs, parameter sweeps and
// the Friedman/Bonferroni-Dunn comparison over sweep results.

#include "sgr/stats.hpp"
#include "sgr/sweep.hpp"
#include "sgr/task_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <map>

namespace {

// --param key=value pairs override the algorithm-specific defaults.
void applyParam(sgr::EngineConfig& config, const std::string& key,
                const std::string& value) {
  using sgr::Algorithm;
  auto num = [&]() { return std::stod(value); };
  if (key == "alpha") {
    config.ga.alpha = num();
  } else if (key == "pc") {
    config.ga.crossover_prob = num();
  } else if (key == "pm") {
    if (value == "dynamic") {
      config.ga.dynamic_mutation = true;
    } else {
      config.ga.dynamic_mutation = false;
      config.ga.mutation_prob = num();
    }
  } else if (key == "omega") {
    config.pso.omega = num();
  } else if (key == "c1") {
    config.pso.c1 = num();
  } else if (key == "c2") {
    config.pso.c2 = num();
  } else if (key == "variant") {
    config.de.variant = sgr::deVariantFromName(value);
  } else if (key == "f") {
    config.de.weight = num();
  } else if (key == "cr") {
    config.de.crossover_rate = num();
  } else if (key == "elitist") {
    config.elitist = (value == "true" || value == "1");
  } else {
    throw sgr::ValidationError("unknown parameter: " + key);
  }
}

int runOptimize(const std::string& task_file, const std::string& algo,
                const std::vector<std::string>& params, std::uint64_t seed,
                int population, int generations, const std::string& out_file,
                const std::string& scene_file) {
  const sgr::Task task = sgr::loadTask(task_file);
  sgr::EngineConfig config =
      sgr::EngineConfig::defaults(sgr::algorithmFromName(algo));
  config.population = population;
  config.generations = generations;
  config.seed = seed;
  for (const std::string& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) {
      throw sgr::ValidationError("--param expects key=value, got: " + p);
    }
    applyParam(config, p.substr(0, eq), p.substr(eq + 1));
  }

  const auto t0 = std::chrono::steady_clock::now();
  const sgr::RunResult run = sgr::runEngine(task, config);
  const auto t1 = std::chrono::steady_clock::now();

  sgr::RunRecord record;
  record.task_name = task.name;
  record.config = config;
  record.seed = seed;
  record.best = run.best;
  record.best_extended = run.best_extended;
  record.history = run.history;
  record.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

  const sgr::FitnessVector& f = record.best.fitness;
  std::cout << "task " << task.name << " algo " << algo << " seed " << seed
            << "\n"
            << "  ik=" << f.f_ik << " links_to_seg=" << f.f_links_to_seg
            << " undulation=" << f.f_undulation
            << " links_on_seg=" << f.f_links_on_seg
            << " length=" << f.f_length << " violations=" << f.violations
            << (f.feasible ? " (feasible)" : " (infeasible)") << "\n"
            << "  wall " << record.wall_seconds << " s\n";

  if (!out_file.empty()) sgr::saveSolution(record, out_file);
  if (!scene_file.empty()) sgr::exportScene(record, task, scene_file);
  return 0;
}

int runSweepCommand(const std::string& tasks_dir, const std::string& grid_file,
                    int runs, const std::string& out_dir, std::uint64_t seed,
                    int parallel) {
  std::vector<sgr::EngineConfig> grid;
  if (grid_file.empty()) {
    grid = sgr::referenceGrid(500, 500);
  } else {
    grid = sgr::loadGrid(grid_file);
  }
  sgr::SweepOptions options;
  options.runs_per_combo = runs;
  options.parallelism = parallel;
  options.master_seed = seed;
  options.out_dir = out_dir;

  bool any = false;
  for (const auto& entry : std::filesystem::directory_iterator(tasks_dir)) {
    if (entry.path().extension() != ".json") continue;
    any = true;
    const sgr::Task task = sgr::loadTask(entry.path());
    std::cout << "sweep: task " << task.name << " (" << grid.size()
              << " combinations x " << runs << " runs)\n";
    const sgr::SweepResult result = sgr::runSweep(task, grid, options);
    int failed = 0;
    for (const auto& e : result.entries) failed += e.failed ? 1 : 0;
    std::cout << "  " << result.entries.size() - failed << " runs ranked, "
              << failed << " failed\n";
  }
  if (!any) throw sgr::ValidationError("no .json tasks in " + tasks_dir);
  return 0;
}

int runStats(const std::string& sweep_dir, double alpha) {
  // accept either the sweep root (per-task subdirectories) or one task dir
  std::vector<std::filesystem::path> summaries;
  if (std::filesystem::exists(std::filesystem::path(sweep_dir) / "ranks.json")) {
    summaries.push_back(std::filesystem::path(sweep_dir) / "ranks.json");
  } else {
    for (const auto& entry : std::filesystem::directory_iterator(sweep_dir)) {
      const auto summary = entry.path() / "ranks.json";
      if (std::filesystem::exists(summary)) summaries.push_back(summary);
    }
  }
  bool any = false;
  for (const auto& summary : summaries) {
    any = true;
    const sgr::SweepResult result = sgr::loadSweepSummary(summary);

    int combos = 0, runs = 0;
    for (const auto& e : result.entries) {
      combos = std::max(combos, e.combo_index + 1);
      runs = std::max(runs, e.run_index + 1);
    }
    std::vector<std::string> labels(combos);
    std::vector<std::vector<sgr::FitnessVector>> blocks;
    for (int r = 0; r < runs; ++r) {
      std::vector<sgr::FitnessVector> block(combos);
      bool complete = true;
      for (const auto& e : result.entries) {
        if (e.run_index != r) continue;
        if (e.failed) {
          complete = false;
        } else {
          block[e.combo_index] = e.record.best.fitness;
          labels[e.combo_index] = e.record.config.id;
        }
      }
      if (complete) blocks.push_back(std::move(block));
    }
    if (static_cast<int>(blocks.size()) < 2 || combos < 2) {
      std::cout << result.task_name << ": not enough complete blocks\n";
      continue;
    }

    const auto matrix = sgr::rankMatrixFromFitness(blocks);
    const sgr::FriedmanResult fr = sgr::friedmanTest(matrix, alpha);
    std::cout << "task " << result.task_name << ": " << blocks.size()
              << " blocks x " << combos << " algorithms\n"
              << "  chi2_F = " << fr.chi2
              << ", critical difference = " << fr.critical_difference << "\n";
    for (int j = 0; j < combos; ++j) {
      std::cout << "  " << (labels[j].empty() ? std::to_string(j) : labels[j])
                << ": mean rank " << fr.mean_ranks[j] << "\n";
    }
    int significant = 0;
    for (int i = 0; i < combos; ++i) {
      for (int j = i + 1; j < combos; ++j) {
        if (fr.significant[i][j]) ++significant;
      }
    }
    std::cout << "  " << significant << " of " << combos * (combos - 1) / 2
              << " pairs significant at alpha=" << alpha << "\n";
  }
  if (!any) throw sgr::ValidationError("no ranks.json under " + sweep_dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soft growing manipulator design optimizer"};
  app.require_subcommand(1);

  std::string task_file, algo = "ga", out_file, scene_file;
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  int population = 500, generations = 500;
  auto* optimize = app.add_subcommand("optimize", "run one seeded optimization");
  optimize->add_option("--task", task_file, "task JSON file")->required();
  optimize->add_option("--algo", algo, "ga|pso|de|bbbc");
  optimize->add_option("--param", params, "key=value overrides");
  optimize->add_option("--seed", seed, "RNG seed");
  optimize->add_option("--pop", population, "population size");
  optimize->add_option("--gens", generations, "generations");
  optimize->add_option("--out", out_file, "solution output file");
  optimize->add_option("--scene", scene_file, "scene CSV output file");

  std::string tasks_dir, grid_file, sweep_out;
  int runs = 50, parallel = 1;
  std::uint64_t master_seed = 1;
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  sweep->add_option("--tasks", tasks_dir, "directory of task JSON files")
      ->required();
  sweep->add_option("--grid", grid_file,
                    "grid JSON (defaults to the built-in 58 combinations)");
  sweep->add_option("--runs", runs, "runs per combination");
  sweep->add_option("--out", sweep_out, "output directory")->required();
  sweep->add_option("--seed", master_seed, "master seed");
  sweep->add_option("--parallel", parallel, "concurrent runs");

  std::string stats_dir;
  double alpha = 0.05;
  auto* stats = app.add_subcommand("stats", "Friedman + Bonferroni-Dunn");
  stats->add_option("--sweep", stats_dir, "sweep output directory")->required();
  stats->add_option("--alpha", alpha, "significance level");

  try {
    app.parse(argc, argv);
    if (optimize->parsed()) {
      return runOptimize(task_file, algo, params, seed, population, generations,
                         out_file, scene_file);
    }
    if (sweep->parsed()) {
      return runSweepCommand(tasks_dir, grid_file, runs, sweep_out, master_seed,
                             parallel);
    }
    return runStats(stats_dir, alpha);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const sgr::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const sgr::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 2;
  }
}
