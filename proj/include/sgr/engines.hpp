#pragma once

// The four evolutionary engines (GA, PSO, DE, BBBC) behind one shared
// generational framework, all driven by Rank Partitioning for selection
// pressure, survival and best tracking. Deterministic given a seed.

#include "sgr/rank_partitioning.hpp"
#include "sgr/robot_model.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace sgr {

enum class Algorithm { GA, PSO, DE, BBBC };

enum class DeVariant {
  rand1,
  best1,
  rand2,
  best2,
  current_to_best1,
  current_to_rand1,
};

struct GaParams {
  double alpha = 0.5;            // blx-alpha spread
  double crossover_prob = 1.0;
  double mutation_prob = 0.4;
  bool dynamic_mutation = false; // p_m(g) = 1 - g/G overrides mutation_prob
};

struct PsoParams {
  double omega = 0.8;
  double c1 = 2.5;
  double c2 = 0.5;
};

struct DeParams {
  DeVariant variant = DeVariant::rand1;
  double weight = 0.75;          // F
  double crossover_rate = 0.9;   // CR, binomial
};

struct EngineConfig {
  Algorithm algorithm = Algorithm::GA;
  int population = 500;
  int generations = 500;
  std::uint64_t seed = 0;
  bool elitist = true;  // mu+lambda merge-and-truncate; GA only by default
  GaParams ga;
  PsoParams pso;
  DeParams de;
  std::string id;

  static EngineConfig defaults(Algorithm algo);
};

struct Individual {
  Genotype genotype;
  FitnessVector fitness;
};

struct RunResult {
  Individual best;
  Extended best_extended;
  std::vector<FitnessVector> history;  // tracked best, init + one per generation
};

const char* algorithmName(Algorithm a);
Algorithm algorithmFromName(const std::string& name);
const char* deVariantName(DeVariant v);
DeVariant deVariantFromName(const std::string& name);

// One generation of offspring genotypes per engine. Exposed for testing;
// runEngine wires them into the generational loop.
std::vector<Genotype> gaStep(const std::vector<Individual>& pop,
                             const GaParams& params, double mutation_prob,
                             const GeneBounds& bounds, std::mt19937_64& rng,
                             const PriorityOrder& order, const BinSpec& bins);

struct Particle {
  Individual current;
  Eigen::VectorXd velocity;
  Individual personal_best;
};

// Moves every particle in place (positions and velocities); fitness fields
// are left stale and must be re-evaluated before updating personal bests.
void psoStep(std::vector<Particle>& swarm, const PsoParams& params,
             const Genotype& global_best, const GeneBounds& bounds,
             std::mt19937_64& rng);

// Trial vectors; per-slot replacement against the parents happens after
// evaluation.
std::vector<Genotype> deStep(const std::vector<Individual>& pop,
                             const DeParams& params, const Genotype& best,
                             const GeneBounds& bounds, std::mt19937_64& rng);

// Full regeneration around the crunch center with 1/(1+g) shrink.
std::vector<Genotype> bbbcStep(const Genotype& center, int population,
                               int generation, const GeneBounds& bounds,
                               std::mt19937_64& rng);

RunResult runEngine(const Task& task, const EngineConfig& config,
                    const PenaltyConfig& penalty = {},
                    const PriorityOrder& order = kDefaultPriority,
                    const BinSpec& bins = {});

}  // namespace sgr
