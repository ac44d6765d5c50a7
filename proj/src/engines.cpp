#include "sgr/engines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sgr {

EngineConfig EngineConfig::defaults(Algorithm algo) {
  EngineConfig config;
  config.algorithm = algo;
  config.elitist = (algo == Algorithm::GA);
  return config;
}

const char* algorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::GA: return "ga";
    case Algorithm::PSO: return "pso";
    case Algorithm::DE: return "de";
    case Algorithm::BBBC: return "bbbc";
  }
  return "?";
}

Algorithm algorithmFromName(const std::string& name) {
  if (name == "ga") return Algorithm::GA;
  if (name == "pso") return Algorithm::PSO;
  if (name == "de") return Algorithm::DE;
  if (name == "bbbc") return Algorithm::BBBC;
  throw std::invalid_argument("unknown algorithm: " + name);
}

const char* deVariantName(DeVariant v) {
  switch (v) {
    case DeVariant::rand1: return "rand/1";
    case DeVariant::best1: return "best/1";
    case DeVariant::rand2: return "rand/2";
    case DeVariant::best2: return "best/2";
    case DeVariant::current_to_best1: return "current-to-best/1";
    case DeVariant::current_to_rand1: return "current-to-rand/1";
  }
  return "?";
}

DeVariant deVariantFromName(const std::string& name) {
  if (name == "rand/1") return DeVariant::rand1;
  if (name == "best/1") return DeVariant::best1;
  if (name == "rand/2") return DeVariant::rand2;
  if (name == "best/2") return DeVariant::best2;
  if (name == "current-to-best/1") return DeVariant::current_to_best1;
  if (name == "current-to-rand/1") return DeVariant::current_to_rand1;
  throw std::invalid_argument("unknown DE variant: " + name);
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double uniformIn(std::mt19937_64& rng, double lo, double hi) {
  if (lo == hi) return lo;
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

void clipToBounds(Genotype& g, const GeneBounds& bounds) {
  g.genes = g.genes.cwiseMax(bounds.lower).cwiseMin(bounds.upper);
}

Genotype randomGenotype(int targets, int links, const GeneBounds& bounds,
                        std::mt19937_64& rng) {
  Genotype g = Genotype::zeros(targets, links);
  for (Eigen::Index k = 0; k < g.genes.size(); ++k) {
    g.genes[k] = uniformIn(rng, bounds.lower[k], bounds.upper[k]);
  }
  return g;
}

// Binary tournament decided by the binned comparator; ties keep the first
// contestant.
int tournament(const std::vector<Individual>& pop, std::mt19937_64& rng,
               const PriorityOrder& order, const BinSpec& bins) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pop.size()) - 1);
  const int a = pick(rng);
  const int b = pick(rng);
  return compare(pop[b].fitness, pop[a].fitness, order, bins) ==
                 Ordering::b_better
             ? a
             : (compare(pop[a].fitness, pop[b].fitness, order, bins) ==
                        Ordering::b_better
                    ? b
                    : a);
}

int rankOneIndex(const std::vector<Individual>& pop, const PriorityOrder& order,
                 const BinSpec& bins) {
  std::vector<FitnessVector> fitness;
  fitness.reserve(pop.size());
  for (const Individual& ind : pop) fitness.push_back(ind.fitness);
  const std::vector<int> ranks = rankPartition(fitness, order, bins);
  for (int i = 0; i < static_cast<int>(ranks.size()); ++i) {
    if (ranks[i] == 1) return i;
  }
  return 0;
}

void drawDistinct(std::mt19937_64& rng, int n, int exclude, int count,
                  int* out) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int k = 0; k < count; ++k) {
    bool fresh = false;
    int candidate = 0;
    while (!fresh) {
      candidate = pick(rng);
      fresh = (candidate != exclude);
      for (int j = 0; j < k && fresh; ++j) fresh = (candidate != out[j]);
    }
    out[k] = candidate;
  }
}

}  // namespace

std::vector<Genotype> gaStep(const std::vector<Individual>& pop,
                             const GaParams& params, double mutation_prob,
                             const GeneBounds& bounds, std::mt19937_64& rng,
                             const PriorityOrder& order, const BinSpec& bins) {
  const int n = static_cast<int>(pop.size());
  std::vector<Genotype> offspring;
  offspring.reserve(n);
  for (int k = 0; k < n; ++k) {
    const Genotype& p1 = pop[tournament(pop, rng, order, bins)].genotype;
    const Genotype& p2 = pop[tournament(pop, rng, order, bins)].genotype;
    Genotype child = p1;
    if (uniform01(rng) < params.crossover_prob) {
      for (Eigen::Index d = 0; d < child.genes.size(); ++d) {
        const double lo = std::min(p1.genes[d], p2.genes[d]);
        const double hi = std::max(p1.genes[d], p2.genes[d]);
        const double spread = params.alpha * (hi - lo);
        child.genes[d] = uniformIn(rng, lo - spread, hi + spread);
      }
    }
    for (Eigen::Index d = 0; d < child.genes.size(); ++d) {
      if (uniform01(rng) < mutation_prob) {
        child.genes[d] = uniformIn(rng, bounds.lower[d], bounds.upper[d]);
      }
    }
    clipToBounds(child, bounds);
    offspring.push_back(std::move(child));
  }
  return offspring;
}

void psoStep(std::vector<Particle>& swarm, const PsoParams& params,
             const Genotype& global_best, const GeneBounds& bounds,
             std::mt19937_64& rng) {
  for (Particle& p : swarm) {
    Eigen::VectorXd& x = p.current.genotype.genes;
    for (Eigen::Index d = 0; d < x.size(); ++d) {
      const double r1 = uniform01(rng);
      const double r2 = uniform01(rng);
      double v = params.omega * p.velocity[d] +
                 params.c1 * r1 * (p.personal_best.genotype.genes[d] - x[d]) +
                 params.c2 * r2 * (global_best.genes[d] - x[d]);
      const double vmax = 0.2 * (bounds.upper[d] - bounds.lower[d]);
      v = std::clamp(v, -vmax, vmax);
      p.velocity[d] = v;
      x[d] = std::clamp(x[d] + v, bounds.lower[d], bounds.upper[d]);
    }
  }
}

std::vector<Genotype> deStep(const std::vector<Individual>& pop,
                             const DeParams& params, const Genotype& best,
                             const GeneBounds& bounds, std::mt19937_64& rng) {
  const int n = static_cast<int>(pop.size());
  const double F = params.weight;
  std::vector<Genotype> trials;
  trials.reserve(n);
  int r[5];
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd& x = pop[i].genotype.genes;
    Eigen::VectorXd mutant;
    switch (params.variant) {
      case DeVariant::rand1:
        drawDistinct(rng, n, i, 3, r);
        mutant = pop[r[0]].genotype.genes +
                 F * (pop[r[1]].genotype.genes - pop[r[2]].genotype.genes);
        break;
      case DeVariant::best1:
        drawDistinct(rng, n, i, 2, r);
        mutant = best.genes +
                 F * (pop[r[0]].genotype.genes - pop[r[1]].genotype.genes);
        break;
      case DeVariant::rand2:
        drawDistinct(rng, n, i, 5, r);
        mutant = pop[r[0]].genotype.genes +
                 F * (pop[r[1]].genotype.genes - pop[r[2]].genotype.genes) +
                 F * (pop[r[3]].genotype.genes - pop[r[4]].genotype.genes);
        break;
      case DeVariant::best2:
        drawDistinct(rng, n, i, 4, r);
        mutant = best.genes +
                 F * (pop[r[0]].genotype.genes - pop[r[1]].genotype.genes) +
                 F * (pop[r[2]].genotype.genes - pop[r[3]].genotype.genes);
        break;
      case DeVariant::current_to_best1:
        drawDistinct(rng, n, i, 2, r);
        mutant = x + F * (best.genes - x) +
                 F * (pop[r[0]].genotype.genes - pop[r[1]].genotype.genes);
        break;
      case DeVariant::current_to_rand1: {
        drawDistinct(rng, n, i, 3, r);
        const double K = uniform01(rng);
        mutant = x + K * (pop[r[0]].genotype.genes - x) +
                 F * (pop[r[1]].genotype.genes - pop[r[2]].genotype.genes);
        break;
      }
    }
    Genotype trial = pop[i].genotype;
    if (params.variant == DeVariant::current_to_rand1) {
      trial.genes = mutant;  // arithmetic variant, no binomial crossover
    } else {
      std::uniform_int_distribution<int> pick(
          0, static_cast<int>(x.size()) - 1);
      const int forced = pick(rng);
      for (Eigen::Index d = 0; d < x.size(); ++d) {
        if (d == forced || uniform01(rng) < params.crossover_rate) {
          trial.genes[d] = mutant[d];
        }
      }
    }
    clipToBounds(trial, bounds);
    trials.push_back(std::move(trial));
  }
  return trials;
}

std::vector<Genotype> bbbcStep(const Genotype& center, int population,
                               int generation, const GeneBounds& bounds,
                               std::mt19937_64& rng) {
  std::vector<Genotype> out;
  out.reserve(population);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double shrink = 1.0 / (1.0 + generation);
  for (int i = 0; i < population; ++i) {
    Genotype g = center;
    for (Eigen::Index d = 0; d < g.genes.size(); ++d) {
      const double range = bounds.upper[d] - bounds.lower[d];
      g.genes[d] = center.genes[d] + normal(rng) * range * shrink;
    }
    clipToBounds(g, bounds);
    out.push_back(std::move(g));
  }
  return out;
}

RunResult runEngine(const Task& task, const EngineConfig& config,
                    const PenaltyConfig& penalty, const PriorityOrder& order,
                    const BinSpec& bins) {
  if (config.population < 2) {
    throw std::invalid_argument("runEngine: population must be >= 2");
  }
  if (config.generations < 0) {
    throw std::invalid_argument("runEngine: generations must be >= 0");
  }

  const int targets = static_cast<int>(task.targets.size());
  const int links = task.max_links;
  const GeneBounds bounds = geneBounds(task);
  std::mt19937_64 rng(config.seed);

  auto evaluated = [&](Genotype g) {
    Individual ind;
    ind.fitness = evaluate(g, task, penalty);
    ind.genotype = std::move(g);
    return ind;
  };

  std::vector<Individual> pop;
  pop.reserve(config.population);
  for (int i = 0; i < config.population; ++i) {
    pop.push_back(evaluated(randomGenotype(targets, links, bounds, rng)));
  }

  std::vector<Particle> swarm;
  if (config.algorithm == Algorithm::PSO) {
    swarm.reserve(pop.size());
    for (const Individual& ind : pop) {
      Particle p;
      p.current = ind;
      p.velocity = Eigen::VectorXd::Zero(ind.genotype.genes.size());
      p.personal_best = ind;
      swarm.push_back(std::move(p));
    }
  }

  RunResult result;
  result.best = pop[rankOneIndex(pop, order, bins)];
  result.history.push_back(result.best.fitness);

  for (int g = 0; g < config.generations; ++g) {
    std::vector<Individual> next;
    switch (config.algorithm) {
      case Algorithm::GA: {
        const double pm = config.ga.dynamic_mutation
                              ? 1.0 - static_cast<double>(g) / config.generations
                              : config.ga.mutation_prob;
        std::vector<Genotype> offspring =
            gaStep(pop, config.ga, pm, bounds, rng, order, bins);
        next.reserve(offspring.size());
        for (Genotype& child : offspring) {
          next.push_back(evaluated(std::move(child)));
        }
        break;
      }
      case Algorithm::PSO: {
        const Genotype& gbest =
            pop[rankOneIndex(pop, order, bins)].genotype;
        psoStep(swarm, config.pso, gbest, bounds, rng);
        next.reserve(swarm.size());
        for (Particle& p : swarm) {
          p.current.fitness = evaluate(p.current.genotype, task, penalty);
          if (compare(p.current.fitness, p.personal_best.fitness, order,
                      bins) == Ordering::a_better) {
            p.personal_best = p.current;
          }
          next.push_back(p.current);
        }
        break;
      }
      case Algorithm::DE: {
        const Genotype& best_of_pop =
            pop[rankOneIndex(pop, order, bins)].genotype;
        std::vector<Genotype> trials =
            deStep(pop, config.de, best_of_pop, bounds, rng);
        next.reserve(trials.size());
        for (int i = 0; i < static_cast<int>(trials.size()); ++i) {
          Individual trial = evaluated(std::move(trials[i]));
          // per-slot selection: a trial never displaces a better parent
          next.push_back(compare(trial.fitness, pop[i].fitness, order, bins) ==
                                 Ordering::a_better
                             ? std::move(trial)
                             : pop[i]);
        }
        break;
      }
      case Algorithm::BBBC: {
        const Genotype& center =
            pop[rankOneIndex(pop, order, bins)].genotype;
        std::vector<Genotype> bang =
            bbbcStep(center, config.population, g, bounds, rng);
        next.reserve(bang.size());
        for (Genotype& child : bang) {
          next.push_back(evaluated(std::move(child)));
        }
        break;
      }
    }

    if (config.elitist) {
      // mu+lambda: merge parents and offspring, keep the N best in rank order
      std::vector<Individual> merged = pop;
      merged.insert(merged.end(), std::make_move_iterator(next.begin()),
                    std::make_move_iterator(next.end()));
      std::vector<FitnessVector> fitness;
      fitness.reserve(merged.size());
      for (const Individual& ind : merged) fitness.push_back(ind.fitness);
      const std::vector<int> ranks = rankPartition(fitness, order, bins);
      std::vector<Individual> survivors(config.population);
      for (int i = 0; i < static_cast<int>(merged.size()); ++i) {
        if (ranks[i] <= config.population) {
          survivors[ranks[i] - 1] = std::move(merged[i]);
        }
      }
      pop = std::move(survivors);
    } else {
      pop = std::move(next);
    }

    const Individual& generation_best = pop[rankOneIndex(pop, order, bins)];
    if (selectBest(result.best.fitness, {&generation_best.fitness, 1}, order,
                   bins) == 0) {
      result.best = generation_best;
    }
    result.history.push_back(result.best.fitness);
  }

  result.best_extended = extendGenotype(result.best.genotype, task);
  return result;
}

}  // namespace sgr
