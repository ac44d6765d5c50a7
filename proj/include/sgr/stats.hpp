#pragma once

// Friedman's test with the Bonferroni-Dunn post-hoc procedure over
// per-block algorithm ranks.

#include "sgr/rank_partitioning.hpp"

#include <vector>

namespace sgr {

struct FriedmanResult {
  double chi2 = 0;
  std::vector<double> mean_ranks;              // per algorithm
  double critical_difference = 0;              // Bonferroni-Dunn CD
  std::vector<std::vector<bool>> significant;  // k x k, symmetric
};

// Inverse standard normal CDF (Acklam's rational approximation).
double normalQuantile(double p);

// ranks: blocks x k matrix of within-block ranks (ties may carry averaged
// ranks). chi2 follows the Friedman statistic; pairs whose mean-rank gap
// reaches the Bonferroni-Dunn critical difference at level alpha are
// flagged significant. An all-ties matrix yields chi2 = 0.
FriedmanResult friedmanTest(const std::vector<std::vector<double>>& ranks,
                            double alpha);

// Within-block ranks (1..k, ties averaged) from the binned key comparison of
// each block's fitness vectors; blocks[b][j] is algorithm j's result in
// block b.
std::vector<std::vector<double>> rankMatrixFromFitness(
    const std::vector<std::vector<FitnessVector>>& blocks,
    const PriorityOrder& order = kDefaultPriority, const BinSpec& bins = {});

}  // namespace sgr
