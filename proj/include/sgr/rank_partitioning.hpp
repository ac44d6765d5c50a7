#pragma once

// Rank Partitioning: priority-ordered, binned, recursive partition sorting
// of fitness vectors into a single total order, plus the pairwise comparator
// derived from it.

#include "sgr/evaluation.hpp"

#include <array>
#include <span>
#include <vector>

namespace sgr {

enum class Objective : int {
  ik = 0,
  links_to_seg,
  undulation,
  links_on_seg,
  length,
};

using PriorityOrder = std::array<Objective, 5>;

inline constexpr PriorityOrder kDefaultPriority{
    Objective::ik, Objective::links_to_seg, Objective::undulation,
    Objective::links_on_seg, Objective::length};

// Bin width per objective, indexed by Objective; 0 means exact comparison.
struct BinSpec {
  std::array<double, 5> width{0.5, 0, 0, 0, 5.0};
};

double objectiveValue(const FitnessVector& f, Objective key);

// Key tuple in priority order; binned entries become floor(v / width).
std::array<double, 5> binnedKey(const FitnessVector& f,
                                const PriorityOrder& order, const BinSpec& bins);

// 1-based ranks, a permutation of 1..N. Individuals with identical key
// tuples keep input order.
std::vector<int> rankPartition(std::span<const FitnessVector> population,
                               const PriorityOrder& order = kDefaultPriority,
                               const BinSpec& bins = {});

enum class Ordering { a_better, b_better, tie };

Ordering compare(const FitnessVector& a, const FitnessVector& b,
                 const PriorityOrder& order = kDefaultPriority,
                 const BinSpec& bins = {});

// Index of the winning candidate, or -1 when the incumbent is retained
// (ties go to the incumbent).
int selectBest(const FitnessVector& incumbent,
               std::span<const FitnessVector> candidates,
               const PriorityOrder& order = kDefaultPriority,
               const BinSpec& bins = {});

}  // namespace sgr
