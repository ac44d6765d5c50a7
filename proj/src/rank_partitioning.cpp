#include "sgr/rank_partitioning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sgr {

double objectiveValue(const FitnessVector& f, Objective key) {
  switch (key) {
    case Objective::ik: return f.f_ik;
    case Objective::links_to_seg: return f.f_links_to_seg;
    case Objective::undulation: return f.f_undulation;
    case Objective::links_on_seg: return f.f_links_on_seg;
    case Objective::length: return f.f_length;
  }
  return 0;
}

std::array<double, 5> binnedKey(const FitnessVector& f,
                                const PriorityOrder& order,
                                const BinSpec& bins) {
  std::array<double, 5> key;
  for (int d = 0; d < 5; ++d) {
    const double v = objectiveValue(f, order[d]);
    const double w = bins.width[static_cast<int>(order[d])];
    key[d] = (w > 0) ? std::floor(v / w) : v;
  }
  return key;
}

namespace {

// Stable sort on the current key component, then recurse into each run of
// equal values with the next-priority component.
void partitionSort(std::vector<int>::iterator lo, std::vector<int>::iterator hi,
                   int depth, const std::vector<std::array<double, 5>>& keys) {
  if (depth == 5 || hi - lo <= 1) return;
  std::stable_sort(lo, hi, [&](int a, int b) {
    return keys[a][depth] < keys[b][depth];
  });
  auto run_begin = lo;
  while (run_begin != hi) {
    auto run_end = run_begin + 1;
    while (run_end != hi &&
           keys[*run_end][depth] == keys[*run_begin][depth]) {
      ++run_end;
    }
    partitionSort(run_begin, run_end, depth + 1, keys);
    run_begin = run_end;
  }
}

}  // namespace

std::vector<int> rankPartition(std::span<const FitnessVector> population,
                               const PriorityOrder& order, const BinSpec& bins) {
  const int n = static_cast<int>(population.size());
  std::vector<std::array<double, 5>> keys(n);
  for (int i = 0; i < n; ++i) keys[i] = binnedKey(population[i], order, bins);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  partitionSort(idx.begin(), idx.end(), 0, keys);
  std::vector<int> ranks(n);
  for (int r = 0; r < n; ++r) ranks[idx[r]] = r + 1;
  return ranks;
}

Ordering compare(const FitnessVector& a, const FitnessVector& b,
                 const PriorityOrder& order, const BinSpec& bins) {
  const auto ka = binnedKey(a, order, bins);
  const auto kb = binnedKey(b, order, bins);
  for (int d = 0; d < 5; ++d) {
    if (ka[d] < kb[d]) return Ordering::a_better;
    if (ka[d] > kb[d]) return Ordering::b_better;
  }
  return Ordering::tie;
}

int selectBest(const FitnessVector& incumbent,
               std::span<const FitnessVector> candidates,
               const PriorityOrder& order, const BinSpec& bins) {
  int best = -1;
  const FitnessVector* best_fitness = &incumbent;
  for (int i = 0; i < static_cast<int>(candidates.size()); ++i) {
    if (compare(candidates[i], *best_fitness, order, bins) ==
        Ordering::a_better) {
      best = i;
      best_fitness = &candidates[i];
    }
  }
  return best;
}

}  // namespace sgr
