#include "sgr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sgr {

double normalQuantile(double p) {
  if (!(p > 0 && p < 1)) {
    throw std::invalid_argument("normalQuantile: p must be in (0,1)");
  }
  // Acklam's rational approximation, refined with one Halley step.
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= 1 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) *
        q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
  return x - u / (1 + x * u / 2);
}

FriedmanResult friedmanTest(const std::vector<std::vector<double>>& ranks,
                            double alpha) {
  const int blocks = static_cast<int>(ranks.size());
  if (blocks < 2) {
    throw std::invalid_argument("friedmanTest: need at least 2 blocks");
  }
  const int k = static_cast<int>(ranks.front().size());
  if (k < 2) {
    throw std::invalid_argument("friedmanTest: need at least 2 algorithms");
  }
  for (const auto& row : ranks) {
    if (static_cast<int>(row.size()) != k) {
      throw std::invalid_argument("friedmanTest: ragged rank matrix");
    }
  }

  FriedmanResult result;
  result.mean_ranks.assign(k, 0);
  for (const auto& row : ranks) {
    for (int j = 0; j < k; ++j) result.mean_ranks[j] += row[j];
  }
  for (int j = 0; j < k; ++j) result.mean_ranks[j] /= blocks;

  double sum_sq = 0;
  for (int j = 0; j < k; ++j) sum_sq += result.mean_ranks[j] * result.mean_ranks[j];
  result.chi2 =
      12.0 * blocks / (k * (k + 1.0)) * (sum_sq - k * (k + 1.0) * (k + 1.0) / 4.0);

  // Bonferroni-Dunn: two-tailed normal critical value at alpha / (k - 1).
  const double z = normalQuantile(1.0 - alpha / (2.0 * (k - 1)));
  result.critical_difference = z * std::sqrt(k * (k + 1.0) / (6.0 * blocks));

  result.significant.assign(k, std::vector<bool>(k, false));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j &&
          std::abs(result.mean_ranks[i] - result.mean_ranks[j]) >=
              result.critical_difference) {
        result.significant[i][j] = true;
      }
    }
  }
  return result;
}

std::vector<std::vector<double>> rankMatrixFromFitness(
    const std::vector<std::vector<FitnessVector>>& blocks,
    const PriorityOrder& order, const BinSpec& bins) {
  std::vector<std::vector<double>> matrix;
  matrix.reserve(blocks.size());
  for (const auto& block : blocks) {
    const int k = static_cast<int>(block.size());
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
      return compare(block[a], block[b], order, bins) == Ordering::a_better;
    });
    std::vector<double> row(k, 0);
    int pos = 0;
    while (pos < k) {
      int end = pos + 1;
      while (end < k && compare(block[idx[pos]], block[idx[end]], order,
                                bins) == Ordering::tie) {
        ++end;
      }
      // average rank over the tie group
      const double avg = (pos + 1 + end) / 2.0;
      for (int t = pos; t < end; ++t) row[idx[t]] = avg;
      pos = end;
    }
    matrix.push_back(std::move(row));
  }
  return matrix;
}

}  // namespace sgr
