#pragma once

// Independent reference implementations used only by the tests. These stay
// deliberately naive (dense sampling, homogeneous-matrix composition, flat
// stable sorts) so they share no code path with the library.

#include "sgr/rank_partitioning.hpp"
#include "sgr/robot_model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace oracles {

// Minimum distance from p to the segment by dense sampling of the parameter.
inline double sampledPointSegmentDistance(const sgr::Vec3d& p,
                                          const sgr::Segment3<double>& s,
                                          int samples) {
  const sgr::Vec3d d = s.b - s.a;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    best = std::min(best, (p - (s.a + t * d)).norm());
  }
  return best;
}

inline bool insideCylinder(const sgr::Vec3d& p, const sgr::Cylinder<double>& c) {
  const double z = p.z() - c.base_center.z();
  if (z < 0 || z > c.height) return false;
  const double dx = p.x() - c.base_center.x();
  const double dy = p.y() - c.base_center.y();
  return dx * dx + dy * dy <= c.radius * c.radius;
}

inline bool sampledSegmentCylinderIntersects(const sgr::Segment3<double>& s,
                                             const sgr::Cylinder<double>& c,
                                             int samples) {
  const sgr::Vec3d d = s.b - s.a;
  for (int i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    if (insideCylinder(s.a + t * d, c)) return true;
  }
  return false;
}

// Signed clearance of the segment to the cylinder boundary, approximated by
// sampling; used to skip pairs the spec leaves unclassified.
inline double sampledBoundaryClearance(const sgr::Segment3<double>& s,
                                       const sgr::Cylinder<double>& c,
                                       int samples) {
  const sgr::Vec3d d = s.b - s.a;
  double clearance = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    const sgr::Vec3d p = s.a + t * d;
    const double radial = std::hypot(p.x() - c.base_center.x(),
                                     p.y() - c.base_center.y());
    const double z = p.z() - c.base_center.z();
    // distance to the boundary of the closed volume
    double b;
    if (radial <= c.radius && z >= 0 && z <= c.height) {
      b = std::min({c.radius - radial, z, c.height - z});
    } else {
      const double dr = std::max(0.0, radial - c.radius);
      const double dz = std::max({0.0, -z, z - c.height});
      b = std::hypot(dr, dz);
    }
    clearance = std::min(clearance, b);
  }
  return clearance;
}

// Chain of 4x4 homogeneous transforms, composed independently of the
// library's frame arithmetic.
inline std::vector<sgr::Vec3d> homogeneousChain(
    const sgr::Vec3d& base, const sgr::Mat3d& base_rotation,
    const std::vector<std::array<double, 3>>& joints /* tx, ty, length */) {
  Eigen::Matrix4d T = Eigen::Matrix4d::Identity();
  T.topLeftCorner<3, 3>() = base_rotation;
  T.topRightCorner<3, 1>() = base;
  std::vector<sgr::Vec3d> nodes{base};
  for (const auto& [tx, ty, len] : joints) {
    Eigen::Matrix4d Rx = Eigen::Matrix4d::Identity();
    Rx.topLeftCorner<3, 3>() = sgr::rotationX(tx);
    Eigen::Matrix4d Ry = Eigen::Matrix4d::Identity();
    Ry.topLeftCorner<3, 3>() = sgr::rotationY(ty);
    Eigen::Matrix4d Tz = Eigen::Matrix4d::Identity();
    Tz(2, 3) = len;
    T = T * Rx * Ry * Tz;
    nodes.push_back(T.topRightCorner<3, 1>());
  }
  return nodes;
}

// Flat stable lexicographic sort on binned key tuples: the declared
// equivalent of the recursive partition sorting.
inline std::vector<int> lexicographicRanks(
    const std::vector<sgr::FitnessVector>& population,
    const sgr::PriorityOrder& order, const sgr::BinSpec& bins) {
  const int n = static_cast<int>(population.size());
  std::vector<std::array<double, 5>> keys(n);
  for (int i = 0; i < n; ++i) {
    for (int d = 0; d < 5; ++d) {
      const double v = sgr::objectiveValue(population[i], order[d]);
      const double w = bins.width[static_cast<int>(order[d])];
      keys[i][d] = (w > 0) ? std::floor(v / w) : v;
    }
  }
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return keys[a] < keys[b]; });
  std::vector<int> ranks(n);
  for (int r = 0; r < n; ++r) ranks[idx[r]] = r + 1;
  return ranks;
}

inline sgr::FitnessVector randomFitness(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> cont(0.0, 3.0);
  std::uniform_int_distribution<int> ints(0, 6);
  std::uniform_real_distribution<double> len(0.0, 40.0);
  sgr::FitnessVector f;
  f.f_ik = cont(rng);
  f.f_links_to_seg = ints(rng);
  f.f_undulation = 12.5 * ints(rng);
  f.f_links_on_seg = ints(rng);
  f.f_length = len(rng);
  return f;
}

inline sgr::Genotype randomGenotype(const sgr::Task& task,
                                    std::mt19937_64& rng) {
  const sgr::GeneBounds bounds = geneBounds(task);
  sgr::Genotype g = sgr::Genotype::zeros(
      static_cast<int>(task.targets.size()), task.max_links);
  for (Eigen::Index k = 0; k < g.genes.size(); ++k) {
    if (bounds.lower[k] == bounds.upper[k]) {
      g.genes[k] = bounds.lower[k];
    } else {
      g.genes[k] = std::uniform_real_distribution<double>(
          bounds.lower[k], bounds.upper[k])(rng);
    }
  }
  return g;
}

// Single target straight below a ceiling-mounted base, no obstacles.
inline sgr::Task trivialTask(int max_links = 5) {
  sgr::Task task;
  task.name = "trivial";
  task.home.position = sgr::Vec3d(0, 0, 150);
  task.home.rotation = sgr::rotationY(M_PI);  // grow toward -z
  sgr::Target t;
  t.position = sgr::Vec3d(0, 0, 30);
  t.approach_polar = 0;  // approached from above
  t.approach_azimuth = 0;
  t.segment_length = 150;
  task.targets.push_back(t);
  task.max_links = max_links;
  task.theta_bounds = {-M_PI / 4, M_PI / 4};
  task.length_bounds = {25, 70};
  return task;
}

}  // namespace oracles
