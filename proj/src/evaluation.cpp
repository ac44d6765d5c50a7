#include "sgr/evaluation.hpp"

#include <cmath>

namespace sgr {

namespace {

constexpr double kSteerTol = 1e-9;

// Zero never contributes an alternation.
int signAlternations(const std::vector<std::pair<double, double>>& steering,
                     bool y_axis) {
  int count = 0;
  for (std::size_t j = 0; j + 1 < steering.size(); ++j) {
    const double a = y_axis ? steering[j].second : steering[j].first;
    const double b = y_axis ? steering[j + 1].second : steering[j + 1].first;
    if ((a > 0 && b < 0) || (a < 0 && b > 0)) ++count;
  }
  return count;
}

}  // namespace

std::vector<std::pair<double, double>> effectiveSteering(
    const Genotype& g, int cfg, const ConfigExtension& ext) {
  std::vector<std::pair<double, double>> steering;
  steering.reserve(ext.eps_node + 1);
  for (int j = 0; j < ext.eps_node; ++j) {
    steering.emplace_back(g.thetaX(cfg, j), g.thetaY(cfg, j));
  }
  steering.emplace_back(ext.theta_eps_x, ext.theta_eps_y);
  return steering;
}

double objectiveIK(const std::vector<ConfigExtension>& ext) {
  double sum = 0;
  for (const ConfigExtension& e : ext) sum += e.seg_distance + e.shortfall;
  return sum;
}

int objectiveLinksToSegment(const std::vector<ConfigExtension>& ext) {
  int sum = 0;
  for (const ConfigExtension& e : ext) sum += e.eps_node;
  return sum;
}

int objectiveLinksOnSegment(const std::vector<ConfigExtension>& ext) {
  int sum = 0;
  for (const ConfigExtension& e : ext) sum += e.n_bar - e.eps_node;
  return sum;
}

double objectiveLength(const std::vector<ConfigExtension>& ext,
                       const Eigen::VectorXd& design) {
  double longest = 0;
  for (const ConfigExtension& e : ext) {
    double total = e.l_last;
    for (int j = 0; j < e.n_bar - 1; ++j) total += design[j];
    longest = std::max(longest, total);
  }
  return longest;
}

double objectiveUndulation(const Genotype& g,
                           const std::vector<ConfigExtension>& ext) {
  double mean = 0;
  for (std::size_t i = 0; i < ext.size(); ++i) {
    const auto steering = effectiveSteering(g, static_cast<int>(i), ext[i]);
    const int count = signAlternations(steering, false) +
                      signAlternations(steering, true);
    mean += static_cast<double>(count) / (2.0 * steering.size());
  }
  return mean / ext.size() * 100.0;
}

ConstraintBreakdown checkConstraints(const Genotype& g, const Extended& extended,
                                     const Task& task) {
  ConstraintBreakdown out;
  const double th_lo = task.theta_bounds.lo;
  const double th_hi = task.theta_bounds.hi;
  const double len_lo = task.length_bounds.lo;

  for (std::size_t i = 0; i < extended.ext.size(); ++i) {
    const ConfigExtension& ext = extended.ext[i];
    const ConfigChain& pheno = extended.phenotype.configs[i];
    const Segment3<double> seg = orientationSegment(task.targets[i]);

    if (ext.theta_eps_x < th_lo) ++out.theta_eps_bounds;
    if (ext.theta_eps_x > th_hi) ++out.theta_eps_bounds;
    if (ext.theta_eps_y < th_lo) ++out.theta_eps_bounds;
    if (ext.theta_eps_y > th_hi) ++out.theta_eps_bounds;

    if (ext.n_bar - ext.eps_node == 1 && ext.l_last < len_lo) {
      ++out.short_last_link;
    }

    const Vec3d toward_eps = pheno.nodes[ext.eps_node] - seg.a;
    if (toward_eps.norm() > 1e-12 &&
        angleBetween(toward_eps, Vec3d(seg.b - seg.a)) >= M_PI / 2) {
      ++out.overshoot;
    }

    bool collides = false;
    for (std::size_t k = 0; k + 1 < pheno.nodes.size() && !collides; ++k) {
      const Segment3<double> link{pheno.nodes[k], pheno.nodes[k + 1]};
      for (const auto& obstacle : task.obstacles) {
        if (segmentCylinderIntersects(link, obstacle)) {
          collides = true;
          break;
        }
      }
    }
    if (collides) ++out.collision;

    // A link must evert at least the minimum length before it may steer:
    // the straight prolongation from each steering joint must stay clear.
    const auto steering = effectiveSteering(g, static_cast<int>(i), ext);
    bool blocked = false;
    for (int j = 1; j <= ext.eps_node && !blocked; ++j) {
      if (std::abs(steering[j].first) <= kSteerTol &&
          std::abs(steering[j].second) <= kSteerTol) {
        continue;
      }
      const Vec3d prev = pheno.nodes[j] - pheno.nodes[j - 1];
      const double norm = prev.norm();
      if (norm <= 1e-12) continue;
      const Segment3<double> prolongation{
          pheno.nodes[j], pheno.nodes[j] + prev / norm * len_lo};
      for (const auto& obstacle : task.obstacles) {
        if (segmentCylinderIntersects(prolongation, obstacle)) {
          blocked = true;
          break;
        }
      }
    }
    if (blocked) ++out.cannot_steer;

    if (ext.shortfall > 0) ++out.unreachable;
  }
  return out;
}

FitnessVector applyPenalty(FitnessVector raw, int violations,
                           const PenaltyConfig& penalty) {
  const double add = penalty.R * violations;
  raw.f_ik += add;
  raw.f_links_to_seg += add;
  raw.f_undulation += add;
  raw.f_links_on_seg += add;
  raw.f_length += add;
  raw.violations = violations;
  raw.feasible = (violations == 0);
  return raw;
}

FitnessVector evaluate(const Genotype& g, const Task& task,
                       const PenaltyConfig& penalty) {
  const Extended extended = extendGenotype(g, task);
  FitnessVector raw;
  raw.f_ik = objectiveIK(extended.ext);
  raw.f_links_to_seg = objectiveLinksToSegment(extended.ext);
  raw.f_undulation = objectiveUndulation(g, extended.ext);
  raw.f_links_on_seg = objectiveLinksOnSegment(extended.ext);
  raw.f_length = objectiveLength(extended.ext, g.design());
  const ConstraintBreakdown breakdown = checkConstraints(g, extended, task);
  return applyPenalty(raw, breakdown.total(), penalty);
}

}  // namespace sgr
