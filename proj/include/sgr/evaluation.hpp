#pragma once

// Five objectives, eight kinematic constraints and the static penalty.

#include "sgr/robot_model.hpp"

#include <utility>
#include <vector>

namespace sgr {

struct FitnessVector {
  double f_ik = 0;            // merged inverse-kinematics distance, cm
  double f_links_to_seg = 0;  // links spent before the orientation segment
  double f_undulation = 0;    // steering-sign alternations, percent
  double f_links_on_seg = 0;  // links lying on the orientation segment
  double f_length = 0;        // longest configuration, cm
  int violations = 0;
  bool feasible = true;
};

struct PenaltyConfig {
  double R = 100.0;
};

struct ConstraintBreakdown {
  int theta_eps_bounds = 0;  // aim angles outside the joint bounds (4 checks)
  int short_last_link = 0;   // single on-segment link below the length bound
  int overshoot = 0;         // configuration past the segment endpoint
  int collision = 0;         // phenotype link inside an obstacle
  int cannot_steer = 0;      // steering joint too close to an obstacle
  int unreachable = 0;       // positive shortfall

  int total() const {
    return theta_eps_bounds + short_last_link + overshoot + collision +
           cannot_steer + unreachable;
  }
};

// Steering actually applied at joints 0..eps_node of one configuration:
// stored genes up to the aim node, then the solved aim angles.
std::vector<std::pair<double, double>> effectiveSteering(
    const Genotype& g, int cfg, const ConfigExtension& ext);

double objectiveIK(const std::vector<ConfigExtension>& ext);
int objectiveLinksToSegment(const std::vector<ConfigExtension>& ext);
int objectiveLinksOnSegment(const std::vector<ConfigExtension>& ext);
double objectiveLength(const std::vector<ConfigExtension>& ext,
                       const Eigen::VectorXd& design);
double objectiveUndulation(const Genotype& g,
                           const std::vector<ConfigExtension>& ext);

ConstraintBreakdown checkConstraints(const Genotype& g, const Extended& extended,
                                     const Task& task);

// Adds R per violation to every objective so infeasible individuals stay
// comparable but dominated under any priority order.
FitnessVector applyPenalty(FitnessVector raw, int violations,
                           const PenaltyConfig& penalty);

FitnessVector evaluate(const Genotype& g, const Task& task,
                       const PenaltyConfig& penalty = {});

}  // namespace sgr
