#pragma once

// Problem instance and genotype types, forward kinematics over the joint
// chain, and the dynamic genotype extension (aim-node selection, aim-angle
// solve, active-link count, partial last link).

#include "sgr/geometry.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sgr {

struct Target {
  Vec3d position;              // cm
  double approach_polar = 0;   // rad, from global +z
  double approach_azimuth = 0; // rad, around +z from +x
  double segment_length = 150; // cm
};

// Unit vector pointing from the target toward the region the robot
// approaches from.
Vec3d approachDirection(const Target& t);

// a = target position, b = position + segment_length * approach direction.
Segment3<double> orientationSegment(const Target& t);

struct HomeBase {
  Vec3d position;
  Mat3d rotation;  // column z = initial growth direction
};

Frame<double> baseFrame(const HomeBase& home);

struct Interval {
  double lo = 0;
  double hi = 0;
};

struct Task {
  std::string name;
  std::vector<Target> targets;
  std::vector<Cylinder<double>> obstacles;
  HomeBase home;
  int max_links = 20;                  // n
  Interval theta_bounds{-M_PI / 4, M_PI / 4};  // rad, per joint axis
  Interval length_bounds{25, 70};              // cm
};

// 2*|t|*n steering variables plus n shared lengths.
inline int decisionVariables(const Task& task) {
  const int t = static_cast<int>(task.targets.size());
  return 2 * t * task.max_links + task.max_links;
}

// Flat real-coded genotype. Layout: for each configuration i and joint j the
// pair (theta_x, theta_y), then the n shared link lengths. Joint 0 sits at
// the home base and never steers; its genes are pinned to zero through the
// variable bounds.
struct Genotype {
  Eigen::VectorXd genes;
  int num_targets = 0;
  int max_links = 0;

  static Genotype zeros(int num_targets, int max_links) {
    Genotype g;
    g.num_targets = num_targets;
    g.max_links = max_links;
    g.genes = Eigen::VectorXd::Zero(2 * num_targets * max_links + max_links);
    return g;
  }

  int steeringIndex(int cfg, int joint, int axis) const {
    return (cfg * max_links + joint) * 2 + axis;
  }
  int lengthIndex(int link) const {
    return 2 * num_targets * max_links + link;
  }

  double thetaX(int cfg, int joint) const { return genes[steeringIndex(cfg, joint, 0)]; }
  double thetaY(int cfg, int joint) const { return genes[steeringIndex(cfg, joint, 1)]; }
  double length(int link) const { return genes[lengthIndex(link)]; }

  double& thetaX(int cfg, int joint) { return genes[steeringIndex(cfg, joint, 0)]; }
  double& thetaY(int cfg, int joint) { return genes[steeringIndex(cfg, joint, 1)]; }
  double& length(int link) { return genes[lengthIndex(link)]; }

  // The shared design row.
  Eigen::VectorXd design() const { return genes.tail(max_links); }
};

inline Eigen::VectorXd designOf(const Genotype& g) { return g.design(); }

// Per-gene bounds matching the flat layout. Joint-0 steering genes get
// [0, 0] so every variation operator keeps them pinned.
struct GeneBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

GeneBounds geneBounds(const Task& task);

struct ConfigChain {
  std::vector<Vec3d> nodes;            // nodes[0] = home position
  std::vector<Frame<double>> frames;   // frames[k] sits at nodes[k]
};

// Chain of one configuration from the raw genotype. nodes/frames have
// max_links+1 entries.
ConfigChain forwardKinematics(const Genotype& g, int cfg, const HomeBase& home);

// Joint angles that align the child frame's z-axis with (to - from) in the
// parent frame. thetaY is restricted to [-pi/2, pi/2]; directions outside
// that hemisphere produce angles beyond the joint bounds and are caught by
// the constraint checks. Throws on |to - from| <= 1e-9.
std::pair<double, double> solveAimAngles(const Frame<double>& parent,
                                         const Vec3d& from, const Vec3d& to);

// Dynamic extension of one configuration. eps_node is the 0-based index of
// the chain node closest to the target's orientation segment (equals the
// number of links spent before the segment); n_bar counts the links actually
// everted; l_last is the (possibly partial) length of the last one.
struct ConfigExtension {
  int eps_node = 1;
  double theta_eps_x = 0;
  double theta_eps_y = 0;
  int n_bar = 0;
  double l_last = 0;
  double shortfall = 0;     // unreachable residual, 0 when the target is reached
  double seg_distance = 0;  // distance of the eps node to the orientation segment
};

struct Phenotype {
  std::vector<ConfigChain> configs;  // rebuilt chains, n_bar+1 nodes each
};

struct Extended {
  std::vector<ConfigExtension> ext;
  Phenotype phenotype;
};

// Runs FK per configuration, picks the aim node, solves the aim angles and
// rebuilds the tail as a straight run to the target, accumulating design
// lengths until the distance is covered (or the budget is exhausted, which
// sets shortfall instead of failing).
Extended extendGenotype(const Genotype& g, const Task& task);

}  // namespace sgr
