#include "sgr/robot_model.hpp"

#include <cmath>
#include <stdexcept>

namespace sgr {

Vec3d approachDirection(const Target& t) {
  const double sp = std::sin(t.approach_polar);
  return Vec3d(sp * std::cos(t.approach_azimuth),
               sp * std::sin(t.approach_azimuth),
               std::cos(t.approach_polar));
}

Segment3<double> orientationSegment(const Target& t) {
  return {t.position, t.position + t.segment_length * approachDirection(t)};
}

Frame<double> baseFrame(const HomeBase& home) {
  return {home.position, home.rotation};
}

GeneBounds geneBounds(const Task& task) {
  const int dim = decisionVariables(task);
  GeneBounds b;
  b.lower.resize(dim);
  b.upper.resize(dim);
  Genotype layout = Genotype::zeros(static_cast<int>(task.targets.size()),
                                    task.max_links);
  for (int i = 0; i < layout.num_targets; ++i) {
    for (int j = 0; j < layout.max_links; ++j) {
      for (int axis = 0; axis < 2; ++axis) {
        const int k = layout.steeringIndex(i, j, axis);
        if (j == 0) {
          b.lower[k] = 0;
          b.upper[k] = 0;
        } else {
          b.lower[k] = task.theta_bounds.lo;
          b.upper[k] = task.theta_bounds.hi;
        }
      }
    }
  }
  for (int j = 0; j < task.max_links; ++j) {
    const int k = layout.lengthIndex(j);
    b.lower[k] = task.length_bounds.lo;
    b.upper[k] = task.length_bounds.hi;
  }
  return b;
}

ConfigChain forwardKinematics(const Genotype& g, int cfg, const HomeBase& home) {
  const int n = g.max_links;
  ConfigChain chain;
  chain.nodes.reserve(n + 1);
  chain.frames.reserve(n + 1);
  chain.frames.push_back(baseFrame(home));
  chain.nodes.push_back(home.position);
  for (int j = 0; j < n; ++j) {
    const double tx = (j == 0) ? 0.0 : g.thetaX(cfg, j);
    const double ty = (j == 0) ? 0.0 : g.thetaY(cfg, j);
    chain.frames.push_back(
        frameCompose(chain.frames.back(), tx, ty, g.length(j)));
    chain.nodes.push_back(chain.frames.back().origin);
  }
  return chain;
}

std::pair<double, double> solveAimAngles(const Frame<double>& parent,
                                         const Vec3d& from, const Vec3d& to) {
  const Vec3d diff = to - from;
  const double dist = diff.norm();
  if (dist <= 1e-9) {
    throw std::invalid_argument("solveAimAngles: zero direction");
  }
  const Vec3d d = parent.rotation.transpose() * (diff / dist);
  const double theta_y = std::asin(std::clamp(d.x(), -1.0, 1.0));
  const double theta_x = std::atan2(-d.y(), d.z());
  return {theta_x, theta_y};
}

Extended extendGenotype(const Genotype& g, const Task& task) {
  const int n = g.max_links;
  Extended out;
  out.ext.resize(task.targets.size());
  out.phenotype.configs.resize(task.targets.size());

  for (int i = 0; i < static_cast<int>(task.targets.size()); ++i) {
    const Target& target = task.targets[i];
    const Segment3<double> seg = orientationSegment(target);
    ConfigChain chain = forwardKinematics(g, i, task.home);

    // Aim node: closest chain node to the orientation segment, base node
    // excluded, ties toward the smaller index.
    int eps = 1;
    double best = pointSegmentDistance(chain.nodes[1], seg).distance;
    for (int k = 2; k <= n; ++k) {
      const double d = pointSegmentDistance(chain.nodes[k], seg).distance;
      if (d < best) {
        best = d;
        eps = k;
      }
    }

    ConfigExtension& ext = out.ext[i];
    ext.eps_node = eps;
    ext.seg_distance = best;

    const Vec3d aim_from = chain.nodes[eps];
    const Vec3d diff = target.position - aim_from;
    const double dist_to_target = diff.norm();
    if (dist_to_target > 1e-9) {
      std::tie(ext.theta_eps_x, ext.theta_eps_y) =
          solveAimAngles(chain.frames[eps], aim_from, target.position);
    } else {
      ext.theta_eps_x = 0;
      ext.theta_eps_y = 0;
    }

    // Evert design links along the straight run until the distance is
    // covered; the last link may stay partially folded.
    double cumulative = 0;
    ext.n_bar = n;
    ext.l_last = g.length(n - 1);
    ext.shortfall = 0;
    bool covered = false;
    for (int link = eps; link < n && !covered; ++link) {
      const double len = g.length(link);
      if (cumulative + len + 1e-9 >= dist_to_target) {
        ext.n_bar = link + 1;
        ext.l_last = std::min(dist_to_target - cumulative, len);
        covered = true;
      } else {
        cumulative += len;
      }
    }
    if (!covered) {
      // cumulative already holds every link from eps to n-1
      ext.n_bar = n;
      ext.l_last = g.length(n - 1);
      ext.shortfall = dist_to_target - cumulative;
    }

    // Rebuilt chain: original nodes up to eps, then collinear tail.
    ConfigChain& pheno = out.phenotype.configs[i];
    pheno.nodes.assign(chain.nodes.begin(), chain.nodes.begin() + eps + 1);
    pheno.frames.assign(chain.frames.begin(), chain.frames.begin() + eps + 1);
    Frame<double> tail_frame = frameCompose(chain.frames[eps], ext.theta_eps_x,
                                            ext.theta_eps_y, 0.0);
    const Vec3d u = (dist_to_target > 1e-12) ? Vec3d(diff / dist_to_target)
                                             : Vec3d(tail_frame.rotation.col(2));
    Vec3d cur = aim_from;
    for (int link = eps; link < ext.n_bar; ++link) {
      const double len =
          (link == ext.n_bar - 1) ? ext.l_last : g.length(link);
      cur += len * u;
      tail_frame.origin = cur;
      pheno.nodes.push_back(cur);
      pheno.frames.push_back(tail_frame);
    }
  }
  return out;
}

}  // namespace sgr
