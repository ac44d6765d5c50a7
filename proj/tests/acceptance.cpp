// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Expects the bundled task directory as argv[1].

#include "oracles.hpp"
#include "sgr/stats.hpp"
#include "sgr/sweep.hpp"
#include "sgr/task_io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace sgr;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("%s: %s%s%s\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.empty() ? "" : " — ", detail.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Scalar-math sampling oracle, kept independent of the library's closed form.
double densePointSegmentDistance(const Vec3d& p, const Segment3<double>& s,
                                 int samples) {
  const double ax = s.a.x(), ay = s.a.y(), az = s.a.z();
  const double dx = s.b.x() - ax, dy = s.b.y() - ay, dz = s.b.z() - az;
  const double px = p.x(), py = p.y(), pz = p.z();
  double best = std::numeric_limits<double>::infinity();
  const double step = 1.0 / samples;
  for (int i = 0; i <= samples; ++i) {
    const double t = i * step;
    const double ex = px - (ax + t * dx);
    const double ey = py - (ay + t * dy);
    const double ez = pz - (az + t * dz);
    const double d2 = ex * ex + ey * ey + ez * ez;
    if (d2 < best) best = d2;
  }
  return std::sqrt(best);
}

void criterionGeometry() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> coord(-100, 100);

  bool distances_ok = true;
  for (int i = 0; i < 1000 && distances_ok; ++i) {
    const Vec3d p(coord(rng), coord(rng), coord(rng));
    const Segment3<double> s{{coord(rng), coord(rng), coord(rng)},
                             {coord(rng), coord(rng), coord(rng)}};
    const double exact = pointSegmentDistance(p, s).distance;
    const double sampled = densePointSegmentDistance(p, s, 1000000);
    distances_ok = std::abs(exact - sampled) <= 1e-3;
  }

  std::uniform_real_distribution<double> z(-20, 120);
  std::uniform_real_distribution<double> radius(1, 20);
  std::uniform_real_distribution<double> height(5, 100);
  std::uniform_real_distribution<double> near(-40, 40);
  int disagreements = 0;
  int classified = 0;
  for (int i = 0; i < 500; ++i) {
    const Segment3<double> s{{near(rng), near(rng), z(rng)},
                             {near(rng), near(rng), z(rng)}};
    const Cylinder<double> c{{near(rng), near(rng), 0}, radius(rng),
                             height(rng)};
    if (oracles::sampledBoundaryClearance(s, c, 4000) <= 1e-6) continue;
    ++classified;
    if (segmentCylinderIntersects(s, c) !=
        oracles::sampledSegmentCylinderIntersects(s, c, 100000)) {
      ++disagreements;
    }
  }

  const double elapsed = seconds_since(t0);
  std::ostringstream detail;
  detail << classified << " classified pairs, " << disagreements
         << " disagreements, " << elapsed << " s";
  report("geometry oracles (1e-3 distance, zero intersection disagreements, "
         "< 30 s)",
         distances_ok && disagreements == 0 && classified > 300 &&
             elapsed < 30.0,
         detail.str());
}

void criterionForwardKinematics() {
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> angle(-M_PI / 4, M_PI / 4);
  std::uniform_real_distribution<double> len(25, 70);
  bool ok = true;
  for (int trial = 0; trial < 100 && ok; ++trial) {
    const int n = 20;
    Genotype g = Genotype::zeros(1, n);
    std::vector<std::array<double, 3>> joints;
    for (int j = 0; j < n; ++j) {
      if (j > 0) {
        g.thetaX(0, j) = angle(rng);
        g.thetaY(0, j) = angle(rng);
      }
      g.length(j) = len(rng);
      joints.push_back({g.thetaX(0, j), g.thetaY(0, j), g.length(j)});
    }
    const HomeBase home{Vec3d(0, 0, 150), rotationY(M_PI)};
    const ConfigChain chain = forwardKinematics(g, 0, home);
    const auto expected =
        oracles::homogeneousChain(home.position, home.rotation, joints);
    for (std::size_t k = 0; k < expected.size() && ok; ++k) {
      ok = (chain.nodes[k] - expected[k]).norm() <= 1e-9;
    }
    for (int j = 0; j < n && ok; ++j) {
      ok = std::abs((chain.nodes[j + 1] - chain.nodes[j]).norm() -
                    g.length(j)) <= 1e-9;
    }
  }
  report("forward kinematics matches homogeneous-matrix oracle within 1e-9",
         ok);
}

void criterionAimAngles() {
  std::mt19937_64 rng(1003);
  std::uniform_real_distribution<double> angle(-M_PI / 2, M_PI / 2);
  bool ok = true;
  for (int i = 0; i < 10000 && ok; ++i) {
    const Frame<double> parent{
        Vec3d(angle(rng), angle(rng), angle(rng)),
        Mat3d(rotationZ(angle(rng)) * rotationX(angle(rng)))};
    const double tx = angle(rng);
    const double ty = angle(rng);
    const Frame<double> child = frameCompose(parent, tx, ty, 10.0);
    const auto [rx, ry] = solveAimAngles(parent, parent.origin, child.origin);
    ok = std::abs(rx - tx) <= 1e-9 && std::abs(ry - ty) <= 1e-9;
  }
  report("aim-angle round trip over 10^4 random joint pairs within 1e-9", ok);
}

void criterionRankPartitioning() {
  std::mt19937_64 rng(1004);
  std::uniform_int_distribution<int> size(1, 200);
  bool sort_ok = true;
  for (int trial = 0; trial < 500 && sort_ok; ++trial) {
    std::vector<FitnessVector> pop(size(rng));
    for (auto& f : pop) f = oracles::randomFitness(rng);
    sort_ok = rankPartition(pop) ==
              oracles::lexicographicRanks(pop, kDefaultPriority, {});
  }

  bool transitive = true;
  auto not_worse = [](Ordering o) { return o != Ordering::b_better; };
  for (int i = 0; i < 10000 && transitive; ++i) {
    const FitnessVector a = oracles::randomFitness(rng);
    const FitnessVector b = oracles::randomFitness(rng);
    const FitnessVector c = oracles::randomFitness(rng);
    if (not_worse(compare(a, b)) && not_worse(compare(b, c))) {
      transitive = not_worse(compare(a, c));
    }
  }
  report("rank partitioning equals binned lexicographic oracle; comparator "
         "transitive",
         sort_ok && transitive);
}

void criterionIntegerIdentity() {
  std::mt19937_64 rng(1005);
  Task task = oracles::trivialTask(8);
  task.obstacles.push_back({Vec3d(12, 0, 0), 6, 80});
  bool ok = true;
  for (int trial = 0; trial < 10000 && ok; ++trial) {
    const Genotype g = oracles::randomGenotype(task, rng);
    const Extended ext = extendGenotype(g, task);
    int n_bar_sum = 0;
    for (const auto& e : ext.ext) n_bar_sum += e.n_bar;
    ok = (objectiveLinksToSegment(ext.ext) + objectiveLinksOnSegment(ext.ext) ==
          n_bar_sum);
  }
  report("links-to-segment + links-on-segment = active links on 10^4 random "
         "genotypes",
         ok);
}

void criterionPenaltyContract() {
  FitnessVector raw;
  raw.f_ik = 0.7;
  raw.f_links_to_seg = 4;
  raw.f_undulation = 12.5;
  raw.f_links_on_seg = 3;
  raw.f_length = 142.25;
  const FitnessVector f0 = applyPenalty(raw, 0, {});
  const FitnessVector f1 = applyPenalty(raw, 1, {});
  const bool ok = f1.f_ik - f0.f_ik == 100.0 &&
                  f1.f_links_to_seg - f0.f_links_to_seg == 100.0 &&
                  f1.f_undulation - f0.f_undulation == 100.0 &&
                  f1.f_links_on_seg - f0.f_links_on_seg == 100.0 &&
                  f1.f_length - f0.f_length == 100.0 && !f1.feasible &&
                  f0.feasible;
  report("one synthetic violation raises every objective by exactly 100", ok);
}

void criterionTrivialConvergence() {
  const Task task = oracles::trivialTask(5);
  EngineConfig config = EngineConfig::defaults(Algorithm::GA);
  config.population = 200;
  config.generations = 200;
  config.ga.alpha = 0.5;
  config.ga.mutation_prob = 0.4;

  int successes = 0;
  double worst_run_seconds = 0;
  for (int run = 0; run < 50; ++run) {
    config.seed = deriveSeed(2024, 0, static_cast<std::uint64_t>(run));
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult r = runEngine(task, config);
    worst_run_seconds = std::max(worst_run_seconds, seconds_since(t0));
    if (r.best.fitness.feasible && r.best.fitness.f_ik <= 0.5) ++successes;
  }
  std::ostringstream detail;
  detail << successes << "/50 runs converged, slowest run "
         << worst_run_seconds << " s";
  report("trivial-task GA convergence (>= 45/50 runs, each <= 60 s)",
         successes >= 45 && worst_run_seconds <= 60.0, detail.str());
}

void criterionTaskOneScale(const Task& task,
                           std::vector<RunResult>& ga_runs_out) {
  const bool dims_ok = decisionVariables(task) == 100;

  EngineConfig config = EngineConfig::defaults(Algorithm::GA);
  config.population = 500;
  config.generations = 500;

  std::vector<double> ik;
  int feasible = 0;
  for (int run = 0; run < 10; ++run) {
    config.seed = deriveSeed(2024, 1, static_cast<std::uint64_t>(run));
    RunResult r = runEngine(task, config);
    ik.push_back(r.best.fitness.f_ik);
    if (r.best.fitness.feasible) ++feasible;
    ga_runs_out.push_back(std::move(r));
  }
  std::sort(ik.begin(), ik.end());
  const double median = 0.5 * (ik[4] + ik[5]);

  std::ostringstream detail;
  detail << "median f_ik " << median << " cm, " << feasible
         << "/10 feasible, 100 decision variables";
  report("two-target task GA quality (median f_ik <= 1 cm over 10 runs)",
         dims_ok && median <= 1.0 && feasible >= 5, detail.str());
}

void criterionElitismMonotonicity(const std::vector<RunResult>& ga_runs) {
  bool ok = !ga_runs.empty();
  for (const RunResult& r : ga_runs) {
    for (std::size_t g = 0; g + 1 < r.history.size() && ok; ++g) {
      ok = binnedKey(r.history[g + 1], kDefaultPriority, {}) <=
           binnedKey(r.history[g], kDefaultPriority, {});
    }
  }
  report("GA best key tuple non-increasing across every generation", ok);
}

void criterionDeterminism(const Task& task) {
  EngineConfig config = EngineConfig::defaults(Algorithm::GA);
  config.population = 40;
  config.generations = 25;
  config.seed = 777;

  auto record_run = [&]() {
    const RunResult r = runEngine(task, config);
    RunRecord record;
    record.task_name = task.name;
    record.config = config;
    record.seed = config.seed;
    record.best = r.best;
    record.best_extended = r.best_extended;
    record.history = r.history;
    return record;
  };

  const auto dir = std::filesystem::temp_directory_path() / "sgr_acceptance";
  std::filesystem::create_directories(dir);
  const auto p1 = dir / "det_a.json";
  const auto p2 = dir / "det_b.json";
  saveSolution(record_run(), p1);
  saveSolution(record_run(), p2);

  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(p1);
  report("repeated (task, config, seed) produces byte-identical solution files",
         !a.empty() && a == slurp(p2));
}

void criterionFriedman() {
  const std::vector<std::vector<double>> ranks{
      {1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {1, 2, 3}};
  const FriedmanResult r = friedmanTest(ranks, 0.05);

  const std::vector<std::vector<double>> ties(4, {2.0, 2.0, 2.0});
  const FriedmanResult t = friedmanTest(ties, 0.05);

  std::ostringstream detail;
  detail << "chi2 " << r.chi2 << " (expected 4.5), all-ties chi2 " << t.chi2;
  report("Friedman statistic matches hand computation; all-ties gives zero",
         std::abs(r.chi2 - 4.5) <= 1e-9 && std::abs(t.chi2) <= 1e-12,
         detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <tasks-dir>\n", argv[0]);
    return 2;
  }
  const std::filesystem::path tasks_dir = argv[1];
  Task task1;
  try {
    task1 = loadTask(tasks_dir / "task1.json");
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cannot load bundled task: %s\n", e.what());
    return 2;
  }

  criterionGeometry();
  criterionForwardKinematics();
  criterionAimAngles();
  criterionRankPartitioning();
  criterionIntegerIdentity();
  criterionPenaltyContract();
  criterionTrivialConvergence();
  std::vector<RunResult> ga_runs;
  criterionTaskOneScale(task1, ga_runs);
  criterionElitismMonotonicity(ga_runs);
  criterionDeterminism(task1);
  criterionFriedman();

  std::printf("%s (%d criteria failed)\n", failures == 0 ? "ALL PASS" : "FAILED",
              failures);
  return failures == 0 ? 0 : 1;
}
