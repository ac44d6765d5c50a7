#include "sgr/task_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sgr {

namespace {

double angleScale(const nlohmann::json& j) {
  std::string unit = "rad";
  if (j.contains("units") && j["units"].contains("angle")) {
    unit = j["units"]["angle"].get<std::string>();
  }
  if (unit == "rad") return 1.0;
  if (unit == "deg") return M_PI / 180.0;
  throw ParseError("unknown angle unit: " + unit);
}

Vec3d vec3FromJson(const nlohmann::json& j, const char* field) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError(std::string(field) + ": expected an array of 3 numbers");
  }
  return Vec3d(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

nlohmann::json vec3ToJson(const Vec3d& v) {
  return nlohmann::json::array({v.x(), v.y(), v.z()});
}

std::string formatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Task taskFromJson(const nlohmann::json& j) {
  try {
    const double to_rad = angleScale(j);
    Task task;
    task.name = j.value("name", std::string("task"));
    task.max_links = j.at("max_links").get<int>();

    const auto& home = j.at("home");
    task.home.position = vec3FromJson(home.at("position"), "home.position");
    const double polar = home.at("orientation").at("polar").get<double>() * to_rad;
    const double azimuth =
        home.at("orientation").at("azimuth").get<double>() * to_rad;
    task.home.rotation = rotationZ(azimuth) * rotationY(polar);

    for (const auto& tj : j.at("targets")) {
      Target t;
      t.position = vec3FromJson(tj.at("position"), "target.position");
      t.approach_polar = tj.at("approach").at("polar").get<double>() * to_rad;
      t.approach_azimuth = tj.at("approach").at("azimuth").get<double>() * to_rad;
      t.segment_length = tj.value("segment_length", 150.0);
      task.targets.push_back(t);
    }
    for (const auto& oj : j.value("obstacles", nlohmann::json::array())) {
      Cylinder<double> c;
      c.base_center = vec3FromJson(oj.at("base_center"), "obstacle.base_center");
      c.radius = oj.at("radius").get<double>();
      c.height = oj.at("height").get<double>();
      task.obstacles.push_back(c);
    }

    const auto& tb = j.at("theta_bounds");
    task.theta_bounds = {tb.at(0).get<double>() * to_rad,
                         tb.at(1).get<double>() * to_rad};
    const auto& lb = j.at("length_bounds");
    task.length_bounds = {lb.at(0).get<double>(), lb.at(1).get<double>()};

    validateTask(task);
    return task;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("task: ") + e.what());
  }
}

Task loadTask(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open task file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return taskFromJson(j);
}

void validateTask(const Task& task) {
  if (task.targets.empty()) throw ValidationError("task has no targets");
  if (task.max_links < 2) throw ValidationError("max_links must be >= 2");
  if (!(task.theta_bounds.lo < task.theta_bounds.hi)) {
    throw ValidationError("theta bounds must satisfy lo < hi");
  }
  if (!(0 < task.length_bounds.lo &&
        task.length_bounds.lo < task.length_bounds.hi)) {
    throw ValidationError("length bounds must satisfy 0 < lo < hi");
  }
  for (const Target& t : task.targets) {
    if (!(t.segment_length > 0)) {
      throw ValidationError("target segment_length must be > 0");
    }
  }
  for (const auto& c : task.obstacles) {
    if (!(c.radius > 0) || !(c.height > 0)) {
      throw ValidationError("obstacle radius and height must be > 0");
    }
  }
  for (std::size_t i = 0; i < task.targets.size(); ++i) {
    for (const auto& c : task.obstacles) {
      if (pointInCylinder(task.targets[i].position, c)) {
        throw ValidationError("target " + std::to_string(i + 1) +
                              " lies inside an obstacle");
      }
    }
  }
  const Mat3d r = task.home.rotation;
  if ((r.transpose() * r - Mat3d::Identity()).cwiseAbs().maxCoeff() > kFrameTol) {
    throw ValidationError("home orientation is not orthonormal");
  }
}

nlohmann::json engineConfigToJson(const EngineConfig& config) {
  nlohmann::json j;
  j["algorithm"] = algorithmName(config.algorithm);
  j["population"] = config.population;
  j["generations"] = config.generations;
  j["seed"] = config.seed;
  j["elitist"] = config.elitist;
  if (!config.id.empty()) j["id"] = config.id;
  switch (config.algorithm) {
    case Algorithm::GA:
      j["ga"] = {{"alpha", config.ga.alpha},
                 {"crossover_prob", config.ga.crossover_prob},
                 {"mutation_prob", config.ga.mutation_prob},
                 {"dynamic_mutation", config.ga.dynamic_mutation}};
      break;
    case Algorithm::PSO:
      j["pso"] = {{"omega", config.pso.omega},
                  {"c1", config.pso.c1},
                  {"c2", config.pso.c2}};
      break;
    case Algorithm::DE:
      j["de"] = {{"variant", deVariantName(config.de.variant)},
                 {"weight", config.de.weight},
                 {"crossover_rate", config.de.crossover_rate}};
      break;
    case Algorithm::BBBC:
      break;
  }
  return j;
}

EngineConfig engineConfigFromJson(const nlohmann::json& j) {
  EngineConfig config =
      EngineConfig::defaults(algorithmFromName(j.at("algorithm")));
  config.population = j.value("population", config.population);
  config.generations = j.value("generations", config.generations);
  config.seed = j.value("seed", config.seed);
  config.elitist = j.value("elitist", config.elitist);
  config.id = j.value("id", std::string());
  if (j.contains("ga")) {
    const auto& g = j["ga"];
    config.ga.alpha = g.value("alpha", config.ga.alpha);
    config.ga.crossover_prob = g.value("crossover_prob", config.ga.crossover_prob);
    config.ga.mutation_prob = g.value("mutation_prob", config.ga.mutation_prob);
    config.ga.dynamic_mutation =
        g.value("dynamic_mutation", config.ga.dynamic_mutation);
  }
  if (j.contains("pso")) {
    const auto& p = j["pso"];
    config.pso.omega = p.value("omega", config.pso.omega);
    config.pso.c1 = p.value("c1", config.pso.c1);
    config.pso.c2 = p.value("c2", config.pso.c2);
  }
  if (j.contains("de")) {
    const auto& d = j["de"];
    if (d.contains("variant")) {
      config.de.variant = deVariantFromName(d["variant"]);
    }
    config.de.weight = d.value("weight", config.de.weight);
    config.de.crossover_rate = d.value("crossover_rate", config.de.crossover_rate);
  }
  return config;
}

nlohmann::json fitnessToJson(const FitnessVector& f) {
  return {{"ik", f.f_ik},
          {"links_to_segment", f.f_links_to_seg},
          {"undulation", f.f_undulation},
          {"links_on_segment", f.f_links_on_seg},
          {"length", f.f_length},
          {"violations", f.violations},
          {"feasible", f.feasible}};
}

FitnessVector fitnessFromJson(const nlohmann::json& j) {
  FitnessVector f;
  f.f_ik = j.at("ik").get<double>();
  f.f_links_to_seg = j.at("links_to_segment").get<double>();
  f.f_undulation = j.at("undulation").get<double>();
  f.f_links_on_seg = j.at("links_on_segment").get<double>();
  f.f_length = j.at("length").get<double>();
  f.violations = j.at("violations").get<int>();
  f.feasible = j.at("feasible").get<bool>();
  return f;
}

nlohmann::json solutionToJson(const RunRecord& record) {
  const Genotype& g = record.best.genotype;
  nlohmann::json j;
  j["schema_version"] = 1;
  j["task"] = record.task_name;
  j["engine"] = engineConfigToJson(record.config);
  j["seed"] = record.seed;
  j["num_targets"] = g.num_targets;
  j["max_links"] = g.max_links;

  nlohmann::json design = nlohmann::json::array();
  for (int k = 0; k < g.max_links; ++k) design.push_back(g.length(k));
  j["design"] = design;

  nlohmann::json configs = nlohmann::json::array();
  for (int i = 0; i < g.num_targets; ++i) {
    nlohmann::json tx = nlohmann::json::array();
    nlohmann::json ty = nlohmann::json::array();
    for (int k = 0; k < g.max_links; ++k) {
      tx.push_back(g.thetaX(i, k));
      ty.push_back(g.thetaY(i, k));
    }
    nlohmann::json cj = {{"theta_x", tx}, {"theta_y", ty}};
    if (i < static_cast<int>(record.best_extended.ext.size())) {
      const ConfigExtension& e = record.best_extended.ext[i];
      cj["epsilon"] = e.eps_node + 1;  // 1-based node index
      cj["theta_eps"] = {e.theta_eps_x, e.theta_eps_y};
      cj["n_bar"] = e.n_bar;
      cj["l_last"] = e.l_last;
      cj["shortfall"] = e.shortfall;
      cj["segment_distance"] = e.seg_distance;
    }
    configs.push_back(cj);
  }
  j["configurations"] = configs;
  j["fitness"] = fitnessToJson(record.best.fitness);

  nlohmann::json history = nlohmann::json::array();
  for (const FitnessVector& f : record.history) history.push_back(fitnessToJson(f));
  j["history"] = history;
  return j;
}

RunRecord solutionFromJson(const nlohmann::json& j) {
  try {
    RunRecord record;
    record.task_name = j.at("task").get<std::string>();
    record.config = engineConfigFromJson(j.at("engine"));
    record.seed = j.at("seed").get<std::uint64_t>();
    const int targets = j.at("num_targets").get<int>();
    const int links = j.at("max_links").get<int>();

    Genotype g = Genotype::zeros(targets, links);
    const auto& design = j.at("design");
    for (int k = 0; k < links; ++k) g.length(k) = design.at(k).get<double>();
    const auto& configs = j.at("configurations");
    for (int i = 0; i < targets; ++i) {
      const auto& cj = configs.at(i);
      for (int k = 0; k < links; ++k) {
        g.thetaX(i, k) = cj.at("theta_x").at(k).get<double>();
        g.thetaY(i, k) = cj.at("theta_y").at(k).get<double>();
      }
      if (cj.contains("epsilon")) {
        ConfigExtension e;
        e.eps_node = cj.at("epsilon").get<int>() - 1;
        e.theta_eps_x = cj.at("theta_eps").at(0).get<double>();
        e.theta_eps_y = cj.at("theta_eps").at(1).get<double>();
        e.n_bar = cj.at("n_bar").get<int>();
        e.l_last = cj.at("l_last").get<double>();
        e.shortfall = cj.at("shortfall").get<double>();
        e.seg_distance = cj.at("segment_distance").get<double>();
        record.best_extended.ext.push_back(e);
      }
    }
    record.best.genotype = std::move(g);
    record.best.fitness = fitnessFromJson(j.at("fitness"));
    for (const auto& fj : j.at("history")) {
      record.history.push_back(fitnessFromJson(fj));
    }
    return record;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("solution: ") + e.what());
  }
}

void saveSolution(const RunRecord& record, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write solution: " + path.string());
  out << solutionToJson(record).dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

RunRecord loadSolution(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open solution file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return solutionFromJson(j);
}

void exportScene(const RunRecord& record, const Task& task,
                 const std::filesystem::path& path) {
  Extended extended = record.best_extended;
  if (extended.phenotype.configs.empty()) {
    extended = extendGenotype(record.best.genotype, task);
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scene: " + path.string());
  for (std::size_t i = 0; i < extended.phenotype.configs.size(); ++i) {
    out << "#config " << (i + 1) << "\n";
    for (const Vec3d& node : extended.phenotype.configs[i].nodes) {
      out << formatNumber(node.x()) << "," << formatNumber(node.y()) << ","
          << formatNumber(node.z()) << "\n";
    }
  }
  for (const auto& c : task.obstacles) {
    out << "#cylinder\n"
        << formatNumber(c.base_center.x()) << ","
        << formatNumber(c.base_center.y()) << ","
        << formatNumber(c.base_center.z()) << "," << formatNumber(c.radius)
        << "," << formatNumber(c.height) << "\n";
  }
  for (const Target& t : task.targets) {
    const Segment3<double> s = orientationSegment(t);
    out << "#target_segment\n"
        << formatNumber(s.a.x()) << "," << formatNumber(s.a.y()) << ","
        << formatNumber(s.a.z()) << "\n"
        << formatNumber(s.b.x()) << "," << formatNumber(s.b.y()) << ","
        << formatNumber(s.b.z()) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace sgr
