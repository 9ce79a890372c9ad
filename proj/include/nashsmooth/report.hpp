#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nashsmooth/game.hpp"
#include "nashsmooth/io/obj.hpp"
#include "nashsmooth/io/off.hpp"
#include "nashsmooth/io/svg.hpp"
#include "nashsmooth/scenario.hpp"
#include "nashsmooth/smoothing.hpp"

namespace nashsmooth {

using nlohmann::json;

struct RunSpec {
  std::string input;  // mesh path or scenario name
  std::uint64_t seed = 0;
  SmoothingConfig smoothing;
  std::vector<int> k_values{1, 2, 3};
  std::filesystem::path out_dir;  // empty: write nothing
};

inline bool is_scenario_name(const std::string& s) {
  const auto& names = scenario_names();
  return std::find(names.begin(), names.end(), s) != names.end();
}

inline Mesh load_input(const std::string& input, std::uint64_t seed) {
  if (is_scenario_name(input)) return generate_scenario(input, seed);
  return io::read_mesh(input);
}

struct FamilyResult {
  StrategyProfile profile;
  double mean_quality = 0.0;
  double min_quality = 0.0;
  Coords coords;
  std::string mesh_file;
};

struct TrajectoryPoint {
  double mean_quality;
  double min_quality;
};

struct SweepPoint {
  int k = 0;
  std::optional<FamilyResult> nash;  // lexicographically first equilibrium
  std::size_t equilibria = 0;
  std::optional<FamilyResult> best;
  FamilyResult uniform;
  std::vector<TrajectoryPoint> trajectory;  // iterated game, quality per iteration
  std::vector<std::string> omissions;
  std::string figure;
  double seconds = 0.0;
};

struct ComparisonRecord {
  std::string scenario;
  std::uint64_t seed = 0;
  GameConfig config;
  QualitySummary initial;
  std::string initial_mesh_file;
  std::vector<SweepPoint> sweep;

  bool partial() const {
    return std::any_of(sweep.begin(), sweep.end(),
                       [](const SweepPoint& p) { return !p.omissions.empty(); });
  }
};

namespace detail {

inline FamilyResult family(StrategyProfile profile, const ProfileOutcome& o) {
  return {std::move(profile), o.mean_quality, o.min_quality, o.coords, {}};
}

inline json family_json(const FamilyResult& f) {
  json j{{"profile", f.profile.powers},
         {"mean_quality", f.mean_quality},
         {"min_quality", f.min_quality}};
  if (!f.mesh_file.empty()) j["mesh"] = f.mesh_file;
  return j;
}

}  // namespace detail

inline json config_json(const GameConfig& c) {
  return {{"k", c.k},
          {"theta", c.transform.theta},
          {"relaxation", c.transform.relaxation},
          {"preserve_area", c.transform.preserve_area},
          {"metric", to_string(c.metric)},
          {"fix_boundary", c.fix_boundary},
          {"tie_break", "lexicographic_smallest"},
          {"enumeration_budget", c.enumeration_budget}};
}

/// Nash equilibrium, best profile and uniform profile for every k of the
/// sweep. A sweep point whose game is too large for enumeration keeps its
/// uniform result and lists the omitted families.
inline ComparisonRecord run_compare(const RunSpec& spec) {
  const Mesh mesh = load_input(spec.input, spec.seed);
  ComparisonRecord rec;
  rec.scenario = spec.input;
  rec.seed = spec.seed;
  rec.config = spec.smoothing.game;
  rec.initial = mesh_quality(mesh, mesh.positions(), spec.smoothing.game.metric);

  const bool write = !spec.out_dir.empty();
  if (write) {
    std::filesystem::create_directories(spec.out_dir);
    rec.initial_mesh_file = "initial.off";
    io::write_off(spec.out_dir / rec.initial_mesh_file, mesh);
  }

  for (int k : spec.k_values) {
    const auto start = std::chrono::steady_clock::now();
    SweepPoint point;
    point.k = k;
    GameConfig config = spec.smoothing.game;
    config.k = k;
    const Game game(mesh, config);
    point.uniform = detail::family(StrategyProfile::uniform(mesh.element_count(), k),
                                   game.evaluate(StrategyProfile::uniform(mesh.element_count(), k)));
    try {
      auto eq = exhaustive_nash(game);
      point.equilibria = eq.size();
      if (!eq.empty()) point.nash = detail::family(eq.front().profile, eq.front().outcome);
      auto best = best_profile(game);
      point.best = detail::family(std::move(best.profile), best.outcome);
    } catch (const BudgetExceeded& e) {
      point.omissions.push_back(std::string("nash: ") + e.what());
      point.omissions.push_back(std::string("best: ") + e.what());
    }

    SmoothingConfig iterated = spec.smoothing;
    iterated.game = config;
    iterated.mode = SmoothingMode::global_iterated;
    try {
      for (const auto& it : smooth_global(mesh, iterated).iterations) {
        point.trajectory.push_back({it.mean_quality, it.min_quality});
      }
    } catch (const std::exception& e) {
      point.omissions.push_back(std::string("trajectory: ") + e.what());
    }

    if (write) {
      const std::string stem = "k" + std::to_string(k);
      std::vector<io::SvgLayer> layers{{mesh.positions(), {"initial", "black"}}};
      auto save = [&](FamilyResult& f, const std::string& name) {
        f.mesh_file = stem + "_" + name + ".off";
        io::write_off(spec.out_dir / f.mesh_file, mesh, f.coords);
      };
      save(point.uniform, "uniform");
      if (point.nash) {
        save(*point.nash, "nash");
        layers.push_back({point.nash->coords, {"nash", "blue"}});
      }
      if (point.best) {
        save(*point.best, "best");
        layers.push_back({point.best->coords, {"best", "red"}});
      }
      if (mesh.is_planar()) {
        point.figure = stem + ".svg";
        io::emit_svg(mesh, layers, spec.out_dir / point.figure);
      }
    }
    point.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.sweep.push_back(std::move(point));
  }
  return rec;
}

inline json to_json(const ComparisonRecord& rec) {
  json sweep = json::array();
  for (const auto& p : rec.sweep) {
    json j{{"k", p.k},
           {"equilibria", p.equilibria},
           {"uniform", detail::family_json(p.uniform)},
           {"seconds", p.seconds}};
    j["nash"] = p.nash ? detail::family_json(*p.nash) : json(nullptr);
    j["best"] = p.best ? detail::family_json(*p.best) : json(nullptr);
    json traj = json::array();
    for (const auto& t : p.trajectory) {
      traj.push_back({{"mean_quality", t.mean_quality}, {"min_quality", t.min_quality}});
    }
    j["trajectory"] = traj;
    j["omissions"] = p.omissions;
    if (!p.figure.empty()) j["figure"] = p.figure;
    sweep.push_back(j);
  }
  json out{{"scenario", rec.scenario},
           {"seed", rec.seed},
           {"config", config_json(rec.config)},
           {"initial", {{"mean_quality", rec.initial.mean}, {"min_quality", rec.initial.min}}},
           {"sweep", sweep},
           {"partial", rec.partial()}};
  if (!rec.initial_mesh_file.empty()) out["initial"]["mesh"] = rec.initial_mesh_file;
  return out;
}

inline json to_json(const SmoothingReport& report, const SmoothingConfig& config) {
  json iterations = json::array();
  for (const auto& it : report.iterations) {
    json j{{"profile", it.profile.powers},
           {"mean_quality", it.mean_quality},
           {"min_quality", it.min_quality},
           {"method", to_string(it.method)},
           {"is_equilibrium", it.is_equilibrium},
           {"solver_iterations", it.solver_iterations},
           {"equilibria", it.equilibria},
           {"applied", it.applied},
           {"worst_after", it.worst_after}};
    if (it.focus) {
      j["focus"] = *it.focus;
      j["players"] = it.players;
    }
    iterations.push_back(j);
  }
  return {{"config",
           {{"game", config_json(config.game)},
            {"mode", to_string(config.mode)},
            {"target_quality", config.target_quality},
            {"max_iterations", config.max_iterations},
            {"solver", to_string(config.solver)}}},
          {"iterations", iterations},
          {"terminated_by", to_string(report.terminated_by)},
          {"skipped", report.skipped}};
}

}  // namespace nashsmooth
