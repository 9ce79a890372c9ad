#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nashsmooth/game.hpp"

namespace nashsmooth {

enum class SmoothingMode {
  global_iterated,
  local_worst_element,
};

enum class Termination {
  target_reached,
  max_iterations,
  stalled,
};

inline std::string_view to_string(SmoothingMode m) {
  return m == SmoothingMode::global_iterated ? "global" : "local";
}

inline SmoothingMode parse_mode(std::string_view s) {
  if (s == "global" || s == "global_iterated") return SmoothingMode::global_iterated;
  if (s == "local" || s == "local_worst_element") return SmoothingMode::local_worst_element;
  throw std::invalid_argument("unknown smoothing mode '" + std::string(s) + "'");
}

inline std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::target_reached:
      return "target_reached";
    case Termination::max_iterations:
      return "max_iterations";
    case Termination::stalled:
      return "stalled";
  }
  return "?";
}

/// Mean-quality change below which the global loop counts as stalled.
inline constexpr double kStallThreshold = 1e-9;

struct SmoothingConfig {
  GameConfig game;
  SmoothingMode mode = SmoothingMode::global_iterated;
  double target_quality = 0.6;
  int max_iterations = 100;
  SolverMethod solver = SolverMethod::exhaustive;
  int max_rounds = 100;  // best-response rounds per game

  void validate() const {
    game.validate();
    if (!(target_quality >= 0.0 && target_quality <= 1.0)) {
      throw std::invalid_argument("target quality must lie in [0, 1]");
    }
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
    if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  }
};

struct IterationRecord {
  StrategyProfile profile;
  double mean_quality = 0.0;
  double min_quality = 0.0;
  SolverMethod method = SolverMethod::exhaustive;
  bool is_equilibrium = false;
  int solver_iterations = 0;
  std::size_t equilibria = 0;  // exhaustive only
  // local mode: the worst element whose neighborhood was played, and that
  // neighborhood's element ids (profile entries follow this order)
  std::optional<ElementId> focus;
  std::vector<ElementId> players;
  bool applied = true;
  ElementId worst_after = 0;
  Coords coords;
};

struct SmoothingReport {
  std::vector<IterationRecord> iterations;
  Coords final_coords;
  Termination terminated_by = Termination::max_iterations;
  std::vector<ElementId> skipped;
};

class SmoothingError : public std::runtime_error {
 public:
  SmoothingError(int iteration, const std::string& what)
      : std::runtime_error("iteration " + std::to_string(iteration) + ": " + what),
        iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

namespace detail {

inline ElementId argmin(std::span<const double> q) {
  return static_cast<ElementId>(std::min_element(q.begin(), q.end()) - q.begin());
}

inline std::vector<double> element_qualities(const Mesh& mesh, std::span<const Vec3> coords,
                                             QualityMetric metric) {
  std::vector<double> q(mesh.element_count());
  for (ElementId e = 0; e < q.size(); ++e) q[e] = quality(mesh, e, coords, metric);
  return q;
}

struct Solved {
  std::optional<NashResult> result;
  std::size_t equilibria = 0;
};

inline Solved solve(const Game& game, const SmoothingConfig& config) {
  if (config.solver == SolverMethod::exhaustive) {
    auto all = exhaustive_nash(game);
    if (all.empty()) return {};
    return {std::move(all.front()), all.size()};
  }
  auto r = best_response_nash(game, StrategyProfile::uniform(game.players(), 0), config.max_rounds);
  if (!r.is_equilibrium) return {};
  return {std::move(r), 1};
}

}  // namespace detail

/// Plays the full-mesh game repeatedly, each time on the geometry produced by
/// the previous equilibrium.
inline SmoothingReport smooth_global(const Mesh& mesh, const SmoothingConfig& config) {
  config.validate();
  SmoothingReport report;
  Mesh current = mesh;
  double previous_mean = mesh_quality(current, current.positions(), config.game.metric).mean;

  for (int it = 1; it <= config.max_iterations; ++it) {
    const Game game(current, config.game);
    auto solved = detail::solve(game, config);
    if (!solved.result) {
      throw SmoothingError(it, config.solver == SolverMethod::exhaustive
                                   ? "game has no pure Nash equilibrium"
                                   : "best-response dynamics did not converge");
    }
    NashResult& r = *solved.result;

    IterationRecord rec;
    rec.profile = r.profile;
    rec.mean_quality = r.outcome.mean_quality;
    rec.min_quality = r.outcome.min_quality;
    rec.method = r.method;
    rec.is_equilibrium = r.is_equilibrium;
    rec.solver_iterations = r.iterations;
    rec.equilibria = solved.equilibria;
    rec.worst_after = detail::argmin(r.outcome.utilities);
    rec.coords = r.outcome.coords;
    report.iterations.push_back(std::move(rec));

    current = current.with_positions(std::move(r.outcome.coords));
    const double mean = report.iterations.back().mean_quality;
    if (report.iterations.back().min_quality >= config.target_quality) {
      report.terminated_by = Termination::target_reached;
      break;
    }
    if (std::abs(mean - previous_mean) < kStallThreshold) {
      report.terminated_by = Termination::stalled;
      break;
    }
    previous_mean = mean;
  }
  report.final_coords = current.positions();
  return report;
}

/// Elements sharing at least one vertex with `e`, including `e`, sorted.
inline std::vector<ElementId> one_level_neighborhood(const Mesh& mesh, ElementId e) {
  std::vector<ElementId> out;
  for (VertexId v : mesh.elements()[e].v) {
    const auto around = mesh.elements_of(v);
    out.insert(out.end(), around.begin(), around.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Worst-element-first local smoothing.
///
/// The worst element below the target plays a game with its 1-level
/// neighborhood. Vertices shared with elements outside the neighborhood are
/// pinned, as are mesh boundary vertices when the game fixes the boundary.
/// Elements whose game has no equilibrium or does not move anything are
/// skipped until their neighborhood changes.
inline SmoothingReport smooth_local_worst(const Mesh& mesh, const SmoothingConfig& config) {
  config.validate();
  const auto metric = config.game.metric;
  SmoothingReport report;
  Coords working = mesh.positions();
  std::vector<double> q = detail::element_qualities(mesh, working, metric);
  std::set<std::pair<double, ElementId>> order;
  for (ElementId e = 0; e < q.size(); ++e) order.emplace(q[e], e);
  std::vector<bool> skipped(mesh.element_count(), false);

  GameConfig sub_config = config.game;
  sub_config.fix_boundary = false;

  report.terminated_by = Termination::target_reached;
  for (int it = 1;; ++it) {
    std::optional<ElementId> worst;
    bool skipped_below = false;
    for (const auto& [qe, e] : order) {
      if (qe >= config.target_quality) break;
      if (skipped[e]) {
        skipped_below = true;
        continue;
      }
      worst = e;
      break;
    }
    if (!worst) {
      report.terminated_by = skipped_below ? Termination::stalled : Termination::target_reached;
      break;
    }
    if (it > config.max_iterations) {
      report.terminated_by = Termination::max_iterations;
      break;
    }

    // sub-mesh over the neighborhood with local vertex numbering
    const auto players = one_level_neighborhood(mesh, *worst);
    std::vector<VertexId> global_of;
    std::vector<Element> local_elements;
    std::vector<std::size_t> local_of(mesh.vertex_count(), Game::npos);
    for (ElementId e : players) {
      Element local{};
      for (int i = 0; i < 3; ++i) {
        const VertexId v = mesh.elements()[e][i];
        if (local_of[v] == Game::npos) {
          local_of[v] = global_of.size();
          global_of.push_back(v);
        }
        local.v[i] = local_of[v];
      }
      local_elements.push_back(local);
    }
    Coords local_coords;
    std::vector<bool> pinned;
    for (VertexId v : global_of) {
      local_coords.push_back(working[v]);
      const auto around = mesh.elements_of(v);
      const bool rim = std::any_of(around.begin(), around.end(), [&](ElementId e) {
        return !std::binary_search(players.begin(), players.end(), e);
      });
      pinned.push_back(rim || (config.game.fix_boundary && mesh.is_boundary(v)));
    }
    const Mesh sub = build_mesh(std::move(local_coords), std::move(local_elements), false);
    const Game game(sub, sub_config, pinned);
    auto solved = detail::solve(game, config);

    IterationRecord rec;
    rec.focus = worst;
    rec.players = players;
    rec.method = config.solver;
    rec.equilibria = solved.equilibria;

    bool moved = false;
    if (solved.result) {
      const NashResult& r = *solved.result;
      rec.profile = r.profile;
      rec.is_equilibrium = r.is_equilibrium;
      rec.solver_iterations = r.iterations;
      for (std::size_t i = 0; i < global_of.size(); ++i) {
        if (!(working[global_of[i]] == r.outcome.coords[i])) {
          working[global_of[i]] = r.outcome.coords[i];
          moved = true;
        }
      }
    }
    rec.applied = moved;

    if (moved) {
      std::vector<ElementId> touched;
      for (VertexId v : global_of) {
        const auto around = mesh.elements_of(v);
        touched.insert(touched.end(), around.begin(), around.end());
      }
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      for (ElementId e : touched) {
        order.erase({q[e], e});
        q[e] = quality(mesh, e, working, metric);
        order.emplace(q[e], e);
        skipped[e] = false;
      }
    } else {
      skipped[*worst] = true;
    }

    const auto s = summarize(q);
    rec.mean_quality = s.mean;
    rec.min_quality = s.min;
    rec.worst_after = detail::argmin(q);
    rec.coords = working;
    report.iterations.push_back(std::move(rec));
  }

  for (ElementId e = 0; e < skipped.size(); ++e) {
    if (skipped[e]) report.skipped.push_back(e);
  }
  report.final_coords = std::move(working);
  return report;
}

inline SmoothingReport smooth(const Mesh& mesh, const SmoothingConfig& config) {
  return config.mode == SmoothingMode::global_iterated ? smooth_global(mesh, config)
                                                       : smooth_local_worst(mesh, config);
}

}  // namespace nashsmooth
