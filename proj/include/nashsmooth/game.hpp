#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nashsmooth/mesh.hpp"
#include "nashsmooth/quality.hpp"
#include "nashsmooth/transform.hpp"

namespace nashsmooth {

/// Payoff differences at or below this are treated as ties.
inline constexpr double kPayoffTolerance = 1e-12;

enum class TieBreak {
  lexicographic_smallest,
};

enum class SolverMethod {
  exhaustive,
  best_response,
};

inline std::string_view to_string(SolverMethod m) {
  return m == SolverMethod::exhaustive ? "exhaustive" : "best_response";
}

inline SolverMethod parse_solver(std::string_view s) {
  if (s == "exhaustive") return SolverMethod::exhaustive;
  if (s == "best_response" || s == "best-response") return SolverMethod::best_response;
  throw std::invalid_argument("unknown solver '" + std::string(s) + "'");
}

struct GameConfig {
  int k = 2;  // strategies are the powers 0..k
  TransformParams transform;
  QualityMetric metric = QualityMetric::edge_ratio;
  bool fix_boundary = false;
  TieBreak tie_break = TieBreak::lexicographic_smallest;
  std::uint64_t enumeration_budget = 10'000'000;

  void validate() const {
    if (k < 1) throw std::invalid_argument("game requires k >= 1");
    transform.validate();
  }
};

struct StrategyProfile {
  std::vector<int> powers;

  std::size_t size() const { return powers.size(); }
  int operator[](std::size_t i) const { return powers[i]; }
  int& operator[](std::size_t i) { return powers[i]; }

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
  friend auto operator<=>(const StrategyProfile&, const StrategyProfile&) = default;

  static StrategyProfile uniform(std::size_t n, int power) {
    return {std::vector<int>(n, power)};
  }
};

inline std::string to_string(const StrategyProfile& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ')';
  return os.str();
}

struct ProfileOutcome {
  Coords coords;
  std::vector<double> utilities;
  double mean_quality = 0.0;
  double min_quality = 0.0;
};

struct Deviation {
  ElementId element;
  int power;
  double gain;
};

struct NashCheck {
  bool is_equilibrium = true;
  std::vector<Deviation> improving;
};

struct NashResult {
  StrategyProfile profile;
  ProfileOutcome outcome;
  bool is_equilibrium = false;
  SolverMethod method = SolverMethod::exhaustive;
  int iterations = 0;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(double profiles, std::uint64_t budget)
      : std::runtime_error(message(profiles, budget)), profiles_(profiles), budget_(budget) {}

  double profiles() const { return profiles_; }
  std::uint64_t budget() const { return budget_; }

 private:
  static std::string message(double profiles, std::uint64_t budget) {
    std::ostringstream os;
    os << "exhaustive enumeration needs " << profiles << " profiles, budget is " << budget
       << "; use the best_response solver instead";
    return os.str();
  }

  double profiles_;
  std::uint64_t budget_;
};

/// Number of profiles in {0..k}^n, saturating at +inf.
inline double profile_count(std::size_t n, int k) {
  return std::pow(static_cast<double>(k) + 1.0, static_cast<double>(n));
}

/// The finite smoothing game on one mesh: players are elements, strategies
/// are transform powers 0..k, and a vertex moves to the mean of the positions
/// proposed by the elements that contain it.
///
/// Proposals T^j(e) are computed once at construction; every payoff query
/// afterwards is a local average plus one quality evaluation.
class Game {
 public:
  /// `pinned` marks extra vertices that keep their position regardless of
  /// the profile (empty means none).
  Game(const Mesh& mesh, GameConfig config, std::vector<bool> pinned = {})
      : mesh_(mesh), config_(std::move(config)), pinned_(std::move(pinned)) {
    if (config_.k < 0) throw std::invalid_argument("k must be non-negative");
    config_.transform.validate();
    if (!mesh_.is_planar()) config_.transform.reference_normal.reset();
    pinned_.resize(mesh_.vertex_count(), false);
    if (config_.fix_boundary) {
      for (VertexId v = 0; v < mesh_.vertex_count(); ++v) {
        if (mesh_.is_boundary(v)) pinned_[v] = true;
      }
    }
    const auto stride = static_cast<std::size_t>(config_.k) + 1;
    proposals_.resize(mesh_.element_count() * stride);
    for (ElementId e = 0; e < mesh_.element_count(); ++e) {
      Triangle t = mesh_.triangle(e);
      proposals_[e * stride] = t;
      for (int j = 1; j <= config_.k; ++j) {
        t = transform_element(t, config_.transform);
        proposals_[e * stride + j] = t;
      }
    }
  }

  const Mesh& mesh() const { return mesh_; }
  const GameConfig& config() const { return config_; }
  std::size_t players() const { return mesh_.element_count(); }
  int max_power() const { return config_.k; }
  bool is_pinned(VertexId v) const { return pinned_[v]; }

  /// T^j applied to element e's initial triangle.
  const Triangle& proposal(ElementId e, int j) const {
    return proposals_[e * (static_cast<std::size_t>(config_.k) + 1) + j];
  }

  void check_profile(const StrategyProfile& p) const {
    if (p.size() != players()) {
      throw std::invalid_argument("profile has " + std::to_string(p.size()) +
                                  " entries, mesh has " + std::to_string(players()) +
                                  " elements");
    }
    for (int s : p.powers) {
      if (s < 0 || s > config_.k) {
        throw std::invalid_argument("profile entry " + std::to_string(s) + " outside 0.." +
                                    std::to_string(config_.k));
      }
    }
  }

  /// New position of vertex v when element `deviator` plays `power` instead
  /// of its entry in p (pass deviator = npos for no deviation).
  Vec3 position(const StrategyProfile& p, VertexId v, ElementId deviator = npos,
                int power = 0) const {
    const Vec3 original = mesh_.positions()[v];
    if (pinned_[v]) return original;
    const auto incident = mesh_.elements_of(v);
    Vec3 sum;
    Vec3 first;
    bool all_equal = true;
    for (std::size_t n = 0; n < incident.size(); ++n) {
      const ElementId e = incident[n];
      const int j = e == deviator ? power : p[e];
      const Vec3 x = proposal(e, j)[local_index(e, v)];
      if (n == 0) {
        first = x;
      } else if (!(x == first)) {
        all_equal = false;
      }
      sum += x;
    }
    // identical proposals reproduce the proposal bit for bit
    if (all_equal) return first;
    return sum / static_cast<double>(incident.size());
  }

  double utility(const StrategyProfile& p, ElementId e, ElementId deviator = npos,
                 int power = 0) const {
    const auto& el = mesh_.elements()[e];
    const Triangle t{position(p, el[0], deviator, power), position(p, el[1], deviator, power),
                     position(p, el[2], deviator, power)};
    return triangle_quality(t, config_.metric, mesh_.is_planar());
  }

  ProfileOutcome evaluate(const StrategyProfile& p) const {
    check_profile(p);
    ProfileOutcome out;
    out.coords.resize(mesh_.vertex_count());
    for (VertexId v = 0; v < out.coords.size(); ++v) out.coords[v] = position(p, v);
    out.utilities.resize(players());
    for (ElementId e = 0; e < players(); ++e) {
      out.utilities[e] = triangle_quality(mesh_.triangle(e, out.coords), config_.metric,
                                          mesh_.is_planar());
    }
    const auto s = summarize(out.utilities);
    out.mean_quality = s.mean;
    out.min_quality = s.min;
    return out;
  }

  /// Unilateral deviations that raise the deviator's own payoff by more
  /// than kPayoffTolerance. With stop_at_first only the first one is kept.
  NashCheck check(const StrategyProfile& p, bool stop_at_first = false) const {
    check_profile(p);
    NashCheck result;
    for (ElementId e = 0; e < players(); ++e) {
      const double current = utility(p, e);
      for (int s = 0; s <= config_.k; ++s) {
        if (s == p[e]) continue;
        const double gain = utility(p, e, e, s) - current;
        if (gain > kPayoffTolerance) {
          result.is_equilibrium = false;
          result.improving.push_back({e, s, gain});
          if (stop_at_first) return result;
        }
      }
    }
    return result;
  }

  /// Smallest power whose payoff is not beaten by more than the tolerance.
  int best_response(const StrategyProfile& p, ElementId e) const {
    int best = 0;
    double best_u = utility(p, e, e, 0);
    for (int s = 1; s <= config_.k; ++s) {
      const double u = utility(p, e, e, s);
      if (u > best_u + kPayoffTolerance) {
        best = s;
        best_u = u;
      }
    }
    return best;
  }

  void require_enumerable() const {
    const double count = profile_count(players(), config_.k);
    if (!(count <= static_cast<double>(config_.enumeration_budget))) {
      throw BudgetExceeded(count, config_.enumeration_budget);
    }
  }

  /// Visits every profile of {0..k}^n in lexicographic order.
  template <class Visitor>
  void for_each_profile(Visitor&& visit) const {
    require_enumerable();
    StrategyProfile p = StrategyProfile::uniform(players(), 0);
    while (true) {
      visit(static_cast<const StrategyProfile&>(p));
      std::size_t i = players();
      while (i > 0 && p[i - 1] == config_.k) p[--i] = 0;
      if (i == 0) return;
      ++p[i - 1];
    }
  }

  static constexpr ElementId npos = std::numeric_limits<ElementId>::max();

 private:
  int local_index(ElementId e, VertexId v) const {
    const auto& el = mesh_.elements()[e];
    return el[0] == v ? 0 : el[1] == v ? 1 : 2;
  }

  const Mesh& mesh_;
  GameConfig config_;
  std::vector<bool> pinned_;
  std::vector<Triangle> proposals_;
};

inline ProfileOutcome evaluate_profile(const Mesh& mesh, const StrategyProfile& profile,
                                       const GameConfig& config) {
  return Game(mesh, config).evaluate(profile);
}

inline NashCheck verify_nash(const Mesh& mesh, const StrategyProfile& profile,
                             const GameConfig& config) {
  return Game(mesh, config).check(profile);
}

/// All pure equilibria of the game, in lexicographic order.
inline std::vector<NashResult> exhaustive_nash(const Game& game) {
  game.config().validate();
  std::vector<NashResult> found;
  game.for_each_profile([&](const StrategyProfile& p) {
    if (game.check(p, /*stop_at_first=*/true).is_equilibrium) {
      found.push_back({p, game.evaluate(p), true, SolverMethod::exhaustive, 1});
    }
  });
  return found;
}

inline std::vector<NashResult> exhaustive_nash(const Mesh& mesh, const GameConfig& config) {
  return exhaustive_nash(Game(mesh, config));
}

/// Round-robin best-response dynamics in element order. Converged results
/// are confirmed with a full deviation check.
inline NashResult best_response_nash(const Game& game, StrategyProfile start, int max_rounds) {
  game.config().validate();
  game.check_profile(start);
  if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");

  NashResult r;
  r.method = SolverMethod::best_response;
  r.profile = std::move(start);
  for (int round = 1; round <= max_rounds; ++round) {
    bool changed = false;
    for (ElementId e = 0; e < game.players(); ++e) {
      const int br = game.best_response(r.profile, e);
      if (br == r.profile[e]) continue;
      if (game.utility(r.profile, e, e, br) > game.utility(r.profile, e) + kPayoffTolerance) {
        r.profile[e] = br;
        changed = true;
      }
    }
    r.iterations = round;
    if (!changed) {
      r.is_equilibrium = game.check(r.profile, true).is_equilibrium;
      break;
    }
  }
  r.outcome = game.evaluate(r.profile);
  return r;
}

inline NashResult best_response_nash(const Mesh& mesh, const GameConfig& config,
                                     StrategyProfile start, int max_rounds) {
  return best_response_nash(Game(mesh, config), std::move(start), max_rounds);
}

struct BestProfile {
  StrategyProfile profile;
  ProfileOutcome outcome;
};

/// Profile maximizing the mean element quality. A later profile only
/// replaces the incumbent when it is better by more than kPayoffTolerance, so
/// the lexicographically smallest profile wins ties up to rounding.
inline BestProfile best_profile(const Game& game) {
  game.config().validate();
  StrategyProfile best;
  double best_mean = -std::numeric_limits<double>::infinity();
  std::vector<double> q(game.players());
  Coords coords(game.mesh().vertex_count());
  game.for_each_profile([&](const StrategyProfile& p) {
    for (VertexId v = 0; v < coords.size(); ++v) coords[v] = game.position(p, v);
    for (ElementId e = 0; e < game.players(); ++e) {
      q[e] = triangle_quality(game.mesh().triangle(e, coords), game.config().metric,
                              game.mesh().is_planar());
    }
    const double mean = summarize(q).mean;
    if (mean > best_mean + kPayoffTolerance) {
      best_mean = mean;
      best = p;
    }
  });
  return {best, game.evaluate(best)};
}

inline BestProfile best_profile(const Mesh& mesh, const GameConfig& config) {
  return best_profile(Game(mesh, config));
}

/// Outcome of the all-k profile, i.e. every element applies T^k.
inline ProfileOutcome uniform_profile_outcome(const Mesh& mesh, const GameConfig& config) {
  const Game game(mesh, config);
  return game.evaluate(StrategyProfile::uniform(mesh.element_count(), config.k));
}

}  // namespace nashsmooth
