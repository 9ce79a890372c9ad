// nashsmooth: game-theoretic triangle mesh smoothing from the command line.
//
//   nashsmooth scenario fan4 --out-dir out
//   nashsmooth compare fan4 --k 1..6 --out-dir out
//   nashsmooth smooth mesh.off --k 2 --q 0.6 --mode local --out-dir out

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nashsmooth/nashsmooth.hpp"

namespace fs = std::filesystem;
using namespace nashsmooth;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;

struct Options {
  std::string input;
  std::string k = "2";
  double q = 0.6;
  std::string mode = "global";
  std::string solver = "exhaustive";
  std::string metric = "edge_ratio";
  bool fix_boundary = false;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  int max_iterations = 100;
  double theta = TransformParams{}.theta;
  double relaxation = TransformParams{}.relaxation;
  std::uint64_t budget = GameConfig{}.enumeration_budget;
};

// "3", "1..6" or "1,2,5"
std::vector<int> parse_k_list(const std::string& s) {
  std::vector<int> out;
  if (auto dots = s.find(".."); dots != std::string::npos) {
    const int lo = std::stoi(s.substr(0, dots));
    const int hi = std::stoi(s.substr(dots + 2));
    for (int k = lo; k <= hi; ++k) out.push_back(k);
  } else {
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoi(item));
  }
  if (out.empty()) throw std::invalid_argument("empty --k list");
  for (int k : out) {
    if (k < 1) throw std::invalid_argument("--k values must be >= 1");
  }
  return out;
}

SmoothingConfig make_config(const Options& o) {
  SmoothingConfig c;
  c.game.k = parse_k_list(o.k).back();
  c.game.transform.theta = o.theta;
  c.game.transform.relaxation = o.relaxation;
  c.game.metric = parse_metric(o.metric);
  c.game.fix_boundary = o.fix_boundary;
  c.game.enumeration_budget = o.budget;
  c.mode = parse_mode(o.mode);
  c.solver = parse_solver(o.solver);
  c.target_quality = o.q;
  c.max_iterations = o.max_iterations;
  c.validate();
  return c;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw io::IoError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
}

void add_game_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--k", o.k, "Largest transform power (compare accepts 1..6 or 1,3,5)");
  cmd->add_option("--metric", o.metric, "Element quality: edge_ratio or mean_ratio");
  cmd->add_flag("--fix-boundary", o.fix_boundary, "Keep mesh boundary vertices in place");
  cmd->add_option("--seed", o.seed, "Seed for perturbed scenarios");
  cmd->add_option("--out-dir", o.out_dir, "Directory for meshes, reports and figures");
  cmd->add_option("--theta", o.theta, "Apex height coefficient of the transform");
  cmd->add_option("--relaxation", o.relaxation, "Fraction of the move toward the apex, in (0,1]");
  cmd->add_option("--budget", o.budget, "Maximum number of profiles to enumerate");
}

int run_scenario(const Options& o) {
  const Mesh mesh = generate_scenario(o.input, o.seed);
  fs::create_directories(o.out_dir);
  const fs::path base = fs::path(o.out_dir) / o.input;
  io::write_off(base.string() + ".off", mesh);
  const std::vector<io::SvgLayer> layers{{mesh.positions(), {"initial", "black"}}};
  io::emit_svg(mesh, layers, base.string() + ".svg");
  const auto q = mesh_quality(mesh, mesh.positions(), parse_metric(o.metric));
  std::printf("%s: %zu vertices, %zu triangles, mean quality %.6f, min quality %.6f\n",
              o.input.c_str(), mesh.vertex_count(), mesh.element_count(), q.mean, q.min);
  return kExitOk;
}

int run_compare_cmd(const Options& o) {
  RunSpec spec;
  spec.input = o.input;
  spec.seed = o.seed;
  spec.smoothing = make_config(o);
  spec.k_values = parse_k_list(o.k);
  spec.out_dir = o.out_dir;
  const auto rec = run_compare(spec);
  write_json(fs::path(o.out_dir) / "report.json", to_json(rec));

  std::printf("initial   mean %.6f  min %.6f\n", rec.initial.mean, rec.initial.min);
  std::printf("%3s  %-22s %9s %9s  %-22s %9s %9s  %9s %9s\n", "k", "nash", "mean", "min", "best",
              "mean", "min", "uniform", "min");
  for (const auto& p : rec.sweep) {
    auto col = [](const std::optional<FamilyResult>& f) {
      return f ? to_string(f->profile) : std::string("-");
    };
    std::printf("%3d  %-22s %9.6f %9.6f  %-22s %9.6f %9.6f  %9.6f %9.6f\n", p.k,
                col(p.nash).c_str(), p.nash ? p.nash->mean_quality : 0.0,
                p.nash ? p.nash->min_quality : 0.0, col(p.best).c_str(),
                p.best ? p.best->mean_quality : 0.0, p.best ? p.best->min_quality : 0.0,
                p.uniform.mean_quality, p.uniform.min_quality);
    for (const auto& why : p.omissions) std::fprintf(stderr, "k=%d omitted %s\n", p.k, why.c_str());
  }
  return rec.partial() ? kExitBudget : kExitOk;
}

int run_smooth(const Options& o) {
  const SmoothingConfig config = make_config(o);
  const Mesh mesh = load_input(o.input, o.seed);
  const SmoothingReport report = smooth(mesh, config);

  fs::create_directories(o.out_dir);
  const fs::path dir(o.out_dir);
  io::write_off(dir / "smoothed.off", mesh, report.final_coords);
  write_json(dir / "report.json", to_json(report, config));
  if (mesh.is_planar()) {
    const std::vector<io::SvgLayer> layers{{mesh.positions(), {"initial", "black"}},
                                           {report.final_coords, {"smoothed", "blue"}}};
    io::emit_svg(mesh, layers, dir / "smoothed.svg");
  }

  const auto before = mesh_quality(mesh, mesh.positions(), config.game.metric);
  const auto after = mesh_quality(mesh, report.final_coords, config.game.metric);
  std::printf("iterations %zu, terminated by %s\n", report.iterations.size(),
              std::string(to_string(report.terminated_by)).c_str());
  std::printf("mean quality %.6f -> %.6f, min quality %.6f -> %.6f\n", before.mean, after.mean,
              before.min, after.min);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Game-theoretic triangle mesh smoothing"};
  app.require_subcommand(1);
  Options o;

  auto* smooth_cmd = app.add_subcommand("smooth", "Smooth a mesh by iterated Nash equilibria");
  smooth_cmd->add_option("input", o.input, "Mesh file (.off/.obj) or scenario name")->required();
  add_game_flags(smooth_cmd, o);
  smooth_cmd->add_option("--q", o.q, "Target minimum element quality");
  smooth_cmd->add_option("--mode", o.mode, "global or local (worst element first)");
  smooth_cmd->add_option("--solver", o.solver, "exhaustive or best_response");
  smooth_cmd->add_option("--max-iterations", o.max_iterations, "Iteration cap");

  auto* compare_cmd =
      app.add_subcommand("compare", "Compare Nash, best and uniform profiles over k");
  compare_cmd->add_option("input", o.input, "Mesh file (.off/.obj) or scenario name")->required();
  add_game_flags(compare_cmd, o);
  compare_cmd->add_option("--max-iterations", o.max_iterations,
                          "Iteration cap for the per-k quality trajectory");

  auto* scenario_cmd = app.add_subcommand("scenario", "Write one of the built-in fan meshes");
  scenario_cmd->add_option("input", o.input, "fan4, fan5, fan6 or <name>_perturbed")->required();
  scenario_cmd->add_option("--seed", o.seed, "Seed for perturbed scenarios");
  scenario_cmd->add_option("--out-dir", o.out_dir, "Output directory");
  scenario_cmd->add_option("--metric", o.metric, "Element quality: edge_ratio or mean_ratio");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*smooth_cmd) return run_smooth(o);
    if (*compare_cmd) return run_compare_cmd(o);
    return run_scenario(o);
  } catch (const BudgetExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBudget;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
}
