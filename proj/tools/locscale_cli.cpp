// Command-line front end: ingests CSV/PGM data, runs the scale-transform
// pipelines and emits scales.csv / decay.csv / summary.json. Identical inputs
// and configuration produce byte-identical outputs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "locscale/beta.hpp"
#include "locscale/diffusion.hpp"
#include "locscale/geometry.hpp"
#include "locscale/io.hpp"
#include "locscale/kernel.hpp"
#include "locscale/scalespace.hpp"
#include "locscale/signal.hpp"
#include "locscale/surface_scales.hpp"
#include "locscale/synth.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace locscale;

namespace {

struct RunConfig {
  double a = 2.0;
  double tau_min = -8.0;
  double tau_max = 2.0;
  int tau_steps = 81;
  double eps_trunc = 1e-12;
  double beta = -1.0;  // < 0: visibility filter disabled
  double delta = 0.0;
  int nmax = 4;
  std::string measure = "surface";   // surface | hausdorff | explicit
  std::string boundary = "periodic"; // periodic | zero | clamp
  std::string out = ".";
  int threads = 0;  // 0 = auto; seeded from LOCSCALE_THREADS
};

ScaleGrid grid_of(const RunConfig& cfg) {
  ScaleGrid g{cfg.a, cfg.tau_min, cfg.tau_max, cfg.tau_steps};
  g.validate();
  return g;
}

Boundary boundary_of(const RunConfig& cfg) {
  if (cfg.boundary == "periodic") return Boundary::periodic;
  if (cfg.boundary == "zero") return Boundary::zero_pad;
  if (cfg.boundary == "clamp") return Boundary::clamp;
  throw std::invalid_argument("unknown boundary policy: " + cfg.boundary);
}

MeasureMode measure_of(const RunConfig& cfg) {
  if (cfg.measure == "surface") return MeasureMode::surface;
  if (cfg.measure == "hausdorff") return MeasureMode::hausdorff_param;
  if (cfg.measure == "explicit") return MeasureMode::explicit_weights;
  throw std::invalid_argument("unknown measure mode: " + cfg.measure);
}

std::optional<double> beta_of(const RunConfig& cfg) {
  if (cfg.beta < 0.0) return std::nullopt;
  return cfg.beta;
}

// JSON config file: same keys as the flags; flags passed on the command line
// win. The file is applied before CLI11 parses, so unset flags keep its values.
void apply_config_file(int argc, char** argv, RunConfig& cfg) {
  std::string path;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") path = argv[i + 1];
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw io::FormatError("cannot open config: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw io::FormatError("config is not valid JSON: " + std::string(e.what()));
  }
  if (j.contains("a")) cfg.a = j["a"];
  if (j.contains("tau_min")) cfg.tau_min = j["tau_min"];
  if (j.contains("tau_max")) cfg.tau_max = j["tau_max"];
  if (j.contains("tau_steps")) cfg.tau_steps = j["tau_steps"];
  if (j.contains("eps_trunc")) cfg.eps_trunc = j["eps_trunc"];
  if (j.contains("beta")) cfg.beta = j["beta"];
  if (j.contains("delta")) cfg.delta = j["delta"];
  if (j.contains("Nmax")) cfg.nmax = j["Nmax"];
  if (j.contains("measure")) cfg.measure = j["measure"];
  if (j.contains("boundary")) cfg.boundary = j["boundary"];
  if (j.contains("out")) cfg.out = j["out"];
}

json grid_echo(const ScaleGrid& g) {
  return json{{"a", g.a},
              {"tau_min", g.tau_min},
              {"tau_max", g.tau_max},
              {"steps", g.steps},
              {"dtau", g.dtau()}};
}

void write_summary(const RunConfig& cfg, json summary) {
  summary["threads"] = cfg.threads;
  std::ofstream out(fs::path(cfg.out) / "summary.json");
  if (!out) throw io::FormatError("cannot write summary.json in " + cfg.out);
  out << summary.dump(2) << "\n";
}

json fit_echo(const std::optional<ExponentialFit>& fit) {
  if (!fit) return nullptr;
  return json{{"c1", fit->c1}, {"c2", fit->c2}};
}

SampledField read_field_any(const std::string& path, Boundary boundary) {
  if (fs::path(path).extension() == ".pgm") return io::read_pgm(path, boundary);
  return io::read_field_csv(path, boundary);
}

io::CurveSidecar read_sidecar(const std::string& curve_path,
                              const std::string& meta_path) {
  std::string path = meta_path;
  if (path.empty()) {
    const std::string candidate = curve_path + ".json";
    if (fs::exists(candidate)) path = candidate;
  }
  io::CurveSidecar meta;
  if (path.empty()) return meta;
  std::ifstream in(path);
  if (!in) throw io::FormatError("cannot open sidecar: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw io::FormatError("sidecar is not valid JSON: " + std::string(e.what()));
  }
  if (j.contains("d")) meta.d = j["d"];
  if (j.contains("n")) meta.n = j["n"];
  if (j.contains("closed")) meta.closed = j["closed"];
  if (j.contains("kind"))
    meta.kind = (j["kind"] == "graph") ? SurfaceKind::lipschitz_graph
                                       : SurfaceKind::general_parametric;
  return meta;
}

void write_sidecar(const std::string& path, const ParamSurface& s) {
  json j{{"d", s.d},
         {"n", s.n},
         {"closed", s.closed},
         {"kind", s.kind == SurfaceKind::lipschitz_graph ? "graph"
                                                         : "parametric"}};
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

QuadratureMeasure load_measure(const std::string& path, const RunConfig& cfg,
                               const std::string& meta_path,
                               ParamSurface* surface_out = nullptr) {
  const io::CurveSidecar meta = read_sidecar(path, meta_path);
  const io::CurveData data = io::read_curve_csv(path, meta);
  const MeasureMode mode = measure_of(cfg);
  if (mode == MeasureMode::explicit_weights && !data.explicit_weights)
    throw io::FormatError("explicit measure mode needs a w column: " + path);
  if (surface_out) *surface_out = data.surface;
  return as_measure(data.surface, mode,
                    data.explicit_weights ? &*data.explicit_weights : nullptr);
}

// ---------------------------------------------------------------------------

int run_scales_fn(const RunConfig& cfg, const std::string& input) {
  const ScaleGrid grid = grid_of(cfg);
  const SampledField field = read_field_any(input, boundary_of(cfg));
  const ScaleStack stack = scale_transform_field(field, grid, 2, cfg.eps_trunc);
  std::vector<LocalScaleSet> sets;
  for (int p = 0; p < stack.num_points(); ++p)
    sets.push_back(classify_scales(stack, p, std::max(cfg.beta, 0.0), cfg.delta));
  io::write_scales_csv((fs::path(cfg.out) / "scales.csv").string(), sets);
  const OmegaReport rep = omega_sets(stack, field.cell_volume(), cfg.delta,
                                     beta_of(cfg), cfg.nmax);
  io::write_decay_csv((fs::path(cfg.out) / "decay.csv").string(), rep.measures);
  long total_scales = 0;
  for (const auto& s : sets) total_scales += static_cast<long>(s.entries.size());
  write_summary(cfg, json{{"subcommand", "scales-fn"},
                          {"input", input},
                          {"grid", grid_echo(grid)},
                          {"points", stack.num_points()},
                          {"total_scales", total_scales},
                          {"delta", cfg.delta},
                          {"beta", cfg.beta < 0.0 ? json(nullptr) : json(cfg.beta)},
                          {"fit", fit_echo(rep.fit)},
                          {"warnings", json::array()}});
  return 0;
}

int run_scales_curve(const RunConfig& cfg, const std::string& input,
                     const std::string& meta_path, int eval_stride) {
  const ScaleGrid grid = grid_of(cfg);
  const QuadratureMeasure measure = load_measure(input, cfg, meta_path);
  std::vector<long> eval;
  for (long i = 0; i < measure.size(); i += eval_stride) eval.push_back(i);
  const SurfaceScaleRun run =
      make_surface_run(measure, eval, grid, 2, cfg.eps_trunc);
  std::vector<LocalScaleSet> sets;
  for (std::size_t p = 0; p < eval.size(); ++p) {
    LocalScaleSet set = classify_scales(run.stack, static_cast<int>(p),
                                        std::max(cfg.beta, 0.0), cfg.delta);
    set.point = static_cast<int>(eval[p]);
    sets.push_back(std::move(set));
  }
  io::write_scales_csv((fs::path(cfg.out) / "scales.csv").string(), sets);
  const GammaSetReport rep = gamma_sets(run, cfg.delta, beta_of(cfg), cfg.nmax);
  io::write_decay_csv((fs::path(cfg.out) / "decay.csv").string(),
                      rep.mu_measures);
  json warnings = json::array();
  if (measure.degenerate_warnings > 0)
    warnings.push_back("degenerate_jacobians: " +
                       std::to_string(measure.degenerate_warnings));
  const long uncovered =
      static_cast<long>(run.stack.covered.size()) - run.stack.covered.count();
  if (uncovered > 0)
    warnings.push_back("uncovered_point_scale_pairs: " +
                       std::to_string(uncovered));
  long total_scales = 0;
  for (const auto& s : sets) total_scales += static_cast<long>(s.entries.size());
  write_summary(cfg, json{{"subcommand", "scales-curve"},
                          {"input", input},
                          {"grid", grid_echo(grid)},
                          {"measure_mode", cfg.measure},
                          {"eval_points", static_cast<long>(eval.size())},
                          {"total_scales", total_scales},
                          {"total_mass", measure.total_mass()},
                          {"gamma_star", measure.gamma_star},
                          {"delta", cfg.delta},
                          {"beta", cfg.beta < 0.0 ? json(nullptr) : json(cfg.beta)},
                          {"fit", fit_echo(rep.fit)},
                          {"warnings", warnings}});
  return 0;
}

int run_nontangential(const RunConfig& cfg, const std::string& input) {
  const ScaleGrid grid = grid_of(cfg);
  const SampledField field = read_field_any(input, boundary_of(cfg));
  const ScaleStack stack = scale_transform_field(field, grid, 0, cfg.eps_trunc);
  Eigen::MatrixXd positions(field.dims, field.size());
  for (int iy = 0; iy < field.shape[1]; ++iy)
    for (int ix = 0; ix < field.shape[0]; ++ix) {
      const int p = iy * field.shape[0] + ix;
      positions(0, p) = ix * field.h;
      if (field.dims == 2) positions(1, p) = iy * field.h;
    }
  const ScaleStack star = nontangential_stack(stack, positions);
  std::ofstream out(fs::path(cfg.out) / "nontangential.csv");
  if (!out) throw io::FormatError("cannot write nontangential.csv");
  out << "point_id,tau,t,S,S_star\n";
  for (int p = 0; p < stack.num_points(); ++p)
    for (int s = 0; s < grid.steps; ++s)
      out << p << "," << io::format_double(grid.tau(s)) << ","
          << io::format_double(grid.t(s)) << ","
          << io::format_double(stack.S(p, s)) << ","
          << io::format_double(star.S(p, s)) << "\n";
  const bool dominates =
      (star.S.array() >= stack.S.array().abs() - 1e-15).all();
  write_summary(cfg, json{{"subcommand", "nontangential"},
                          {"input", input},
                          {"grid", grid_echo(grid)},
                          {"points", stack.num_points()},
                          {"sup_S_star", star.S.maxCoeff()},
                          {"dominates", dominates},
                          {"warnings", json::array()}});
  return 0;
}

int run_beta(const RunConfig& cfg, const std::string& mode,
             const std::string& input, const std::string& meta_path,
             const std::string& p_str, double t, const std::string& norm_str,
             int level_min, int level_max) {
  if (mode == "pointwise") {
    const QuadratureMeasure measure = load_measure(input, cfg, meta_path);
    double p;
    if (p_str == "1")
      p = 1.0;
    else if (p_str == "2")
      p = 2.0;
    else if (p_str == "inf")
      p = std::numeric_limits<double>::infinity();
    else
      throw std::invalid_argument("beta: --p must be 1, 2 or inf");
    const BetaNorm norm = (norm_str == "scale") ? BetaNorm::scale_power
                                                : BetaNorm::ball_mass;
    std::ofstream out(fs::path(cfg.out) / "beta.csv");
    if (!out) throw io::FormatError("cannot write beta.csv");
    out << "point_id,beta\n";
    long defined = 0;
    double sup = 0.0;
    for (long i = 0; i < measure.size(); ++i) {
      const auto b = beta_p(measure, measure.points.col(i), t, p, measure.d, norm);
      if (!b) continue;
      ++defined;
      sup = std::max(sup, *b);
      out << i << "," << io::format_double(*b) << "\n";
    }
    write_summary(cfg, json{{"subcommand", "beta"},
                            {"mode", mode},
                            {"input", input},
                            {"p", p_str},
                            {"t", t},
                            {"norm", norm_str},
                            {"defined", defined},
                            {"sup_beta", sup},
                            {"warnings", json::array()}});
    return 0;
  }
  if (mode == "tsp") {
    const auto pts = io::read_points_csv(input);
    const double sum = tsp_sum(pts, level_min, level_max);
    write_summary(cfg, json{{"subcommand", "beta"},
                            {"mode", mode},
                            {"input", input},
                            {"level_min", level_min},
                            {"level_max", level_max},
                            {"points", static_cast<long>(pts.size())},
                            {"tsp_sum", sum},
                            {"warnings", json::array()}});
    return 0;
  }
  if (mode == "dyadic") {
    const auto pts = io::read_points_csv(input);
    std::ofstream out(fs::path(cfg.out) / "beta.csv");
    if (!out) throw io::FormatError("cannot write beta.csv");
    out << "level,j,k,beta,points_in_3q\n";
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    if (!pts.empty()) {
      xmin = xmax = pts[0].x();
      ymin = ymax = pts[0].y();
      for (const auto& p : pts) {
        xmin = std::min(xmin, p.x());
        xmax = std::max(xmax, p.x());
        ymin = std::min(ymin, p.y());
        ymax = std::max(ymax, p.y());
      }
    }
    long squares = 0;
    for (int level = level_min; level <= level_max; ++level) {
      const double l = std::pow(2.0, -level);
      const long j0 = static_cast<long>(std::floor(xmin / l)) - 1;
      const long j1 = static_cast<long>(std::floor(xmax / l)) + 1;
      const long k0 = static_cast<long>(std::floor(ymin / l)) - 1;
      const long k1 = static_cast<long>(std::floor(ymax / l)) + 1;
      for (long j = j0; j <= j1; ++j)
        for (long k = k0; k <= k1; ++k) {
          const DyadicBeta b = dyadic_beta(pts, DyadicSquare{level, j, k});
          if (b.points_in_3q == 0) continue;
          ++squares;
          out << level << "," << j << "," << k << ","
              << io::format_double(b.beta) << "," << b.points_in_3q << "\n";
        }
    }
    write_summary(cfg, json{{"subcommand", "beta"},
                            {"mode", mode},
                            {"input", input},
                            {"level_min", level_min},
                            {"level_max", level_max},
                            {"squares", squares},
                            {"warnings", json::array()}});
    return 0;
  }
  throw std::invalid_argument("beta: unknown mode " + mode);
}

int run_diffuse(const RunConfig& cfg, const std::string& input,
                const std::string& meta_path, double t_param) {
  ParamSurface surface;
  load_measure(input, cfg, meta_path, &surface);
  ParamComponents comps;
  comps.d = surface.d;
  comps.n = surface.n;
  comps.extents = surface.extents;
  comps.closed = surface.closed;
  comps.components = surface.samples;
  const ParamComponents diffused = diffuse_curve(comps, t_param, cfg.eps_trunc);
  ParamSurface out_surface = surface;
  out_surface.samples = diffused.components;
  const std::string out_path = (fs::path(cfg.out) / "diffused.csv").string();
  io::write_curve_csv(out_path, out_surface);
  write_sidecar(out_path + ".json", out_surface);

  // parametric local scales of the original curve (scale in parameter units)
  const ScaleGrid grid = grid_of(cfg);
  const ScaleStack stack = parametric_scale_stack(comps, grid, cfg.eps_trunc);
  std::ofstream sc(fs::path(cfg.out) / "parametric_scales.csv");
  if (!sc) throw io::FormatError("cannot write parametric_scales.csv");
  sc << "point_id,tau,t_param,S\n";
  for (int p = 0; p < stack.num_points(); ++p)
    for (int i : detect_local_scales(stack.S.row(p), grid))
      sc << p << "," << io::format_double(grid.tau(i)) << ","
         << io::format_double(grid.t(i)) << ","
         << io::format_double(stack.S(p, i)) << "\n";
  const double max_disp =
      (diffused.components - comps.components).colwise().norm().maxCoeff();
  write_summary(cfg, json{{"subcommand", "diffuse"},
                          {"input", input},
                          {"t_param", t_param},
                          {"grid", grid_echo(grid)},
                          {"max_displacement", max_disp},
                          {"warnings", json::array()}});
  return 0;
}

int run_probe_bounds(const RunConfig& cfg, const std::string& input,
                     const std::string& meta_path, int k,
                     const std::vector<double>& t_list, int eval_stride) {
  const QuadratureMeasure measure = load_measure(input, cfg, meta_path);
  std::vector<long> eval_idx;
  for (long i = 0; i < measure.size(); i += eval_stride) eval_idx.push_back(i);
  Eigen::MatrixXd eval(measure.ambient_dim(),
                       static_cast<long>(eval_idx.size()));
  for (std::size_t i = 0; i < eval_idx.size(); ++i)
    eval.col(static_cast<long>(i)) = measure.points.col(eval_idx[i]);
  const DerivativeBoundProbe probe =
      derivative_bound_probe(measure, eval, k, t_list, cfg.eps_trunc);
  std::ofstream out(fs::path(cfg.out) / "probe.csv");
  if (!out) throw io::FormatError("cannot write probe.csv");
  out << "t,sup\n";
  for (const auto& [t, sup] : probe.per_t)
    out << io::format_double(t) << "," << io::format_double(sup) << "\n";
  json warnings = json::array();
  if (measure.degenerate_warnings > 0)
    warnings.push_back("degenerate_jacobians: " +
                       std::to_string(measure.degenerate_warnings));
  write_summary(cfg, json{{"subcommand", "probe-bounds"},
                          {"input", input},
                          {"measure_mode", cfg.measure},
                          {"k", k},
                          {"gamma_star", measure.gamma_star},
                          {"sup_value", probe.sup_value},
                          {"warnings", warnings}});
  return 0;
}

int run_synth(const RunConfig& cfg, const std::string& kind, int m, int m2,
              double h, double amplitude, double slope, int teeth, double h_r,
              double extent, double radius, int samples, int level,
              double value) {
  const fs::path outdir(cfg.out);
  json summary{{"subcommand", "synth"}, {"kind", kind}};
  if (kind == "sine") {
    io::write_field_csv((outdir / "field.csv").string(),
                        synth::sine_signal(m, h, amplitude));
    summary["m"] = m;
    summary["h"] = h;
    summary["file"] = "field.csv";
  } else if (kind == "two-freq") {
    io::write_field_csv((outdir / "field.csv").string(),
                        synth::two_freq_signal(m, m2, h));
    summary["m1"] = m;
    summary["m2"] = m2;
    summary["file"] = "field.csv";
  } else if (kind == "constant") {
    io::write_field_csv((outdir / "field.csv").string(),
                        synth::constant_field(value, h));
    summary["file"] = "field.csv";
  } else if (kind == "koch") {
    io::write_points_csv((outdir / "points.csv").string(), synth::koch(level));
    summary["level"] = level;
    summary["file"] = "points.csv";
  } else {
    ParamSurface s;
    if (kind == "sine-graph")
      s = synth::sine_graph(m, amplitude, h_r, extent);
    else if (kind == "tent-graph")
      s = synth::tent_graph(slope, teeth, h_r, extent);
    else if (kind == "segment")
      s = synth::segment(extent, samples);
    else if (kind == "circle")
      s = synth::circle(radius, samples);
    else if (kind == "plane")
      s = synth::plane_patch(extent, samples);
    else
      throw std::invalid_argument("synth: unknown kind " + kind);
    const std::string path = (outdir / "curve.csv").string();
    io::write_curve_csv(path, s);
    write_sidecar(path + ".json", s);
    summary["points"] = s.num_points();
    summary["file"] = "curve.csv";
  }
  summary["warnings"] = json::array();
  write_summary(cfg, summary);
  return 0;
}

int run_check_consistency(const RunConfig& cfg, const std::string& kind,
                          const std::string& base_path,
                          const std::string& dilated_path,
                          const std::string& meta_base,
                          const std::string& meta_dilated, double dilation,
                          int exponent) {
  const ScaleGrid grid_base = grid_of(cfg);
  const double shift = exponent * std::log(dilation) / std::log(cfg.a);
  ScaleGrid grid_dil = grid_base;
  grid_dil.tau_min += shift;
  grid_dil.tau_max += shift;

  LocalScaleSet set_base, set_dil;
  if (kind == "curve") {
    const QuadratureMeasure mb = load_measure(base_path, cfg, meta_base);
    const QuadratureMeasure md = load_measure(dilated_path, cfg, meta_dilated);
    const SurfaceScaleRun rb =
        make_surface_run(mb, {0}, grid_base, 2, cfg.eps_trunc);
    const SurfaceScaleRun rd =
        make_surface_run(md, {0}, grid_dil, 2, cfg.eps_trunc);
    set_base = classify_scales(rb.stack, 0, std::max(cfg.beta, 0.0), cfg.delta);
    set_dil = classify_scales(rd.stack, 0, std::max(cfg.beta, 0.0), cfg.delta);
  } else if (kind == "field") {
    const SampledField fb = read_field_any(base_path, boundary_of(cfg));
    const SampledField fd = read_field_any(dilated_path, boundary_of(cfg));
    const ScaleStack sb = scale_transform_field(fb, grid_base, 2, cfg.eps_trunc);
    const ScaleStack sd = scale_transform_field(fd, grid_dil, 2, cfg.eps_trunc);
    int pb = 0, pd = 0;
    fb.values.cwiseAbs().maxCoeff(&pb);
    fd.values.cwiseAbs().maxCoeff(&pd);
    set_base = classify_scales(sb, pb, std::max(cfg.beta, 0.0), cfg.delta);
    set_dil = classify_scales(sd, pd, std::max(cfg.beta, 0.0), cfg.delta);
  } else {
    throw std::invalid_argument("check-consistency: kind must be curve|field");
  }
  const ConsistencyReport rep = check_dilation_consistency(
      set_base, set_dil, dilation, grid_base, grid_dil, exponent);
  write_summary(cfg,
                json{{"subcommand", "check-consistency"},
                     {"kind", kind},
                     {"base", base_path},
                     {"dilated", dilated_path},
                     {"dilation", dilation},
                     {"exponent", exponent},
                     {"grid", grid_echo(grid_base)},
                     {"count_base", static_cast<long>(set_base.entries.size())},
                     {"count_dilated", static_cast<long>(set_dil.entries.size())},
                     {"count_match", rep.count_match},
                     {"shift_measured", rep.shift_measured},
                     {"shift_expected", rep.shift_expected},
                     {"pass", rep.pass},
                     {"warnings", json::array()}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* env = std::getenv("LOCSCALE_THREADS")) {
    try {
      cfg.threads = std::max(0, std::stoi(env));
    } catch (...) {
      cfg.threads = 0;
    }
  }
  Eigen::setNbThreads(cfg.threads);

  CLI::App app{"Multiscale local-scale analysis of sampled functions and "
               "curves/surfaces"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override)");
  app.add_option("--a", cfg.a, "scale lattice base (> 1)");
  app.add_option("--tau-min", cfg.tau_min, "smallest log_a(t)");
  app.add_option("--tau-max", cfg.tau_max, "largest log_a(t)");
  app.add_option("--tau-steps", cfg.tau_steps, "lattice points (>= 3)");
  app.add_option("--eps-trunc", cfg.eps_trunc, "kernel truncation threshold");
  app.add_option("--beta", cfg.beta, "visibility threshold (< 0 disables)");
  app.add_option("--delta", cfg.delta, "separation threshold");
  app.add_option("--nmax", cfg.nmax, "largest N in the decay reports");
  app.add_option("--measure", cfg.measure, "surface | hausdorff | explicit");
  app.add_option("--boundary", cfg.boundary, "periodic | zero | clamp");
  app.add_option("--out", cfg.out, "output directory");

  std::string input, input2, meta_path, meta_path2;
  int eval_stride = 1;

  auto* sc_fn = app.add_subcommand("scales-fn",
                                   "local scales + decay report of a field");
  sc_fn->add_option("input", input, "field CSV or PGM")->required();

  auto* sc_curve = app.add_subcommand(
      "scales-curve", "local scales + decay report of a curve/surface");
  sc_curve->add_option("input", input, "curve CSV")->required();
  sc_curve->add_option("--meta", meta_path, "sidecar JSON path");
  sc_curve->add_option("--eval-stride", eval_stride,
                       "evaluate every k-th sample");

  auto* sc_nt = app.add_subcommand("nontangential",
                                   "nontangential maximal stack of a field");
  sc_nt->add_option("input", input, "field CSV or PGM")->required();

  std::string beta_mode = "pointwise", beta_p_str = "2", beta_norm = "ball";
  double beta_t = 0.25;
  int level_min = 0, level_max = 4;
  auto* sc_beta = app.add_subcommand("beta", "flatness numbers");
  sc_beta->add_option("input", input, "curve CSV (pointwise) or points CSV")
      ->required();
  sc_beta->add_option("--mode", beta_mode, "pointwise | dyadic | tsp");
  sc_beta->add_option("--meta", meta_path, "sidecar JSON path");
  sc_beta->add_option("--p", beta_p_str, "1 | 2 | inf");
  sc_beta->add_option("--t", beta_t, "ball radius");
  sc_beta->add_option("--norm", beta_norm, "ball | scale");
  sc_beta->add_option("--level-min", level_min, "coarsest dyadic level");
  sc_beta->add_option("--level-max", level_max, "finest dyadic level");

  double t_param = 0.1;
  auto* sc_diff = app.add_subcommand("diffuse",
                                     "heat diffusion of a parametrized curve");
  sc_diff->add_option("input", input, "curve CSV")->required();
  sc_diff->add_option("--meta", meta_path, "sidecar JSON path");
  sc_diff->add_option("--t-param", t_param, "diffusion scale (parameter units)")
      ->required();

  int probe_k = 1;
  std::vector<double> probe_ts;
  auto* sc_probe = app.add_subcommand(
      "probe-bounds", "sup of t^k |d^k/dt^k S| over eval points");
  sc_probe->add_option("input", input, "curve CSV")->required();
  sc_probe->add_option("--meta", meta_path, "sidecar JSON path");
  sc_probe->add_option("--k", probe_k, "derivative order (0..3)");
  sc_probe->add_option("--t", probe_ts, "scales to probe")->required();
  sc_probe->add_option("--eval-stride", eval_stride,
                       "evaluate every k-th sample");

  std::string synth_kind = "sine";
  int m = 1, m2 = 2, teeth = 4, samples = 64, level = 3;
  double h = 1.0 / 256, amplitude = 1.0, slope = 1.0, h_r = 1.0 / 256;
  double extent = 1.0, radius = 1.0, value = 0.0;
  auto* sc_synth = app.add_subcommand("synth", "write a standard fixture");
  sc_synth->set_help_flag("--help", "print this help message and exit");
  sc_synth->add_option("--kind", synth_kind,
                       "sine | two-freq | constant | sine-graph | tent-graph | "
                       "segment | circle | plane | koch")
      ->required();
  sc_synth->add_option("--m", m, "frequency");
  sc_synth->add_option("--m2", m2, "second frequency");
  sc_synth->add_option("--h", h, "sample spacing");
  sc_synth->add_option("--amplitude", amplitude, "amplitude");
  sc_synth->add_option("--slope", slope, "tent slope");
  sc_synth->add_option("--teeth", teeth, "tent teeth per unit");
  sc_synth->add_option("--h-r", h_r, "parameter spacing");
  sc_synth->add_option("--extent", extent, "parameter extent / length");
  sc_synth->add_option("--radius", radius, "circle radius");
  sc_synth->add_option("--samples", samples, "sample count (per axis)");
  sc_synth->add_option("--level", level, "koch level");
  sc_synth->add_option("--value", value, "constant value");

  std::string cc_kind = "curve";
  double dilation = 2.0;
  int exponent = 2;
  auto* sc_cc = app.add_subcommand("check-consistency",
                                   "dilation covariance of detected scales");
  sc_cc->add_option("base", input, "base input")->required();
  sc_cc->add_option("dilated", input2, "dilated input")->required();
  sc_cc->add_option("--kind", cc_kind, "curve | field");
  sc_cc->add_option("--meta", meta_path, "base sidecar JSON");
  sc_cc->add_option("--meta-dilated", meta_path2, "dilated sidecar JSON");
  sc_cc->add_option("--dilation", dilation, "dilation factor")->required();
  sc_cc->add_option("--exponent", exponent,
                    "tau-shift exponent: +2 set dilation, -2 argument dilation");

  try {
    apply_config_file(argc, argv, cfg);
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 1;
  } catch (const io::FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }

  try {
    fs::create_directories(cfg.out);
    if (*sc_fn) return run_scales_fn(cfg, input);
    if (*sc_curve) return run_scales_curve(cfg, input, meta_path, eval_stride);
    if (*sc_nt) return run_nontangential(cfg, input);
    if (*sc_beta)
      return run_beta(cfg, beta_mode, input, meta_path, beta_p_str, beta_t,
                      beta_norm, level_min, level_max);
    if (*sc_diff) return run_diffuse(cfg, input, meta_path, t_param);
    if (*sc_probe)
      return run_probe_bounds(cfg, input, meta_path, probe_k, probe_ts,
                              eval_stride);
    if (*sc_synth)
      return run_synth(cfg, synth_kind, m, m2, h, amplitude, slope, teeth, h_r,
                       extent, radius, samples, level, value);
    if (*sc_cc)
      return run_check_consistency(cfg, cc_kind, input, input2, meta_path,
                                   meta_path2, dilation, exponent);
    std::cerr << app.help() << "\n";
    return 1;
  } catch (const io::FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "contract error: " << e.what() << "\n";
    return 3;
  }
}
