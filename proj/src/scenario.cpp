#include "wlab/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <vector>

#include "wlab/errors.hpp"
#include "wlab/io.hpp"
#include "wlab/propagation.hpp"
#include "wlab/quadrature.hpp"
#include "wlab/render.hpp"

namespace wlab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_tag(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", value);
  return buf;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Pulls parameters with defaults and rejects unknown keys.
class ParamReader {
 public:
  explicit ParamReader(const std::map<std::string, double>& params)
      : params_(params) {}

  double get(const std::string& key, double fallback) {
    seen_.insert(key);
    const auto it = params_.find(key);
    return it == params_.end() ? fallback : it->second;
  }

  void finish(const std::string& scenario) const {
    for (const auto& [key, value] : params_)
      if (!seen_.count(key))
        throw ConfigError("scenario " + scenario + ": unknown parameter '" + key +
                          "'");
  }

 private:
  const std::map<std::string, double>& params_;
  std::set<std::string> seen_;
};

class ArtifactWriter {
 public:
  explicit ArtifactWriter(fs::path dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
  }

  const fs::path& dir() const { return dir_; }

  template <typename Fn>
  void emit(const std::string& name, Fn&& writer) {
    const fs::path path = dir_ / name;
    writer(path);
    record(name);
    if (fs::exists(path.string() + ".json")) record(name + ".json");
  }

  void record(const std::string& name) {
    const fs::path path = dir_ / name;
    char crc[16];
    std::snprintf(crc, sizeof(crc), "%08x", file_crc32(path));
    entries_.push_back(
        {{"path", name}, {"bytes", fs::file_size(path)}, {"crc32", crc}});
  }

  json entries() const { return entries_; }

 private:
  fs::path dir_;
  json entries_ = json::array();
};

// Shared per-snapshot pipeline: Wigner grid, flow, marginals, renders, and
// the scalar diagnostics.
json emit_snapshot(ArtifactWriter& out, const std::string& tag,
                   const WaveFunction& psi, const Potential& v,
                   const SeriesPolicy& policy, int render_px) {
  const WignerGrid w = wigner_transform(psi);
  const FlowField j = wigner_flow(w, v, policy);
  const TangencyResult tangency = tangency_divergence(w, j);

  out.emit("state_t" + tag + ".wlab",
           [&](const fs::path& p) { save_wavefunction(p, psi); });
  out.emit("wigner_t" + tag + ".wlab",
           [&](const fs::path& p) { save_wigner(p, w); });
  out.emit("flow_t" + tag + ".wlab", [&](const fs::path& p) { save_flow(p, j); });
  out.emit("marginal_x_t" + tag + ".wlab", [&](const fs::path& p) {
    save_marginal(p, marginal_x(w), w.pgrid.x, "marginal_x", w.t);
  });
  out.emit("marginal_p_t" + tag + ".wlab", [&](const fs::path& p) {
    save_marginal(p, marginal_p(w), w.pgrid.p, "marginal_p", w.t);
  });

  RenderSpec map_spec;
  map_spec.width = render_px;
  map_spec.height = render_px;
  map_spec.style = RenderStyle::wigner_map;
  map_spec.marginal_panels = true;
  map_spec.colorbar = true;
  out.emit("wigner_t" + tag + ".ppm", [&](const fs::path& p) {
    write_image(render_wigner(w, map_spec), p);
  });

  json diag;
  diag["t"] = psi.t;
  diag["purity"] = purity(w);
  diag["negativity"] = negativity_volume(w);
  diag["tangency_summary"] = tangency.summary;
  diag["mean_x"] = expect_position_observable(psi, [](double x) { return x; });
  diag["mean_p"] = expect_momentum_observable(psi, [](double p) { return p; });
  diag["energy"] = total_energy(psi, v);
  return diag;
}

json run_free_packet(ParamReader& pr, ArtifactWriter& out) {
  const Constants consts{pr.get("hbar", 1.0), pr.get("mass", 1.0)};
  const GaussianParams params{pr.get("x_bar", 1.0), pr.get("p_bar", 3.0),
                              pr.get("sigma", 0.5)};
  const Grid1D grid(static_cast<int>(pr.get("n", 512)), pr.get("x_min", -16.0),
                    pr.get("x_max", 16.0));
  const double t_final = pr.get("t_final", 1.0);
  const double dt = pr.get("dt", 1.0 / 512.0);
  const int render_px = static_cast<int>(pr.get("render_px", 384));
  pr.finish("free_packet");

  const Potential v = Potential::free_space();
  const WaveFunction psi0 = gaussian_packet(grid, params, 0.0, consts);

  // Figure-1 family: the three wave-function views of the initial packet.
  for (const auto& [style, name] :
       {std::pair{RenderStyle::reim, "wavefunction_reim_t0.ppm"},
        std::pair{RenderStyle::phasor, "wavefunction_phasor_t0.ppm"},
        std::pair{RenderStyle::phase_color, "wavefunction_phase_color_t0.ppm"}}) {
    RenderSpec spec;
    spec.width = render_px;
    spec.height = render_px / 2;
    spec.style = style;
    spec.quiver_stride = 8;
    out.emit(name, [&](const fs::path& p) {
      write_image(render_wavefunction(psi0, spec), p);
    });
  }

  PropagationConfig cfg;
  cfg.dt = dt;
  cfg.steps = std::lround(t_final / dt);
  cfg.snapshot_stride = std::max<long>(1, cfg.steps);
  const auto snapshots = evolve(psi0, v, cfg);

  json diags = json::array();
  for (const WaveFunction& snap : snapshots)
    diags.push_back(
        emit_snapshot(out, format_tag(snap.t), snap, v, SeriesPolicy{}, render_px));
  return diags;
}

json run_ho_eigenstate(ParamReader& pr, ArtifactWriter& out) {
  const Constants consts{pr.get("hbar", 1.0), pr.get("mass", 1.0)};
  const double omega = pr.get("omega", 1.0);
  const int level = static_cast<int>(pr.get("level", 3));
  const Grid1D grid(static_cast<int>(pr.get("n", 512)), pr.get("x_min", -8.0),
                    pr.get("x_max", 8.0));
  const int render_px = static_cast<int>(pr.get("render_px", 384));
  pr.finish("ho_eigenstate");

  const Potential v = Potential::harmonic(omega);
  const WaveFunction psi = ho_eigenstate(grid, level, omega, consts);
  const WignerGrid w = wigner_transform(psi);
  const WignerGrid w_ref = analytic_ho_wigner(w.pgrid, level, omega, consts);
  const FlowField j = wigner_flow(w, v);
  const TangencyResult tangency = tangency_divergence(w, j);
  const double energy = consts.hbar * omega * (level + 0.5);

  out.emit("state.wlab", [&](const fs::path& p) { save_wavefunction(p, psi); });
  out.emit("wigner.wlab", [&](const fs::path& p) { save_wigner(p, w); });
  out.emit("wigner_analytic.wlab",
           [&](const fs::path& p) { save_wigner(p, w_ref); });
  out.emit("flow.wlab", [&](const fs::path& p) { save_flow(p, j); });
  out.emit("marginal_x.wlab", [&](const fs::path& p) {
    save_marginal(p, marginal_x(w), w.pgrid.x, "marginal_x", w.t);
  });
  out.emit("marginal_p.wlab", [&](const fs::path& p) {
    save_marginal(p, marginal_p(w), w.pgrid.p, "marginal_p", w.t);
  });

  RenderSpec spec;
  spec.width = render_px;
  spec.height = render_px;
  spec.style = RenderStyle::wigner_flow;
  spec.contours = true;
  spec.colorbar = true;
  spec.quiver_stride = std::max(1, grid.n() / 16);
  out.emit("wigner_flow.ppm", [&](const fs::path& p) {
    write_image(render_wigner(w, spec, &j), p);
  });

  json diag;
  diag["level"] = level;
  diag["energy"] = energy;
  diag["purity"] = purity(w);
  diag["negativity"] = negativity_volume(w);
  diag["tangency_summary"] = tangency.summary;
  diag["analytic_linf_error"] = (w.values - w_ref.values).abs().maxCoeff();
  diag["stationarity_linf"] = stationarity_residual(w_ref, v).abs().maxCoeff();
  diag["energy_residual_linf"] =
      energy_residual(w_ref, v, energy).abs().maxCoeff();
  return diag;
}

json run_anharmonic_ground(ParamReader& pr, ArtifactWriter& out) {
  const Constants consts{pr.get("hbar", 1.0), pr.get("mass", 1.0)};
  const double omega = pr.get("omega", 0.5);
  const std::vector<double> alphas = {pr.get("alpha_a", 0.0),
                                      pr.get("alpha_b", 0.25),
                                      pr.get("alpha_c", 0.75)};
  const Grid1D grid(static_cast<int>(pr.get("n", 512)), pr.get("x_min", -12.0),
                    pr.get("x_max", 12.0));
  const double dt = pr.get("dt", 1.0 / 256.0);
  const double tol = pr.get("tol", 1e-10);
  const int render_px = static_cast<int>(pr.get("render_px", 384));
  pr.finish("anharmonic_ground");

  json diags = json::array();
  for (double alpha : alphas) {
    const Potential v = alpha == 0.0 ? Potential::harmonic(omega)
                                     : Potential::quartic(omega, alpha);
    const auto [psi, energy] = imaginary_time_ground_state(grid, v, consts, dt, tol);
    const WignerGrid w = wigner_transform(psi);
    const FlowField j = wigner_flow(w, v);
    const TangencyResult tangency = tangency_divergence(w, j);

    char tag[16];
    std::snprintf(tag, sizeof(tag), "%.2f", alpha);
    out.emit(std::string("state_a") + tag + ".wlab",
             [&](const fs::path& p) { save_wavefunction(p, psi); });
    out.emit(std::string("wigner_a") + tag + ".wlab",
             [&](const fs::path& p) { save_wigner(p, w); });
    out.emit(std::string("flow_a") + tag + ".wlab",
             [&](const fs::path& p) { save_flow(p, j); });
    out.emit(std::string("marginal_x_a") + tag + ".wlab", [&](const fs::path& p) {
      save_marginal(p, marginal_x(w), w.pgrid.x, "marginal_x", w.t);
    });

    RenderSpec spec;
    spec.width = render_px;
    spec.height = render_px;
    spec.style = RenderStyle::wigner_flow;
    spec.contours = true;
    spec.colorbar = true;
    spec.quiver_stride = std::max(1, grid.n() / 16);
    out.emit(std::string("wigner_flow_a") + tag + ".ppm", [&](const fs::path& p) {
      write_image(render_wigner(w, spec, &j), p);
    });

    json d;
    d["alpha"] = alpha;
    d["energy"] = energy;
    d["purity"] = purity(w);
    d["negativity"] = negativity_volume(w);
    d["tangency_summary"] = tangency.summary;
    diags.push_back(d);
  }
  return diags;
}

json run_barrier(ParamReader& pr, ArtifactWriter& out) {
  const Constants consts{pr.get("hbar", 1.0), pr.get("mass", 1.0)};
  const double v0 = pr.get("v0", 64.0);
  const double delta = pr.get("delta", 0.125);
  const GaussianParams params{pr.get("x_bar", -4.0), pr.get("p_bar", 8.0),
                              pr.get("sigma", 0.5)};
  const Grid1D grid(static_cast<int>(pr.get("n", 2048)), pr.get("x_min", -16.0),
                    pr.get("x_max", 16.0));
  const double t_final = pr.get("t_final", 1.0);
  const double dt = pr.get("dt", 1.0 / 4096.0);
  const int render_px = static_cast<int>(pr.get("render_px", 384));
  pr.finish("barrier");

  const Potential v = Potential::tanh_barrier(v0, delta);
  const WaveFunction psi0 = gaussian_packet(grid, params, 0.0, consts);

  PropagationConfig cfg;
  cfg.dt = dt;
  cfg.steps = std::lround(t_final / dt);
  cfg.snapshot_stride = std::max<long>(1, cfg.steps / 2);  // t = 0, 1/2, 1
  const auto snapshots = evolve(psi0, v, cfg);

  json diags = json::array();
  for (const WaveFunction& snap : snapshots)
    diags.push_back(
        emit_snapshot(out, format_tag(snap.t), snap, v, SeriesPolicy{}, render_px));

  // Probability bookkeeping at the final time, split at the barrier center
  // x = 0 (the on-axis sample is shared half and half).
  const WaveFunction& last = snapshots.back();
  const ArrayXd rho = last.values.abs2();
  double reflected = 0.0, transmitted = 0.0;
  for (int i = 0; i < grid.n(); ++i) {
    const double x = grid.coord(i);
    const double mass = rho[i] * grid.spacing();
    if (x < 0.0)
      reflected += mass;
    else if (x > 0.0)
      transmitted += mass;
    else {
      reflected += 0.5 * mass;
      transmitted += 0.5 * mass;
    }
  }

  const double mean_p =
      expect_momentum_observable(psi0, [](double p) { return p; });
  json summary;
  summary["kinetic_energy_mean_momentum"] =
      mean_p * mean_p / (2.0 * consts.mass);
  summary["kinetic_energy_expectation"] = expect_momentum_observable(
      psi0, [&](double p) { return p * p / (2.0 * consts.mass); });
  summary["reflection"] = reflected;
  summary["transmission"] = transmitted;
  summary["negativity_t0"] = diags[0]["negativity"];
  summary["negativity_mid"] = diags[diags.size() / 2]["negativity"];
  summary["negativity_final"] = diags[diags.size() - 1]["negativity"];
  diags.push_back(summary);

  // Part d of the figure: the scattering potential itself.
  out.emit("potential.wlab", [&](const fs::path& p) {
    ArrayXd vx(grid.n());
    for (int i = 0; i < grid.n(); ++i) vx[i] = v.value(grid.coord(i), consts);
    save_marginal(p, vx, grid, "potential", 0.0);
  });
  return diags;
}

}  // namespace

std::pair<std::optional<std::string>, std::map<std::string, double>>
parse_scenario_config(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config " + path.string());
  std::optional<std::string> name;
  std::map<std::string, double> params;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "name") {
      name = value;
      continue;
    }
    try {
      std::size_t used = 0;
      params[key] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                        ": bad numeric value '" + value + "'");
    }
  }
  return {name, params};
}

json run_scenario(const ScenarioSpec& spec) {
  ParamReader pr(spec.params);
  ArtifactWriter out(spec.out_dir);

  json diagnostics;
  try {
    if (spec.name == "free_packet")
      diagnostics = run_free_packet(pr, out);
    else if (spec.name == "ho_eigenstate")
      diagnostics = run_ho_eigenstate(pr, out);
    else if (spec.name == "anharmonic_ground")
      diagnostics = run_anharmonic_ground(pr, out);
    else if (spec.name == "barrier")
      diagnostics = run_barrier(pr, out);
    else
      throw UsageError("unknown scenario '" + spec.name + "'");
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    throw Error("scenario " + spec.name + ": " + e.what());
  }

  json manifest;
  manifest["scenario"] = spec.name;
  manifest["parameters"] = spec.params;
  manifest["diagnostics"] = diagnostics;

  // Diagnostics are an artifact too, checksummed like the rest.
  {
    const fs::path diag_path = out.dir() / "diagnostics.json";
    std::ofstream os(diag_path, std::ios::binary);
    if (!os) throw IoError("cannot write " + diag_path.string());
    os << diagnostics.dump(2) << "\n";
    os.close();
    out.record("diagnostics.json");
  }

  manifest["artifacts"] = out.entries();
  manifest["generated_at"] = iso_timestamp();

  const fs::path man_path = out.dir() / "manifest.json";
  std::ofstream os(man_path, std::ios::binary);
  if (!os) throw IoError("cannot write " + man_path.string());
  os << manifest.dump(2) << "\n";
  return manifest;
}

}  // namespace wlab
