#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wlab/errors.hpp"
#include "wlab/io.hpp"
#include "wlab/propagation.hpp"
#include "wlab/render.hpp"
#include "wlab/scenario.hpp"

namespace {

constexpr const char* kVersion = "wignerlab 1.0.0";

std::map<std::string, double> parse_param_list(const std::vector<std::string>& kvs) {
  std::map<std::string, double> params;
  for (const std::string& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw wlab::UsageError("--param expects key=value, got '" + kv + "'");
    try {
      std::size_t used = 0;
      params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw wlab::UsageError("--param: bad numeric value in '" + kv + "'");
    }
  }
  return params;
}

int run(int argc, char** argv) {
  CLI::App app{"Phase-space quantum mechanics toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  // scenario <name> [--param k=v]... [--config FILE] --out DIR
  auto* scenario_cmd = app.add_subcommand("scenario", "Run a canned experiment");
  std::string scenario_name;
  std::vector<std::string> scenario_params;
  std::string scenario_config;
  std::string scenario_out;
  scenario_cmd->add_option("name", scenario_name, "free_packet | ho_eigenstate | anharmonic_ground | barrier")
      ->required();
  scenario_cmd->add_option("--param", scenario_params, "Override parameter key=value")
      ->take_all();
  scenario_cmd->add_option("--config", scenario_config, "key=value config file");
  scenario_cmd->add_option("--out", scenario_out, "Output directory")->required();

  // wigner STATE --out FILE
  auto* wigner_cmd = app.add_subcommand("wigner", "Wigner-transform a stored state");
  std::string wigner_in, wigner_out;
  wigner_cmd->add_option("state", wigner_in, "Wave-function grid file")->required();
  wigner_cmd->add_option("--out", wigner_out, "Output Wigner grid file")->required();

  // flow WIGNER --potential SPEC [--lmax N] --out FILE
  auto* flow_cmd = app.add_subcommand("flow", "Wigner flow of a stored grid");
  std::string flow_in, flow_potential, flow_out;
  int flow_lmax = -1;
  flow_cmd->add_option("wigner", flow_in, "Wigner grid file")->required();
  flow_cmd->add_option("--potential", flow_potential, "e.g. \"harmonic omega=1\"")
      ->required();
  flow_cmd->add_option("--lmax", flow_lmax,
                       "Series truncation order (default: exact / 3)");
  flow_cmd->add_option("--out", flow_out, "Output flow file")->required();

  // groundstate --potential SPEC [--out FILE]
  auto* ground_cmd =
      app.add_subcommand("groundstate", "Imaginary-time ground state");
  std::string ground_potential, ground_out;
  int ground_n = 512;
  double ground_xmin = -12.0, ground_xmax = 12.0, ground_dt = 1.0 / 256.0,
         ground_tol = 1e-10;
  ground_cmd->add_option("--potential", ground_potential, "Potential spec")
      ->required();
  ground_cmd->add_option("--out", ground_out, "Optional state output file");
  ground_cmd->add_option("--n", ground_n, "Grid samples (power of two)");
  ground_cmd->add_option("--x-min", ground_xmin, "Domain lower bound");
  ground_cmd->add_option("--x-max", ground_xmax, "Domain upper bound");
  ground_cmd->add_option("--dt", ground_dt, "Imaginary time step");
  ground_cmd->add_option("--tol", ground_tol, "Relative energy tolerance");

  // render INPUT --style S --out IMG
  auto* render_cmd = app.add_subcommand("render", "Render a stored field");
  std::string render_in, render_style, render_out, render_flow;
  wlab::RenderSpec render_spec;
  render_cmd->add_option("input", render_in, "Grid file to render")->required();
  render_cmd->add_option("--style", render_style,
                         "reim | phasor | phase_color | wigner_map | wigner_flow")
      ->required();
  render_cmd->add_option("--out", render_out, "Output PPM image")->required();
  render_cmd->add_option("--flow", render_flow, "Flow file for quiver overlay");
  render_cmd->add_option("--width", render_spec.width, "Image width");
  render_cmd->add_option("--height", render_spec.height, "Image height");
  render_cmd->add_option("--stride", render_spec.quiver_stride, "Quiver stride");
  render_cmd->add_flag("--panels", render_spec.marginal_panels, "Marginal panels");
  render_cmd->add_flag("--contours", render_spec.contours, "Contour lines");
  render_cmd->add_flag("--colorbar", render_spec.colorbar, "Color bar strip");

  // tomo project | reconstruct
  auto* tomo_cmd = app.add_subcommand("tomo", "Tomography utilities");
  auto* tomo_project = tomo_cmd->add_subcommand("project", "Radon-project a grid");
  std::string tp_in, tp_out;
  int tp_angles = 180;
  tomo_project->add_option("wigner", tp_in, "Wigner grid file")->required();
  tomo_project->add_option("--angles", tp_angles, "Number of uniform angles");
  tomo_project->add_option("--out", tp_out, "Output sinogram")->required();
  auto* tomo_rec = tomo_cmd->add_subcommand("reconstruct", "Filtered back-projection");
  std::string tr_in, tr_out;
  int tr_n = 0;
  tomo_rec->add_option("sinogram", tr_in, "Sinogram file")->required();
  tomo_rec->add_option("--n", tr_n, "Target grid samples (default: offset count)");
  tomo_rec->add_option("--out", tr_out, "Output Wigner grid file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    return 0;
  }

  if (*scenario_cmd) {
    wlab::ScenarioSpec spec;
    spec.name = scenario_name;
    if (!scenario_config.empty()) {
      auto [name, params] = wlab::parse_scenario_config(scenario_config);
      if (name && *name != scenario_name)
        throw wlab::UsageError("config names scenario '" + *name +
                               "' but the command line says '" + scenario_name + "'");
      spec.params = std::move(params);
    }
    for (const auto& [k, v] : parse_param_list(scenario_params)) spec.params[k] = v;
    spec.out_dir = scenario_out;
    const auto manifest = wlab::run_scenario(spec);
    std::cout << "wrote " << manifest["artifacts"].size() << " artifacts to "
              << scenario_out << "\n";
    return 0;
  }

  if (*wigner_cmd) {
    const wlab::WaveFunction psi = wlab::load_wavefunction(wigner_in);
    wlab::save_wigner(wigner_out, wlab::wigner_transform(psi));
    return 0;
  }

  if (*flow_cmd) {
    const wlab::WignerGrid w = wlab::load_wigner(flow_in);
    const wlab::Potential v = wlab::Potential::parse(flow_potential);
    const wlab::SeriesPolicy policy =
        flow_lmax >= 0 ? wlab::SeriesPolicy::truncated(flow_lmax)
                       : wlab::SeriesPolicy{};
    wlab::save_flow(flow_out, wlab::wigner_flow(w, v, policy));
    return 0;
  }

  if (*ground_cmd) {
    const wlab::Potential v = wlab::Potential::parse(ground_potential);
    const wlab::Grid1D grid(ground_n, ground_xmin, ground_xmax);
    const auto [psi, energy] = wlab::imaginary_time_ground_state(
        grid, v, wlab::Constants{}, ground_dt, ground_tol);
    std::cout.precision(12);
    std::cout << "energy " << energy << "\n";
    if (!ground_out.empty()) wlab::save_wavefunction(ground_out, psi);
    return 0;
  }

  if (*render_cmd) {
    render_spec.style = wlab::parse_style(render_style);
    wlab::Image img;
    if (render_spec.style == wlab::RenderStyle::wigner_map ||
        render_spec.style == wlab::RenderStyle::wigner_flow) {
      const wlab::WignerGrid w = wlab::load_wigner(render_in);
      if (!render_flow.empty()) {
        const wlab::FlowField j = wlab::load_flow(render_flow);
        img = wlab::render_wigner(w, render_spec, &j);
      } else {
        img = wlab::render_wigner(w, render_spec);
      }
    } else {
      img = wlab::render_wavefunction(wlab::load_wavefunction(render_in),
                                      render_spec);
    }
    wlab::write_image(img, render_out);
    return 0;
  }

  if (*tomo_cmd) {
    if (*tomo_project) {
      if (tp_angles < 1) throw wlab::UsageError("tomo project: --angles must be >= 1");
      const wlab::WignerGrid w = wlab::load_wigner(tp_in);
      Eigen::ArrayXd angles(tp_angles);
      for (int i = 0; i < tp_angles; ++i) angles[i] = i * wlab::kPi / tp_angles;
      wlab::save_sinogram(tp_out, wlab::project_sinogram(w, angles));
      return 0;
    }
    if (*tomo_rec) {
      const wlab::Sinogram sino = wlab::load_sinogram(tr_in);
      const int n = tr_n > 0 ? tr_n : sino.offsets.n();
      const wlab::Grid1D axis(n, sino.offsets.min(),
                              sino.offsets.min() +
                                  sino.offsets.n() * sino.offsets.spacing());
      const wlab::PhaseGrid target{axis, axis};
      wlab::save_wigner(tr_out, wlab::reconstruct(sino, target));
      return 0;
    }
    throw wlab::UsageError("tomo: expected 'project' or 'reconstruct'");
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const wlab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const wlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
