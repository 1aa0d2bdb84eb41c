// dpbulk: command-line front end. JSON summaries on stdout, CSV tables to files.
// Exit codes: 0 success, 2 input validation, 3 numerical guard.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dpbulk/catness.hpp"
#include "dpbulk/constants.hpp"
#include "dpbulk/errors.hpp"
#include "dpbulk/fock_oracle.hpp"
#include "dpbulk/gaussian_dynamics.hpp"
#include "dpbulk/heating_budget.hpp"
#include "dpbulk/material.hpp"
#include "dpbulk/mode_census.hpp"
#include "dpbulk/report.hpp"

namespace {

using dpbulk::report::Json;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct MaterialArgs {
  std::string preset = "paper-default";
  std::string file;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--preset", preset, "Material preset (paper-default, rock, tungsten)");
    cmd->add_option("--file", file, "Material JSON file (overrides --preset)");
  }
  dpbulk::Material load() const {
    return file.empty() ? dpbulk::material_preset(preset) : dpbulk::report::load_material(file);
  }
};

void emit(const Json& j) { std::cout << dpbulk::report::dump(j) << '\n'; }

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw dpbulk::ValidationError("cannot write '" + path + "'");
  return out;
}

// Least-squares slope of y against x.
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double max_abs_difference(const dpbulk::GaussianState& a, const dpbulk::GaussianState& b) {
  return std::max({std::abs(a.mean_u - b.mean_u), std::abs(a.mean_pi - b.mean_pi),
                   std::abs(a.cov_uu - b.cov_uu), std::abs(a.cov_upi - b.cov_upi),
                   std::abs(a.cov_pipi - b.cov_pipi)});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gravity-related decoherence in bulk matter: scales, catness, modes, dynamics"};
  app.require_subcommand(1);

  // material
  auto* material_cmd = app.add_subcommand("material", "Material and derived decoherence scales");
  MaterialArgs material_args;
  material_args.add_to(material_cmd);
  std::string fnucl = "acoustic";
  material_cmd->add_option("--fnucl", fnucl, "Nuclear density variant: simple|acoustic");

  // catness
  auto* catness_cmd = app.add_subcommand("catness", "Catness and decay time of two configurations");
  std::string f1_path, f2_path;
  bool with_oracle = false;
  double oracle_spacing = 0.0;
  catness_cmd->add_option("f1", f1_path, "First mass configuration (JSON)")->required();
  catness_cmd->add_option("f2", f2_path, "Second mass configuration (JSON)")->required();
  catness_cmd->add_flag("--oracle", with_oracle, "Cross-check with the grid quadrature oracle");
  catness_cmd->add_option("--spacing", oracle_spacing, "Oracle grid spacing, cm (default sigma/6)");

  // census
  auto* census_cmd = app.add_subcommand("census", "Acoustic mode census of a periodic box");
  MaterialArgs census_material;
  census_material.add_to(census_cmd);
  std::vector<double> box_edges;
  double k_max = 0.0, cutoff = 0.0, census_mass = 0.0, margin = 10.0;
  std::size_t max_modes = 5'000'000;
  std::string census_csv;
  census_cmd->add_option("--box", box_edges, "Box edge lengths Lx Ly Lz, cm")
      ->expected(3)
      ->required();
  auto* kmax_opt = census_cmd->add_option("--k-max", k_max, "Enumerate modes with |k| <= k_max, 1/cm");
  auto* cutoff_opt =
      census_cmd->add_option("--cutoff", cutoff, "Count modes with 1/k > cutoff, cm");
  kmax_opt->excludes(cutoff_opt);
  census_cmd->add_option("--margin", margin, "Dominance margin factor (>= 1)");
  census_cmd->add_option("--max-modes", max_modes, "Enumeration limit");
  census_cmd->add_option("--csv", census_csv, "Write the mode table to this CSV file");
  census_cmd->add_option("--mass", census_mass, "Mass for the nuclei count, g (default density * V)");

  // evolve
  auto* evolve_cmd = app.add_subcommand("evolve", "Gaussian moment evolution (mode or c.o.m.)");
  MaterialArgs evolve_material;
  evolve_material.add_to(evolve_cmd);
  std::string kind = "mode";
  double wave_number = -1.0, omega_k_opt = -1.0, omega_g_opt = -1.0, evolve_mass = 0.0;
  double width = 0.0, t_final = 0.0, mode_mass_opt = 0.0;
  int components = 3, samples = 50;
  std::string evolve_out;
  evolve_cmd->add_option("--kind", kind, "mode|com")->check(CLI::IsMember({"mode", "com"}));
  evolve_cmd->add_option("--k", wave_number, "Wave number, 1/cm (omega_k = c_l k)");
  evolve_cmd->add_option("--omega-k", omega_k_opt, "Mode frequency, rad/s (overrides --k)");
  evolve_cmd->add_option("--omega-g", omega_g_opt, "Override omega_G, rad/s");
  evolve_cmd->add_option("--mode-mass", mode_mass_opt, "Override mode mass (default density)");
  evolve_cmd->add_option("--mass", evolve_mass, "c.o.m. mass, g");
  evolve_cmd->add_option("--width", width, "Initial packet width (required for free evolution)");
  evolve_cmd->add_option("--components", components, "1 or 3");
  evolve_cmd->add_option("--t-final", t_final, "Final time, s")->required();
  evolve_cmd->add_option("--samples", samples, "Number of samples (>= 2)");
  evolve_cmd->add_option("--out", evolve_out, "Time-series CSV path")->required();

  // heating
  auto* heating_cmd = app.add_subcommand("heating", "Heating budget (standard or cutoff model)");
  MaterialArgs heating_material;
  heating_material.add_to(heating_cmd);
  double heating_mass = 0.0, volume = 0.0, heating_cutoff = 0.0, heating_omega = 0.0;
  int heating_components = 3;
  heating_cmd->add_option("--mass", heating_mass, "Total mass, g")->required();
  heating_cmd->add_option("--volume", volume, "Volume, cm^3 (default mass / density)");
  auto* heating_cutoff_opt =
      heating_cmd->add_option("--cutoff", heating_cutoff, "Wavelength cutoff lambda, cm");
  heating_cmd->add_option("--components", heating_components, "1 or 3");
  heating_cmd->add_option("--omega-g", heating_omega, "Override omega_G for the cutoff model");

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Dense Fock-basis oracle vs Gaussian moments");
  MaterialArgs oracle_material;
  oracle_material.add_to(oracle_cmd);
  double oracle_mu = 0.0, oracle_wk = 1e3, oracle_wg = 0.0, oracle_t = 0.0, oracle_dt = 0.0;
  double alpha_re = 0.0, alpha_im = 0.0, squeeze = 0.0, decay_d = 0.0;
  int n_max = 30;
  oracle_cmd->add_option("--mode-mass", oracle_mu, "Mode mass (default material density)");
  oracle_cmd->add_option("--omega-k", oracle_wk, "Mode frequency, rad/s");
  oracle_cmd->add_option("--omega-g", oracle_wg, "omega_G, rad/s (default material value)");
  oracle_cmd->add_option("--t-final", oracle_t, "Final time, s (default one period)");
  oracle_cmd->add_option("--dt", oracle_dt, "Step, s (default the largest admissible)");
  oracle_cmd->add_option("--n-max", n_max, "Fock truncation");
  oracle_cmd->add_option("--alpha-re", alpha_re, "Initial displacement, natural units");
  oracle_cmd->add_option("--alpha-im", alpha_im, "Initial displacement, natural units");
  oracle_cmd->add_option("--squeeze", squeeze, "Initial squeezing r");
  oracle_cmd->add_option("--decay-d", decay_d, "Also fit cat coherence decay for separation d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*material_cmd) {
      const auto mat = material_args.load();
      Json j;
      j["material"] = dpbulk::report::to_json(mat);
      j["scales"] = dpbulk::report::to_json(
          dpbulk::derive_scales(mat, dpbulk::nuclear_density_from_string(fnucl)));
      emit(j);
    } else if (*catness_cmd) {
      const auto f1 = dpbulk::report::load_mass_configuration(f1_path);
      const auto f2 = dpbulk::report::load_mass_configuration(f2_path);
      const auto res = dpbulk::catness(f1, f2);
      Json j;
      j["catness"] = dpbulk::report::to_json(res);
      if (with_oracle) {
        auto grid = dpbulk::default_quadrature_grid(f1.sigma);
        if (oracle_spacing > 0.0) grid.spacing = oracle_spacing;
        const auto q = dpbulk::catness_quadrature_oracle(f1, f2, grid);
        j["oracle"] = dpbulk::report::to_json(q);
        auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
        j["oracle_agreement"] = std::max({rel(q.u11, res.u11), rel(q.u22, res.u22),
                                          rel(q.u12, res.u12)});
      }
      emit(j);
    } else if (*census_cmd) {
      const auto mat = census_material.load();
      const dpbulk::BoxSpec box{{box_edges[0], box_edges[1], box_edges[2]}};
      Json j;
      j["material"] = mat.name;
      j["box"] = Json::array({box_edges[0], box_edges[1], box_edges[2]});
      j["dominance_boundary_inv_k"] = dpbulk::dominance_boundary(mat);
      j["dominance_margin"] = margin;
      if (*kmax_opt) {
        const auto modes = dpbulk::enumerate_modes(box, mat, k_max, margin, max_modes);
        std::size_t counts[3] = {0, 0, 0};
        for (const auto& m : modes) ++counts[static_cast<int>(m.classification)];
        j["k_max"] = k_max;
        j["modes"] = modes.size();
        j["decoherence_dominated"] = counts[0];
        j["crossover"] = counts[1];
        j["elasticity_dominated"] = counts[2];
        if (!census_csv.empty()) {
          auto out = open_output(census_csv);
          dpbulk::report::write_modes_csv(out, modes);
        }
      } else if (*cutoff_opt) {
        const double mass = census_mass > 0.0 ? census_mass : mat.mass_density * box.volume();
        j["cutoff_inv_k"] = cutoff;
        j["census"] = dpbulk::report::to_json(dpbulk::mode_census(mat, box.volume(), mass, cutoff));
      } else {
        throw dpbulk::ValidationError("census needs --k-max or --cutoff");
      }
      emit(j);
    } else if (*evolve_cmd) {
      const auto mat = evolve_material.load();
      if (samples < 2) throw dpbulk::ValidationError("--samples must be >= 2");
      if (!(t_final > 0.0)) throw dpbulk::ValidationError("--t-final must be positive");
      const double omega_G = omega_g_opt >= 0.0
                                 ? omega_g_opt
                                 : dpbulk::derive_scales(mat).omega_G_nucl;
      const double hbar = dpbulk::constants().hbar;
      std::vector<dpbulk::report::TimeSample> series;
      std::vector<double> ts, es;
      Json j;
      j["kind"] = kind;
      j["omega_G"] = omega_G;
      if (kind == "mode") {
        dpbulk::ModeDynamicsParams p;
        p.mode_mass = mode_mass_opt > 0.0 ? mode_mass_opt : mat.mass_density;
        p.omega_k = omega_k_opt >= 0.0 ? omega_k_opt : (wave_number >= 0.0 ? mat.c_l * wave_number : 0.0);
        p.omega_G = omega_G;
        p.n_components = components;
        const auto s0 = width > 0.0 ? dpbulk::minimum_uncertainty_state(width)
                                    : dpbulk::oscillator_ground_state(p.mode_mass, p.omega_k);
        double max_ratio = 0.0;
        for (int i = 0; i < samples; ++i) {
          const double t = t_final * i / (samples - 1);
          const auto s = dpbulk::evolve_mode(s0, p, t);
          series.push_back({t, s, dpbulk::mode_energy(s, p)});
          ts.push_back(t);
          es.push_back(series.back().energy);
          max_ratio = std::max(max_ratio, dpbulk::small_displacement_ratio(s, mat.sigma));
        }
        const double expected = p.n_components * 0.5 * hbar * omega_G * omega_G;
        const double slope = fitted_slope(ts, es);
        j["omega_k"] = p.omega_k;
        j["mode_mass"] = p.mode_mass;
        j["n_components"] = p.n_components;
        j["energy_slope"] = slope;
        j["expected_energy_slope"] = expected;
        j["slope_relative_error"] = expected > 0 ? std::abs(slope - expected) / expected : std::abs(slope);
        j["max_small_displacement_ratio"] = max_ratio;
        j["small_displacement_ok"] = max_ratio < dpbulk::kSmallDisplacementLimit;
      } else {
        if (!(evolve_mass > 0.0)) throw dpbulk::ValidationError("--mass is required for --kind com");
        if (!(width > 0.0)) throw dpbulk::ValidationError("--width is required for --kind com");
        dpbulk::ComState c0;
        c0.axes.fill(dpbulk::minimum_uncertainty_state(width));
        for (int i = 0; i < samples; ++i) {
          const double t = t_final * i / (samples - 1);
          const auto c = dpbulk::evolve_com(c0, evolve_mass, omega_G, t);
          series.push_back({t, c.axes[0], dpbulk::com_kinetic_energy(c, evolve_mass)});
          ts.push_back(t);
          es.push_back(series.back().energy);
        }
        const auto& s0 = c0.axes[0];
        const auto& sf = series.back().state;
        const double M = evolve_mass;
        const double free_part = s0.cov_uu + 2.0 * s0.cov_upi * t_final / M +
                                 s0.cov_pipi * t_final * t_final / (M * M);
        const double expected = 1.5 * hbar * omega_G * omega_G;
        j["mass"] = M;
        j["kinetic_energy_slope"] = fitted_slope(ts, es);
        j["expected_kinetic_energy_slope"] = expected;
        j["t3_coefficient"] = (sf.cov_uu - free_part) / (t_final * t_final * t_final);
        j["expected_t3_coefficient"] = hbar * omega_G * omega_G / (3.0 * M);
      }
      auto out = open_output(evolve_out);
      dpbulk::report::write_timeseries_csv(out, series);
      j["samples"] = samples;
      j["csv"] = evolve_out;
      emit(j);
    } else if (*heating_cmd) {
      const auto mat = heating_material.load();
      const double V = volume > 0.0 ? volume : heating_mass / mat.mass_density;
      const auto budget =
          *heating_cutoff_opt
              ? dpbulk::cutoff_budget(mat, heating_mass, V, heating_cutoff, heating_components,
                                      heating_omega > 0.0 ? std::optional<double>(heating_omega)
                                                          : std::nullopt)
              : dpbulk::standard_budget(mat, heating_mass, heating_components);
      Json j;
      j["material"] = mat.name;
      j["volume"] = V;
      j["budget"] = dpbulk::report::to_json(budget);
      emit(j);
    } else if (*oracle_cmd) {
      const auto mat = oracle_material.load();
      dpbulk::ModeDynamicsParams p;
      p.mode_mass = oracle_mu > 0.0 ? oracle_mu : mat.mass_density;
      p.omega_k = oracle_wk;
      p.omega_G = oracle_wg > 0.0 ? oracle_wg : dpbulk::derive_scales(mat).omega_G_nucl;
      p.n_components = 1;
      const auto units = dpbulk::natural_units(p);
      const double t = oracle_t > 0.0 ? oracle_t : 2.0 * dpbulk::pi / p.omega_k;
      auto fock0 = dpbulk::fock_gaussian_state(p, n_max, {alpha_re, alpha_im}, squeeze);
      const double dt = oracle_dt > 0.0 ? oracle_dt : dpbulk::max_fock_step(fock0);
      const auto fock = dpbulk::evolve_fock(fock0, t, dt);
      const auto g0 = dpbulk::fock_moments(fock0);
      const auto g = dpbulk::evolve_mode(g0, p, t);
      const auto fock_nat = dpbulk::fock_moments_natural(fock);
      const auto gauss_nat = dpbulk::to_natural(g, units);
      const double fock_slope = (dpbulk::fock_energy(fock) - dpbulk::fock_energy(fock0)) / t;
      const double expected_slope = 0.5 * dpbulk::constants().hbar * p.omega_G * p.omega_G;
      const auto inv = dpbulk::check_invariants(fock);

      Json j;
      j["mode_mass"] = p.mode_mass;
      j["omega_k"] = p.omega_k;
      j["omega_G"] = p.omega_G;
      j["t_final"] = t;
      j["dt"] = dt;
      j["n_max"] = n_max;
      j["fock_moments_natural"] = dpbulk::report::to_json(fock_nat);
      j["gaussian_moments_natural"] = dpbulk::report::to_json(gauss_nat);
      j["max_moment_difference"] = max_abs_difference(fock_nat, gauss_nat);
      j["fock_energy_slope"] = fock_slope;
      j["expected_energy_slope"] = expected_slope;
      j["slope_relative_error"] = std::abs(fock_slope - expected_slope) / expected_slope;
      Json invariants;
      invariants["trace_error"] = inv.trace_error;
      invariants["hermiticity_error"] = inv.hermiticity_error;
      invariants["min_eigenvalue"] = inv.min_eigenvalue;
      invariants["top_population"] = inv.top_population;
      invariants["u_excess_kurtosis"] = dpbulk::u_excess_kurtosis(fock);
      j["invariants"] = invariants;
      if (decay_d > 0.0) {
        const double t_decay = 0.05 / p.omega_k;
        const auto one = dpbulk::coherence_decay_fock(p, decay_d, t_decay, 20, n_max);
        const auto two = dpbulk::coherence_decay_fock(p, 2.0 * decay_d, t_decay, 20, n_max);
        Json decay;
        decay["d"] = decay_d;
        decay["fitted_rate"] = one.fitted_rate;
        decay["predicted_rate"] = one.predicted_rate;
        decay["relative_error"] = std::abs(one.fitted_rate - one.predicted_rate) / one.predicted_rate;
        decay["fitted_rate_2d"] = two.fitted_rate;
        decay["rate_ratio_2d_over_d"] = two.fitted_rate / one.fitted_rate;
        j["coherence_decay"] = decay;
      }
      emit(j);
    }
  } catch (const dpbulk::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const dpbulk::NumericalGuardError& e) {
    std::cerr << "numerical guard: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
