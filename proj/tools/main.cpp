#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "omcond/entanglement.hpp"
#include "omcond/io.hpp"
#include "omcond/squeezing.hpp"
#include "omcond/sweep.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string format;
  double tol = -1.0;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_threads = false) {
  cmd->add_option("--config", o.config_path, "path to a key = value config file")
      ->required();
  cmd->add_option("--out", o.out_path, "output path (default: config 'out' key, else stdout)");
  cmd->add_option("--format", o.format, "csv or json (overrides config)");
  cmd->add_option("--tol", o.tol, "quadrature relative tolerance (overrides config)");
  if (with_threads)
    cmd->add_option("--threads", o.threads, "worker threads for sweep cells")
        ->check(CLI::PositiveNumber);
}

omcond::RunConfig load(const CommonOpts& o) {
  omcond::RunConfig cfg = omcond::load_config(o.config_path);
  if (!o.out_path.empty()) cfg.out_path = o.out_path;
  if (!o.format.empty()) {
    if (o.format != "csv" && o.format != "json")
      throw omcond::config_error("--format must be 'csv' or 'json'");
    cfg.format = o.format;
  }
  if (o.tol > 0.0) {
    if (o.tol > 1e-2)
      throw omcond::config_error("--tol must lie in (0, 1e-2]");
    cfg.tol = o.tol;
  }
  return cfg;
}

void emit(const omcond::RunConfig& cfg, const std::string& content) {
  if (cfg.out_path.empty())
    std::fwrite(content.data(), 1, content.size(), stdout);
  else
    omcond::write_text_file(cfg.out_path, content);
}

std::string overlay_path(const std::string& out_path) {
  const auto dot = out_path.find_last_of('.');
  const auto slash = out_path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out_path + "_overlay.csv";
  return out_path.substr(0, dot) + "_overlay.csv";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "conditional states of a continuously monitored optomechanical mirror:\n"
      "spectra, causal-filter covariances, momentum squeezing, and\n"
      "gravitationally induced entanglement"};
  app.require_subcommand(1);

  CommonOpts o_derive, o_angle, o_spectrum, o_sweep, o_report;
  auto* c_derive = app.add_subcommand("derive", "derived scalars for a config (JSON)");
  add_common(c_derive, o_derive);
  auto* c_angle = app.add_subcommand("angle", "print the optimal homodyne angle");
  add_common(c_angle, o_angle);
  auto* c_spectrum = app.add_subcommand("spectrum", "frequency-grid spectra (CSV)");
  add_common(c_spectrum, o_spectrum);
  auto* c_sweep = app.add_subcommand("sweep2d", "two-axis parameter sweep");
  add_common(c_sweep, o_sweep, true);
  auto* c_report = app.add_subcommand("report", "single-point full report (JSON)");
  add_common(c_report, o_report);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_derive) {
      const auto cfg = load(o_derive);
      omcond::SystemParams p = cfg.base;
      const omcond::DerivedParams d = omcond::derive(p);
      const double theta =
          cfg.theta_is_opt ? omcond::optimal_angle(d.zeta, d.alpha) : p.theta;
      const omcond::ConditionalState s = omcond::make_state(p, theta);
      nlohmann::ordered_json j;
      j["derived"] = {{"g", d.g},         {"omega_m", d.omega_m},
                      {"g_m", d.g_m},     {"alpha", d.alpha},
                      {"xi", d.xi},       {"n_th", d.n_th},
                      {"n_bar", d.n_bar}, {"zeta", d.zeta},
                      {"Q_m", d.Q_m},     {"C_m", d.C_m},
                      {"adiabatic", omcond::adiabatic_regime(p, d)}};
      j["theta"] = theta;
      j["measurement"] = {{"c_theta", s.mc.c_theta},
                          {"L_theta", s.mc.L_theta},
                          {"lambda_theta", s.mc.lambda_theta},
                          {"Lambda_theta", s.mc.Lambda_theta}};
      j["filter"] = {{"omega_theta", s.fp.omega_theta},
                     {"gamma_theta", s.fp.gamma_theta}};
      emit(cfg, j.dump(2) + "\n");
    } else if (*c_angle) {
      const auto cfg = load(o_angle);
      const omcond::DerivedParams d = omcond::derive(cfg.base);
      emit(cfg, omcond::fmt_double(omcond::optimal_angle(d.zeta, d.alpha)) + "\n");
    } else if (*c_spectrum) {
      const auto cfg = load(o_spectrum);
      emit(cfg, omcond::spectrum_to_csv(omcond::run_spectrum(cfg)));
    } else if (*c_sweep) {
      const auto cfg = load(o_sweep);
      const auto res = omcond::run_sweep2d(cfg, o_sweep.threads);
      if (cfg.format == "json")
        emit(cfg, omcond::sweep_to_json(res).dump(2) + "\n");
      else
        emit(cfg, omcond::sweep_to_csv(res));
      if (cfg.overlay_theta_opt && !cfg.out_path.empty())
        omcond::write_text_file(overlay_path(cfg.out_path),
                                omcond::sweep_overlay_csv(res));
    } else if (*c_report) {
      const auto cfg = load(o_report);
      emit(cfg, omcond::run_report(cfg).dump(2) + "\n");
    }
  } catch (const omcond::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const omcond::model_error& e) {
    std::cerr << "model error [" << omcond::to_string(e.code()) << "]: "
              << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
