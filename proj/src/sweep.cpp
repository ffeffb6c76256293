#include "omcond/sweep.hpp"

#include <cmath>
#include <limits>
#include <thread>

#include "omcond/entanglement.hpp"
#include "omcond/filter.hpp"
#include "omcond/io.hpp"
#include "omcond/kernels.hpp"
#include "omcond/quadrature.hpp"
#include "omcond/squeezing.hpp"

namespace omcond {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double resolve_theta(const RunConfig& cfg, const SystemParams& p) {
  if (!cfg.theta_is_opt) return p.theta;
  const DerivedParams d = derive(p);
  return optimal_angle(d.zeta, d.alpha);
}

}  // namespace

SpectrumTable run_spectrum(const RunConfig& cfg) {
  if (cfg.axis1 || cfg.axis2)
    throw config_error("spectrum runs take no sweep axes");
  const double fconv = cfg.hz_units ? 2.0 * constants::pi : 1.0;
  const int n = cfg.omega_points;
  std::vector<double> w_cfg(n), w(n);
  const double la = std::log(cfg.omega_min), lb = std::log(cfg.omega_max);
  for (int i = 0; i < n; ++i) {
    w_cfg[i] = std::exp(la + (lb - la) * i / (n - 1));
    w[i] = fconv * w_cfg[i];
  }

  SystemParams p = cfg.base;
  p.theta = resolve_theta(cfg, p);
  const DerivedParams d = derive(p);
  const auto uq = coeffs_unconditional_qq(d);
  const auto up = coeffs_unconditional_pp(d);
  std::vector<double> squ(n), spu(n);
  kernels::rational_batch(uq, w.data(), squ.data(), n);
  kernels::rational_batch(up, w.data(), spu.data(), n);

  bool have_cond = true;
  cell_status cond_status = cell_status::ok;
  std::vector<double> sqc(n, kNaN), spc(n, kNaN), sqpc(n, kNaN);
  try {
    const ConditionalState s = make_state(p);
    kernels::rational_batch(coeffs_conditional_qq(s), w.data(), sqc.data(), n);
    kernels::rational_batch(coeffs_conditional_pp(s), w.data(), spc.data(), n);
    kernels::rational_batch(coeffs_conditional_qp(s), w.data(), sqpc.data(), n);
  } catch (const model_error& e) {
    have_cond = false;
    cond_status = status_of(e.code());
  }

  SpectrumTable t;
  t.rows.resize(n);
  for (int i = 0; i < n; ++i) {
    t.rows[i] = {w_cfg[i], squ[i], spu[i], sqc[i], spc[i], sqpc[i],
                 have_cond ? cell_status::ok : cond_status};
  }
  return t;
}

std::string spectrum_to_csv(const SpectrumTable& t) {
  std::string out = "omega,Sqq,Spp,Sqq_cond,Spp_cond,ReSqp_cond,status\n";
  for (const auto& r : t.rows) {
    out += fmt_double(r.omega);
    out += ',';
    out += fmt_double(r.S_qq);
    out += ',';
    out += fmt_double(r.S_pp);
    out += ',';
    if (r.status == cell_status::ok) {
      out += fmt_double(r.S_qq_c);
      out += ',';
      out += fmt_double(r.S_pp_c);
      out += ',';
      out += fmt_double(r.ReS_qp_c);
    } else {
      out += ",,";
    }
    out += ',';
    out += to_string(r.status);
    out += '\n';
  }
  return out;
}

namespace {

// One grid cell: build the state and evaluate every requested quantity.
// Any model error marks the whole cell with the corresponding status.
void eval_cell(const RunConfig& cfg, double a1, double a2, double* out,
               cell_status* status) {
  const std::size_t nq = cfg.outputs.size();
  for (std::size_t k = 0; k < nq; ++k) out[k] = kNaN;
  try {
    SystemParams p = cfg.base;
    apply_axis(p, cfg.axis1->name, a1, cfg.hz_units);
    apply_axis(p, cfg.axis2->name, a2, cfg.hz_units);
    const double theta = resolve_theta(cfg, p);

    // The conditional state is built lazily: quantities like theta_opt or
    // condition_factor stay well defined on cells where the filter does not.
    bool have_state = false;
    ConditionalState s{};
    CovMat2 cov{};
    bool have_cov = false;
    auto state = [&]() -> const ConditionalState& {
      if (!have_state) {
        s = make_state(p, theta);
        have_state = true;
      }
      return s;
    };
    auto covariance = [&]() -> const CovMat2& {
      if (!have_cov) {
        const ConditionalState& st = state();
        cov = covariance_main(st.fp, st.der, st.mc);
        have_cov = true;
      }
      return cov;
    };

    for (std::size_t k = 0; k < nq; ++k) {
      const std::string& q = cfg.outputs[k];
      if (q == "Vqq") out[k] = covariance().V_qq;
      else if (q == "Vqp") out[k] = covariance().V_qp;
      else if (q == "Vpp") out[k] = covariance().V_pp;
      else if (q == "purity") out[k] = purity(covariance());
      else if (q == "omega_theta") out[k] = state().fp.omega_theta;
      else if (q == "gamma_theta") out[k] = state().fp.gamma_theta;
      else if (q == "theta_opt") {
        const DerivedParams d = derive(p);
        out[k] = optimal_angle(d.zeta, d.alpha);
      } else if (q == "EN") out[k] = gie_point(p, cfg.delta, theta).E_N;
      else if (q == "nu_minus") out[k] = gie_point(p, cfg.delta, theta).nu_minus;
      else if (q == "condition_factor") out[k] = condition_factor(p);
      else throw config_error("unknown quantity in sweep: " + q);
    }
    *status = cell_status::ok;
  } catch (const model_error& e) {
    for (std::size_t k = 0; k < nq; ++k) out[k] = kNaN;
    *status = status_of(e.code());
  }
}

}  // namespace

SweepResult run_sweep2d(const RunConfig& cfg, int threads) {
  if (!cfg.axis1 || !cfg.axis2)
    throw config_error("sweep2d requires axis1 and axis2");
  if (cfg.outputs.empty())
    throw config_error("sweep2d requires a non-empty outputs list");
  for (const auto& q : cfg.outputs)
    if (quantity_is_spectral(q))
      throw config_error("per-frequency quantity '" + q +
                         "' is not valid in a 2d sweep (use the spectrum command)");

  SweepResult res;
  res.axis1 = *cfg.axis1;
  res.axis2 = *cfg.axis2;
  res.v1 = axis_values(res.axis1);
  res.v2 = axis_values(res.axis2);
  res.quantities = cfg.outputs;
  const std::size_t n1 = res.v1.size(), n2 = res.v2.size();
  const std::size_t nq = res.quantities.size();
  res.values.assign(n1 * n2 * nq, kNaN);
  res.status.assign(n1 * n2, cell_status::undefined);

  auto run_rows = [&](std::size_t r0, std::size_t r1) {
    for (std::size_t i = r0; i < r1; ++i)
      for (std::size_t j = 0; j < n2; ++j)
        eval_cell(cfg, res.v1[i], res.v2[j],
                  &res.values[(i * n2 + j) * nq], &res.status[i * n2 + j]);
  };

  const std::size_t nthreads =
      std::min<std::size_t>(std::max(threads, 1), n1);
  if (nthreads <= 1) {
    run_rows(0, n1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    const std::size_t chunk = (n1 + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t) {
      const std::size_t r0 = t * chunk;
      const std::size_t r1 = std::min(n1, r0 + chunk);
      if (r0 >= r1) break;
      pool.emplace_back(run_rows, r0, r1);
    }
    for (auto& th : pool) th.join();
  }

  if (cfg.overlay_theta_opt) {
    res.overlay.resize(n1);
    for (std::size_t i = 0; i < n1; ++i) {
      SystemParams p = cfg.base;
      apply_axis(p, res.axis1.name, res.v1[i], cfg.hz_units);
      const DerivedParams d = derive(p);
      res.overlay[i] = optimal_angle(d.zeta, d.alpha);
    }
  }
  return res;
}

std::string sweep_to_csv(const SweepResult& s) {
  std::string out = s.axis1.name + "," + s.axis2.name + ",quantity,value,status\n";
  const std::size_t n2 = s.v2.size(), nq = s.quantities.size();
  for (std::size_t i = 0; i < s.v1.size(); ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const cell_status st = s.status[i * n2 + j];
      for (std::size_t k = 0; k < nq; ++k) {
        out += fmt_double(s.v1[i]);
        out += ',';
        out += fmt_double(s.v2[j]);
        out += ',';
        out += s.quantities[k];
        out += ',';
        if (st == cell_status::ok)
          out += fmt_double(s.values[(i * n2 + j) * nq + k]);
        out += ',';
        out += to_string(st);
        out += '\n';
      }
    }
  }
  return out;
}

std::string sweep_overlay_csv(const SweepResult& s) {
  std::string out = s.axis1.name + ",theta_opt\n";
  for (std::size_t i = 0; i < s.overlay.size(); ++i) {
    out += fmt_double(s.v1[i]);
    out += ',';
    out += fmt_double(s.overlay[i]);
    out += '\n';
  }
  return out;
}

nlohmann::ordered_json sweep_to_json(const SweepResult& s) {
  nlohmann::ordered_json j;
  j["axis1"] = {{"name", s.axis1.name}, {"values", s.v1}};
  j["axis2"] = {{"name", s.axis2.name}, {"values", s.v2}};
  j["quantities"] = s.quantities;
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  const std::size_t n2 = s.v2.size(), nq = s.quantities.size();
  for (std::size_t i = 0; i < s.v1.size(); ++i) {
    for (std::size_t j2 = 0; j2 < n2; ++j2) {
      nlohmann::ordered_json cell;
      cell["a1"] = s.v1[i];
      cell["a2"] = s.v2[j2];
      cell["status"] = to_string(s.status[i * n2 + j2]);
      nlohmann::ordered_json vals;
      for (std::size_t k = 0; k < nq; ++k) {
        const double v = s.values[(i * n2 + j2) * nq + k];
        if (s.status[i * n2 + j2] == cell_status::ok)
          vals[s.quantities[k]] = v;
        else
          vals[s.quantities[k]] = nullptr;
      }
      cell["values"] = vals;
      cells.push_back(cell);
    }
  }
  j["cells"] = cells;
  if (!s.overlay.empty()) {
    j["overlay_theta_opt"] = s.overlay;
  }
  return j;
}

nlohmann::ordered_json run_report(const RunConfig& cfg) {
  SystemParams p = cfg.base;
  p.theta = resolve_theta(cfg, p);
  const ConditionalState s = make_state(p);
  const CovMat2 cm = covariance_main(s.fp, s.der, s.mc);
  const CovMat2 ca = covariance_appendix(s.fp, s.der, s.mc);
  const QuadCov qc = covariance_quadrature(s, cfg.tol);
  const SqueezeReport sq = squeeze_report(p);

  auto rel = [](double a, double b) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return scale > 0.0 ? std::fabs(a - b) / scale : 0.0;
  };
  const double self_check = std::max(
      {rel(cm.V_qq, qc.cov.V_qq), rel(cm.V_qp, qc.cov.V_qp),
       rel(cm.V_pp, qc.cov.V_pp)});

  nlohmann::ordered_json j;
  j["kernel"] = kernels::active_kernel_name();
  j["params"] = {
      {"m", p.m},          {"ell", p.ell},
      {"Omega", p.Omega_bare}, {"kappa", p.kappa},
      {"omega_c", p.omega_c},  {"Gamma", p.Gamma_bare},
      {"gamma_m", p.gamma_m},  {"P_in", p.P_in},
      {"T", p.T},          {"Delta", p.Delta},
      {"theta", p.theta},  {"units", "rad_s"}};
  j["derived"] = {
      {"g", s.der.g},          {"omega_m", s.der.omega_m},
      {"g_m", s.der.g_m},      {"alpha", s.der.alpha},
      {"xi", s.der.xi},        {"n_th", s.der.n_th},
      {"n_bar", s.der.n_bar},  {"zeta", s.der.zeta},
      {"Q_m", s.der.Q_m},      {"C_m", s.der.C_m},
      {"adiabatic", adiabatic_regime(p, s.der)}};
  j["measurement"] = {{"c_theta", s.mc.c_theta},
                      {"L_theta", s.mc.L_theta},
                      {"lambda_theta", s.mc.lambda_theta},
                      {"Lambda_theta", s.mc.Lambda_theta}};
  j["filter"] = {{"omega_theta", s.fp.omega_theta},
                 {"gamma_theta", s.fp.gamma_theta}};
  j["covariance"] = {
      {"main", {{"V_qq", cm.V_qq}, {"V_qp", cm.V_qp}, {"V_pp", cm.V_pp},
                {"det", cm.det()}, {"purity", purity(cm)}}},
      {"appendix", {{"V_qq", ca.V_qq}, {"V_qp", ca.V_qp}, {"V_pp", ca.V_pp}}},
      {"quadrature", {{"V_qq", qc.cov.V_qq}, {"V_qp", qc.cov.V_qp},
                      {"V_pp", qc.cov.V_pp}, {"abs_error", qc.abs_error},
                      {"panels", qc.panels}}}};
  j["self_check"] = {{"quad_vs_closed_rel", self_check},
                     {"tol", cfg.tol},
                     {"pass", self_check <= std::max(1e-6, 10.0 * cfg.tol)}};
  nlohmann::ordered_json sqj = {{"theta_opt", sq.theta_opt},
                                {"omega_ratio", sq.omega_ratio},
                                {"V_pp_exact", sq.V_pp_exact},
                                {"squeezed", sq.squeezed}};
  if (sq.V_pp_approx) sqj["V_pp_approx"] = *sq.V_pp_approx;
  if (sq.condition_factor) sqj["condition_factor"] = *sq.condition_factor;
  j["squeezing"] = sqj;
  if (cfg.delta > 0.0) {
    const auto [sp, sm] = mode_covariances(p, cfg.delta, p.theta);
    const CovMat2 cp = covariance_main(sp.fp, sp.der, sp.mc);
    const CovMat2 cmm = covariance_main(sm.fp, sm.der, sm.mc);
    const auto neg = log_negativity(assemble_two_mode(cp, cmm));
    j["entanglement"] = {
        {"delta", cfg.delta},
        {"V_plus", {{"V_qq", cp.V_qq}, {"V_qp", cp.V_qp}, {"V_pp", cp.V_pp}}},
        {"V_minus", {{"V_qq", cmm.V_qq}, {"V_qp", cmm.V_qp}, {"V_pp", cmm.V_pp}}},
        {"nu_minus", neg.nu_minus},
        {"E_N", neg.E_N}};
  }
  return j;
}

}  // namespace omcond
