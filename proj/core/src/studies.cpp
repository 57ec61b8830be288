#include "pnspace/studies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "pnspace/transforms.hpp"

namespace pnspace {

namespace {

using nlohmann::json;

const char* model_name(GrowthModel m) {
  switch (m) {
    case GrowthModel::constant: return "constant";
    case GrowthModel::log: return "log";
    case GrowthModel::power: return "power";
  }
  return "?";
}

struct LinFit {
  double intercept = 0.0;
  double slope = 0.0;
  double rms_rel = 0.0; //!< RMS of (fit - value)/value
};

LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  LinFit f;
  if (std::abs(det) < 1e-30) {
    f.intercept = sy / static_cast<double>(n);
  } else {
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / static_cast<double>(n);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double fit = f.intercept + f.slope * x[i];
    const double scale = std::max(std::abs(y[i]), 1e-300);
    acc += (fit - y[i]) * (fit - y[i]) / (scale * scale);
  }
  f.rms_rel = std::sqrt(acc / static_cast<double>(n));
  return f;
}

// power model value = c0 + c1 a^(-sigma); sigma searched on a grid with
// golden refinement. sigma is kept away from 0 where the model degenerates
// into the log model.
struct PowerFit {
  double sigma = 0.1;
  double rms_rel = 0.0;
};

double power_sse(const std::vector<double>& a, const std::vector<double>& v,
                 double sigma, double* rms_rel) {
  const std::size_t n = a.size();
  std::vector<double> reg(n);
  for (std::size_t i = 0; i < n; ++i) reg[i] = std::pow(a[i], -sigma);
  const LinFit f = linear_fit(reg, v);
  double sse = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double fit = f.intercept + f.slope * reg[i];
    sse += (fit - v[i]) * (fit - v[i]);
    const double scale = std::max(std::abs(v[i]), 1e-300);
    acc += (fit - v[i]) * (fit - v[i]) / (scale * scale);
  }
  if (rms_rel) *rms_rel = std::sqrt(acc / static_cast<double>(n));
  return sse;
}

PowerFit fit_power(const std::vector<double>& a, const std::vector<double>& v) {
  const double lo = 0.1, hi = 4.0;
  double best_sigma = lo;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 60; ++k) {
    const double s = lo + (hi - lo) * k / 60.0;
    const double sse = power_sse(a, v, s, nullptr);
    if (sse < best) {
      best = sse;
      best_sigma = s;
    }
  }
  double wl = std::max(lo, best_sigma - (hi - lo) / 60.0);
  double wh = std::min(hi, best_sigma + (hi - lo) / 60.0);
  for (int it = 0; it < 40; ++it) {
    const double m1 = wl + (wh - wl) / 3.0;
    const double m2 = wh - (wh - wl) / 3.0;
    if (power_sse(a, v, m1, nullptr) < power_sse(a, v, m2, nullptr)) wh = m2;
    else wl = m1;
  }
  PowerFit f;
  f.sigma = 0.5 * (wl + wh);
  power_sse(a, v, f.sigma, &f.rms_rel);
  return f;
}

} // namespace

json RefinementStudy::to_json() const {
  json j;
  j["functional"] = functional;
  j["cutoffs"] = cutoffs;
  j["values"] = values;
  j["densities"] = densities;
  j["model"] = model_name(model);
  j["slope"] = slope;
  j["sigma"] = sigma;
  j["residual_log"] = residual_log;
  j["residual_power"] = residual_power;
  j["classification"] = divergent ? "divergent" : "convergent";
  return j;
}

void RefinementStudy::write_csv(std::ostream& os) const {
  os << "cutoff,value\n";
  char buf[88];
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", cutoffs[i], values[i]);
    os << buf;
  }
}

RefinementStudy refine_study(const expr::Expr& u, const SpaceSpec& spec,
                             const std::vector<double>& cutoffs,
                             double right_end, int base_density) {
  if (!spec.is_constant_exponent())
    throw Error(errc::invalid_argument,
                "refinement studies need a constant-exponent space spec");
  if (cutoffs.size() < 5)
    throw Error(errc::invalid_argument, "need at least 5 cutoffs");
  for (std::size_t k = 0; k < cutoffs.size(); ++k) {
    if (!(cutoffs[k] > 0.0) || !(cutoffs[k] < right_end))
      throw Error(errc::invalid_argument, "cutoffs must lie in (0, right_end)");
    if (k > 0 && !(cutoffs[k] < cutoffs[k - 1]))
      throw Error(errc::invalid_argument,
                  "cutoffs must decrease strictly toward the singular endpoint");
  }
  if (base_density < 8)
    throw Error(errc::invalid_argument, "base density too small");

  RefinementStudy st;
  st.functional = "pn_modular";
  st.cutoffs = cutoffs;
  for (double a : cutoffs) {
    const double density =
        std::max(static_cast<double>(base_density), 8.0 / a);
    const int n =
        std::max(33, static_cast<int>(std::ceil((right_end - a) * density)) + 1);
    const Grid g = make_grid_1d(a, right_end, n);
    st.densities.push_back(static_cast<int>(density));
    st.values.push_back(pn_modular(u.sample(g), spec));
  }

  // Divergence shows up as local slopes (w.r.t. ln(1/a)) that persist or
  // grow toward the singular endpoint; for a convergent modular they die
  // out. The raw last/first value ratio alone misses slow log growth riding
  // on a large bounded part.
  const std::size_t count = st.values.size();
  const double first_val = std::abs(st.values.front());
  const double last_val = std::abs(st.values.back());
  auto local_slope = [&](std::size_t k) {
    const double dl = std::log(1.0 / st.cutoffs[k + 1]) -
                      std::log(1.0 / st.cutoffs[k]);
    return (st.values[k + 1] - st.values[k]) / dl;
  };
  const double s_first = local_slope(0);
  const double s_last = local_slope(count - 2);
  const bool slope_persists =
      s_last > 1e-3 * std::max(1.0, last_val) &&
      s_last >= 0.5 * s_first;
  const bool grew = last_val > 10.0 * std::max(first_val, 1e-300) || slope_persists;

  // growth models are fitted on the deepest half of the sequence
  const std::size_t nfit = (st.values.size() + 1) / 2;
  const std::size_t off = st.values.size() - nfit;
  std::vector<double> tail_a(st.cutoffs.begin() + static_cast<std::ptrdiff_t>(off),
                             st.cutoffs.end());
  std::vector<double> tail_v(st.values.begin() + static_cast<std::ptrdiff_t>(off),
                             st.values.end());
  std::vector<double> tail_l(tail_a.size());
  for (std::size_t i = 0; i < tail_a.size(); ++i)
    tail_l[i] = std::log(1.0 / tail_a[i]);

  const LinFit logfit = linear_fit(tail_l, tail_v);
  const PowerFit powfit = fit_power(tail_a, tail_v);
  st.slope = logfit.slope;
  st.sigma = powfit.sigma;
  st.residual_log = logfit.rms_rel;
  st.residual_power = powfit.rms_rel;

  if (!grew) {
    st.model = GrowthModel::constant;
    st.divergent = false;
    return st;
  }
  if (std::abs(st.residual_log - st.residual_power) <=
      0.01 * std::max({st.residual_log, st.residual_power, 1e-300}))
    throw Error(errc::fit_ambiguous,
                "log and power growth models fit equally well");
  st.model = st.residual_log <= st.residual_power ? GrowthModel::log
                                                  : GrowthModel::power;
  st.divergent = true;
  return st;
}

json CounterexampleReport::to_json() const {
  json j;
  j["beta"] = beta;
  j["tau"] = tau;
  j["theta_shift"] = theta_shift;
  j["u0"] = u0.to_json();
  j["u1"] = u1.to_json();
  j["sum"] = sum.to_json();
  j["slope"] = slope;
  j["expected_slope"] = expected_slope;
  j["slope_rel_err"] = slope_rel_err;
  j["tail_rel_change_u0"] = tail_rel_change_u0;
  j["tail_rel_change_u1"] = tail_rel_change_u1;
  j["pass"] = pass;
  return j;
}

namespace {

std::vector<double> dyadic_cutoffs(int from, int to) {
  std::vector<double> c;
  for (int k = from; k <= to; ++k) c.push_back(std::ldexp(1.0, -k));
  return c;
}

double tail_rel_change(const RefinementStudy& st) {
  const std::size_t n = st.values.size();
  const double last = std::abs(st.values[n - 1]);
  return std::abs(st.values[n - 1] - st.values[n - 2]) / std::max(last, 1e-300);
}

std::string format_expr_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

} // namespace

CounterexampleReport counterexample_nonlinearity(
    double beta, double tau, double theta_shift,
    const std::vector<double>& sum_cutoffs,
    const std::vector<double>& individual_cutoffs) {
  if (!(beta > 1.0))
    throw Error(errc::hypothesis_violated, "counterexample needs beta > 1");
  const double lo = (beta - 1.0) / (beta + 1.0);
  const double hi = (beta - 1.0) / beta;
  if (!(tau > lo) || !(tau <= hi))
    throw Error(errc::hypothesis_violated,
                "tau must lie in ((beta-1)/(beta+1), (beta-1)/beta]");
  if (!(theta_shift > 0.0))
    throw Error(errc::hypothesis_violated, "theta_shift must be positive");

  const std::vector<double> cs =
      sum_cutoffs.empty() ? dyadic_cutoffs(4, 14) : sum_cutoffs;
  // the individual branches certify a convergent tail, which needs deeper
  // cutoffs than the divergence fit of the sum
  const std::vector<double> ci =
      individual_cutoffs.empty() ? dyadic_cutoffs(4, 20) : individual_cutoffs;

  const SpaceSpec spec = SpaceSpec::s_m_const(1, 1.0, beta, false);
  const expr::Expr e_u0 =
      expr::Expr::parse("x^" + format_expr_number(tau));
  const expr::Expr e_u1 = expr::Expr::number(theta_shift);
  const expr::Expr e_sum = expr::Expr::parse(
      "x^" + format_expr_number(tau) + " + " + format_expr_number(theta_shift));

  CounterexampleReport r;
  r.beta = beta;
  r.tau = tau;
  r.theta_shift = theta_shift;
  r.u0 = refine_study(e_u0, spec, ci);
  r.u1 = refine_study(e_u1, spec, ci);
  r.sum = refine_study(e_sum, spec, cs);
  r.slope = r.sum.slope;
  r.expected_slope = theta_shift * std::pow(tau, beta);
  r.slope_rel_err =
      std::abs(r.slope - r.expected_slope) / std::abs(r.expected_slope);
  r.tail_rel_change_u0 = tail_rel_change(r.u0);
  r.tail_rel_change_u1 = tail_rel_change(r.u1);
  r.pass = !r.u0.divergent && !r.u1.divergent && r.sum.divergent &&
           r.sum.model == GrowthModel::log;
  return r;
}

json IdentityReport::to_json() const {
  json j;
  j["identity_a_rel_err"] = identity_a_rel_err;
  j["fitted_embedding_constant"] = fitted_embedding_constant;
  j["residuals"] = residual_c;
  j["ratios"] = ratios_c;
  j["pass"] = pass;
  return j;
}

IdentityReport check_1d_identities(const expr::Expr& u_expr, double alpha,
                                   double beta, const Grid& g) {
  if (!(beta - 1.0 > 0.0) || !(alpha > beta - 1.0))
    throw Error(errc::hypothesis_violated,
                "1d identities need alpha > beta - 1 > 0");
  if (g.dim() != 1)
    throw Error(errc::invalid_argument, "1d identities need a 1d grid");

  IdentityReport r;

  // (a) nodewise algebra: |g^{-1}(s)|^(alpha+beta) = |s|^beta
  const GridFunction u = u_expr.sample(g);
  const GridFunction gu = g_apply(u, alpha, beta);
  double worst = 0.0;
  for (const GridFunction& s : {gu, diff(gu, 0)}) {
    const double left = integrate(
        g, [&](std::size_t i) { return std::pow(std::abs(s[i]), beta); });
    const GridFunction back = g_inverse(s, alpha, beta);
    const double right = integrate(g, [&](std::size_t i) {
      return std::pow(std::abs(back[i]), alpha + beta);
    });
    worst = std::max(worst,
                     std::abs(left - right) / std::max({std::abs(left), 1e-300}));
  }
  r.identity_a_rel_err = worst;

  // (b) the second-order space sits inside the first-order one
  const SpaceSpec s1 = SpaceSpec::s_m_const(1, alpha, beta, false);
  const SpaceSpec s2t = SpaceSpec::s2_tilde_1d(alpha, beta);
  const double lhs = pn_modular(u, s1);
  const double rhs = pn_modular(u, s2t) + 1.0;
  r.fitted_embedding_constant = lhs / rhs;

  // (c) second-derivative split of g(u) under grid refinement
  auto residual_max = [&](const Grid& gr) {
    const GridFunction ur = u_expr.sample(gr);
    const GridFunction gur = g_apply(ur, alpha, beta);
    const GridFunction lhs_c = diff2(gur, 0);
    const GridFunction du = diff(ur, 0);
    const GridFunction d2u = diff2(ur, 0);
    const double r1 = alpha / beta;
    double m = 0.0;
    for (int i = 1; i + 1 < gr.extent(0); ++i) {
      const std::size_t idx = static_cast<std::size_t>(i);
      const double t = ur[idx];
      const double a = std::abs(t);
      const double gp = (r1 + 1.0) * std::pow(a, r1);
      const double gpp =
          a == 0.0 ? 0.0
                   : (r1 + 1.0) * r1 * std::pow(a, r1 - 1.0) * (t > 0 ? 1.0 : -1.0);
      const double rhs_c = gp * d2u[idx] + gpp * du[idx] * du[idx];
      m = std::max(m, std::abs(lhs_c[idx] - rhs_c));
    }
    return m;
  };

  Grid level = g;
  for (int lvl = 0; lvl < 3; ++lvl) {
    r.residual_c.push_back(residual_max(level));
    if (lvl < 2)
      level = make_grid_1d(level.bounds(0).lo, level.bounds(0).hi,
                           2 * level.extent(0) - 1);
  }
  for (std::size_t k = 0; k + 1 < r.residual_c.size(); ++k)
    r.ratios_c.push_back(r.residual_c[k] /
                         std::max(r.residual_c[k + 1], 1e-300));

  bool decreasing = true;
  for (double q : r.ratios_c) decreasing = decreasing && q > 1.15;
  r.pass = r.identity_a_rel_err <= 1e-12 && decreasing &&
           std::isfinite(r.fitted_embedding_constant);
  return r;
}

} // namespace pnspace
