#include "pnspace/norms.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "pnspace/transforms.hpp"

namespace pnspace {

namespace {

constexpr double kZeroModular = 1e-300;
constexpr int kMaxIterations = 200;

// Bisection for the root of scaled(lambda) = 1, scaled strictly decreasing.
// e_lo/e_hi bound the lambda-exponents appearing in the scaled modular, so
// [M^(1/e_lo), M^(1/e_hi)] sorted brackets the root (sandwich estimate).
template <class F>
NormResult solve_unit_level(F&& scaled, double modular_at_one, double e_lo,
                            double e_hi, double tol) {
  if (!(tol > 0.0)) throw Error(errc::invalid_argument, "tol must be > 0");
  NormResult r;
  if (modular_at_one < kZeroModular) return r;

  double a = std::pow(modular_at_one, 1.0 / e_lo);
  double b = std::pow(modular_at_one, 1.0 / e_hi);
  if (a > b) std::swap(a, b);

  int iters = 0;
  while (scaled(a) < 1.0 && iters < 120) { a *= 0.5; ++iters; }
  while (scaled(b) > 1.0 && iters < 240) { b *= 2.0; ++iters; }

  double best_lambda = 0.5 * (a + b);
  double best_resid = std::numeric_limits<double>::infinity();
  for (; iters < kMaxIterations; ++iters) {
    const double mid = 0.5 * (a + b);
    const double g = scaled(mid) - 1.0;
    if (std::abs(g) < best_resid) {
      best_resid = std::abs(g);
      best_lambda = mid;
    }
    if (g > 0.0) a = mid; else b = mid;
    if (best_resid <= tol) break;
    if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * mid) {
      // bracket at machine width; the residual cannot improve further
      break;
    }
  }
  if (best_resid > tol)
    throw Error(errc::no_convergence,
                "infimum solve did not reach the residual tolerance");
  r.value = best_lambda;
  r.iterations = iters;
  r.bracket_lo = a;
  r.bracket_hi = b;
  r.residual = best_resid;
  return r;
}

} // namespace

NormResult luxemburg_norm(const GridFunction& u, const ExponentField& p,
                          double tol) {
  if (!(u.grid() == p.grid()))
    throw Error(errc::invalid_argument, "grid mismatch");
  if (p.lower() < 1.0)
    throw Error(errc::hypothesis_violated, "Luxemburg norm needs p(x) >= 1");
  const Grid& g = u.grid();
  const std::size_t n = g.node_count();
  std::vector<double> w(n), absu(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = g.quad_weight(i);
    absu[i] = std::abs(u[i]);
  }
  auto scaled = [&](double lambda) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (absu[i] == 0.0) continue;
      acc += w[i] * std::pow(absu[i] / lambda, p[i]);
    }
    return acc;
  };
  const double m1 = scaled(1.0);
  return solve_unit_level(scaled, m1, p.lower(), p.upper(), tol);
}

namespace {

struct ScaledPnModular {
  // zeroth-order integrand z_i = |u_i| with lambda-exponent q_i, plus the
  // derivative terms m_i with lambda-exponent gb_i = gamma_i + beta_i
  std::vector<double> w, absu, q, mixed, gb;

  double operator()(double lambda) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (absu[i] != 0.0) acc += w[i] * std::pow(absu[i] / lambda, q[i]);
      if (mixed[i] != 0.0) acc += w[i] * mixed[i] * std::pow(lambda, -gb[i]);
    }
    return acc;
  }
};

ScaledPnModular build_scaled_pn(const GridFunction& u, const SpaceSpec& spec) {
  if (spec.kind() != SpaceKind::s1_var && spec.kind() != SpaceKind::s1_var_theta)
    throw Error(errc::invalid_argument,
                "pn_pseudonorm expects an s1_var or s1_var_theta spec");
  const ExponentField& gamma = spec.gamma_field();
  const ExponentField& beta = spec.beta_field();
  if (!(u.grid() == gamma.grid()))
    throw Error(errc::invalid_argument, "grid mismatch");
  const Grid& g = u.grid();
  const std::size_t n = g.node_count();
  ScaledPnModular s;
  s.w.resize(n);
  s.absu.resize(n);
  s.q.resize(n);
  s.mixed.assign(n, 0.0);
  s.gb.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.w[i] = g.quad_weight(i);
    s.absu[i] = std::abs(u[i]);
    s.gb[i] = gamma[i] + beta[i];
    s.q[i] = spec.kind() == SpaceKind::s1_var_theta ? spec.theta_field()[i]
                                                    : s.gb[i];
  }
  for (int axis = 0; axis < g.dim(); ++axis) {
    const GridFunction du = diff(u, axis);
    for (std::size_t i = 0; i < n; ++i)
      s.mixed[i] += pow_product({{u[i], gamma[i]}, {du[i], beta[i]}});
  }
  return s;
}

} // namespace

NormResult pn_pseudonorm(const GridFunction& u, const SpaceSpec& spec,
                         double tol) {
  const ScaledPnModular scaled = build_scaled_pn(u, spec);
  const ExponentField& gamma = spec.gamma_field();
  const ExponentField& beta = spec.beta_field();
  const double e_lo = gamma.lower() + beta.lower();
  const double e_hi = spec.kind() == SpaceKind::s1_var_theta
                          ? spec.theta_field().upper()
                          : gamma.upper() + beta.upper();
  return solve_unit_level(scaled, scaled(1.0), e_lo, e_hi, tol);
}

double pn_pseudonorm_sum(const GridFunction& u, const SpaceSpec& spec,
                         double tol) {
  if (spec.kind() != SpaceKind::s1_var_theta)
    throw Error(errc::invalid_argument,
                "the sum form needs an s1_var_theta spec");
  const SpaceSpec base = SpaceSpec::s1_var(spec.gamma_field(), spec.beta_field());
  return pn_pseudonorm(u, base, tol).value +
         luxemburg_norm(u, spec.theta_field(), tol).value;
}

double sobolev_norm(const GridFunction& u, const ExponentField& p, double tol) {
  const Grid& g = u.grid();
  std::vector<double> mag2(g.node_count(), 0.0);
  for (int axis = 0; axis < g.dim(); ++axis) {
    const GridFunction du = diff(u, axis);
    for (std::size_t i = 0; i < mag2.size(); ++i) mag2[i] += du[i] * du[i];
  }
  for (double& v : mag2) v = std::sqrt(v);
  const GridFunction grad_mag(g, std::move(mag2));
  return luxemburg_norm(u, p, tol).value +
         luxemburg_norm(grad_mag, p, tol).value;
}

namespace {

// constant-exponent Luxemburg norm has the closed form sigma^(1/beta)
double lp_norm_const(const GridFunction& w, double beta) {
  const double sigma = integrate(w.grid(), [&](std::size_t i) {
    return std::pow(std::abs(w[i]), beta);
  });
  return std::pow(sigma, 1.0 / beta);
}

} // namespace

double metric_const(const GridFunction& u, const GridFunction& v, double alpha,
                    double beta, double tol) {
  (void)tol;
  if (!(alpha >= 0.0) || !(beta >= 1.0))
    throw Error(errc::hypothesis_violated,
                "metric_const requires alpha >= 0 and beta >= 1");
  const GridFunction w = g_apply(u, alpha, beta) - g_apply(v, alpha, beta);
  const Grid& g = u.grid();
  std::vector<double> mag2(g.node_count(), 0.0);
  for (int axis = 0; axis < g.dim(); ++axis) {
    const GridFunction dw = diff(w, axis);
    for (std::size_t i = 0; i < mag2.size(); ++i) mag2[i] += dw[i] * dw[i];
  }
  for (double& m : mag2) m = std::sqrt(m);
  return lp_norm_const(w, beta) + lp_norm_const(GridFunction(g, std::move(mag2)), beta);
}

double metric_var(const GridFunction& u, const GridFunction& v,
                  const ExponentField& gamma, const ExponentField& beta,
                  const ExponentField& psi, double tol) {
  const PhiMap phi{gamma, beta};
  const GridFunction pu = phi_apply(u, phi);
  const GridFunction pv = phi_apply(v, phi);
  double d = luxemburg_norm(pu - pv, psi, tol).value;
  const GridFunction su = phi_prime(u, phi);
  const GridFunction sv = phi_prime(v, phi);
  for (int axis = 0; axis < u.grid().dim(); ++axis) {
    // second slot uses D_i v (the symmetric reading of the metric display)
    const GridFunction du = diff(u, axis);
    const GridFunction dv = diff(v, axis);
    const GridFunction diff_term =
        zip(zip(su, du, [](double s, double d1) { return s * d1; }),
            zip(sv, dv, [](double s, double d1) { return s * d1; }),
            [](double a, double b) { return a - b; });
    d += luxemburg_norm(diff_term, beta, tol).value;
  }
  return d;
}

} // namespace pnspace
