#include "pnspace/transforms.hpp"

#include <cmath>

namespace pnspace {

PhiMap::PhiMap(ExponentField gamma_, ExponentField beta_)
    : gamma(std::move(gamma_)), beta(std::move(beta_)) {
  if (!(gamma.grid() == beta.grid()))
    throw Error(errc::invalid_argument, "grid mismatch");
  if (gamma.lower() < 0.0)
    throw Error(errc::hypothesis_violated, "phi map requires gamma(x) >= 0");
  if (beta.lower() < 1.0)
    throw Error(errc::hypothesis_violated, "phi map requires beta(x) >= 1");
}

PhiMap PhiMap::constants(const Grid& g, double alpha, double beta) {
  return PhiMap(ExponentField::constant(g, alpha),
                ExponentField::constant(g, beta));
}

namespace {

double signed_power(double t, double exponent_plus_one_base) {
  // |t|^e * t for e >= 0
  if (t == 0.0) return 0.0;
  return std::pow(std::abs(t), exponent_plus_one_base) * t;
}

void require_grid(const GridFunction& u, const ExponentField& e) {
  if (!(u.grid() == e.grid()))
    throw Error(errc::invalid_argument, "grid mismatch");
}

} // namespace

GridFunction g_apply(const GridFunction& u, double alpha, double beta) {
  if (!(alpha >= 0.0) || !(beta >= 1.0))
    throw Error(errc::hypothesis_violated, "g needs alpha >= 0 and beta >= 1");
  const double e = alpha / beta;
  return map(u, [e](double t) { return signed_power(t, e); });
}

GridFunction g_inverse(const GridFunction& v, double alpha, double beta) {
  if (!(alpha >= 0.0) || !(beta >= 1.0))
    throw Error(errc::hypothesis_violated, "g needs alpha >= 0 and beta >= 1");
  const double e = -alpha / (alpha + beta);
  return map(v, [e](double s) { return signed_power(s, e); });
}

GridFunction phi_apply(const GridFunction& u, const PhiMap& m) {
  require_grid(u, m.gamma);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] = signed_power(u[i], m.gamma[i] / m.beta[i]);
  return GridFunction(u.grid(), std::move(out));
}

GridFunction phi_prime(const GridFunction& u, const PhiMap& m) {
  require_grid(u, m.gamma);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = m.gamma[i] / m.beta[i];
    if (u[i] == 0.0)
      out[i] = (r == 0.0) ? 1.0 : 0.0;
    else
      out[i] = (r + 1.0) * std::pow(std::abs(u[i]), r);
  }
  return GridFunction(u.grid(), std::move(out));
}

GridFunction phi_inverse(const GridFunction& v, const PhiMap& m) {
  require_grid(v, m.gamma);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double e = m.beta[i] / (m.gamma[i] + m.beta[i]) - 1.0;
    out[i] = signed_power(v[i], e);
  }
  return GridFunction(v.grid(), std::move(out));
}

ExponentField psi_exponent(const ExponentField& theta,
                           const ExponentField& gamma,
                           const ExponentField& beta, double eps0) {
  if (!(theta.grid() == gamma.grid()) || !(theta.grid() == beta.grid()))
    throw Error(errc::invalid_argument, "grid mismatch");
  if (eps0 < 0.0)
    throw Error(errc::invalid_argument, "eps0 must be >= 0");
  std::vector<double> out(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i] < gamma[i] + beta[i] + eps0 - 1e-12)
      throw Error(errc::condition_violated,
                  "psi exponent requires theta >= gamma + beta + eps0 nodewise");
    out[i] = theta[i] * beta[i] / (gamma[i] + beta[i]);
  }
  return ExponentField::m0(GridFunction(theta.grid(), std::move(out)));
}

namespace {

GridFunction exponent_ratio(const PhiMap& m) {
  std::vector<double> r(m.gamma.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = m.gamma[i] / m.beta[i];
  return GridFunction(m.gamma.grid(), std::move(r));
}

// |u|^(gamma/beta) u ln|u| with the 0 * ln 0 := 0 convention
GridFunction log_weighted_phi(const GridFunction& u, const PhiMap& m) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = std::abs(u[i]);
    if (a == 0.0) {
      out[i] = 0.0;
    } else {
      const double r = m.gamma[i] / m.beta[i];
      out[i] = std::pow(a, r) * u[i] * std::log(a);
    }
  }
  return GridFunction(u.grid(), std::move(out));
}

std::vector<GridFunction> residual_impl(const GridFunction& u, const PhiMap& m,
                                        bool with_prefactor) {
  require_grid(u, m.gamma);
  const Grid& g = u.grid();
  const GridFunction phiu = phi_apply(u, m);
  const GridFunction dphi_du = phi_prime(u, m);
  const GridFunction ratio = exponent_ratio(m);
  const GridFunction logterm = log_weighted_phi(u, m);

  std::vector<GridFunction> out;
  for (int axis = 0; axis < g.dim(); ++axis) {
    const GridFunction d_phiu = diff(phiu, axis);
    const GridFunction du = diff(u, axis);
    const GridFunction d_ratio = diff(ratio, axis);
    std::vector<double> r(u.size(), 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (g.on_boundary(i)) continue;
      // prefactor variant: phi' Du = (b/(b+g)) [D phi - D(g/b) w], so both the
      // leading and the log term carry beta/(beta+gamma)
      const double pre =
          with_prefactor ? m.beta[i] / (m.beta[i] + m.gamma[i]) : 1.0;
      r[i] = pre * (d_phiu[i] - d_ratio[i] * logterm[i]) - dphi_du[i] * du[i];
    }
    out.emplace_back(g, std::move(r));
  }
  return out;
}

} // namespace

std::vector<GridFunction> chain_rule_residual(const GridFunction& u,
                                              const PhiMap& m) {
  return residual_impl(u, m, false);
}

std::vector<GridFunction> chain_rule_residual_prefactor(const GridFunction& u,
                                                        const PhiMap& m) {
  return residual_impl(u, m, true);
}

} // namespace pnspace
