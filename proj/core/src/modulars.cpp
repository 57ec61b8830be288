#include "pnspace/modulars.hpp"

#include <cmath>

namespace pnspace {

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw Error(errc::invalid_argument, "grid mismatch");
}

} // namespace

const ExponentField& SpaceSpec::field(int which) const {
  const std::optional<ExponentField>* f =
      which == 0 ? &gamma_ : which == 1 ? &beta_field_ : &theta_;
  if (!f->has_value())
    throw Error(errc::invalid_argument,
                "space spec does not carry the requested exponent field");
  return f->value();
}

SpaceSpec SpaceSpec::s_m_const(int m, double alpha, double beta, bool vanishing,
                               bool include_mixed) {
  if (m != 1 && m != 2)
    throw Error(errc::unsupported_order, "only orders m = 1, 2 are supported");
  if (!(alpha >= 0.0) || !(beta >= 1.0))
    throw Error(errc::hypothesis_violated,
                "s_m_const requires alpha >= 0 and beta >= 1");
  SpaceSpec s;
  s.kind_ = SpaceKind::s_m_const;
  s.m_ = m;
  s.alpha_ = alpha;
  s.beta_ = beta;
  s.vanishing_ = vanishing;
  s.include_mixed_ = include_mixed;
  return s;
}

SpaceSpec SpaceSpec::s1_var(ExponentField gamma, ExponentField beta) {
  require_same_grid(gamma.grid(), beta.grid());
  if (beta.lower() < 1.0)
    throw Error(errc::hypothesis_violated, "s1_var requires beta(x) >= 1");
  SpaceSpec s;
  s.kind_ = SpaceKind::s1_var;
  s.gamma_ = std::move(gamma);
  s.beta_field_ = std::move(beta);
  return s;
}

SpaceSpec SpaceSpec::s1_var_theta(ExponentField gamma, ExponentField beta,
                                  ExponentField theta, double eps0) {
  require_same_grid(gamma.grid(), beta.grid());
  require_same_grid(gamma.grid(), theta.grid());
  if (beta.lower() < 1.0)
    throw Error(errc::hypothesis_violated, "s1_var_theta requires beta(x) >= 1");
  if (theta.lower() < 1.0)
    throw Error(errc::hypothesis_violated, "s1_var_theta requires theta(x) >= 1");
  if (!(eps0 > 0.0))
    throw Error(errc::hypothesis_violated, "s1_var_theta requires eps0 > 0");
  for (std::size_t i = 0; i < theta.size(); ++i)
    if (theta[i] < gamma[i] + beta[i] + eps0 - 1e-12)
      throw Error(errc::hypothesis_violated,
                  "s1_var_theta requires theta >= gamma + beta + eps0 nodewise");
  SpaceSpec s;
  s.kind_ = SpaceKind::s1_var_theta;
  s.eps0_ = eps0;
  s.gamma_ = std::move(gamma);
  s.beta_field_ = std::move(beta);
  s.theta_ = std::move(theta);
  return s;
}

SpaceSpec SpaceSpec::s2_tilde_1d(double alpha, double beta) {
  if (!(beta - 1.0 >= 0.0) || !(alpha > beta - 1.0))
    throw Error(errc::hypothesis_violated,
                "s2_tilde_1d requires alpha > beta - 1 >= 0");
  SpaceSpec s;
  s.kind_ = SpaceKind::s2_tilde_1d;
  s.m_ = 2;
  s.alpha_ = alpha;
  s.beta_ = beta;
  return s;
}

double pow_product(std::initializer_list<std::pair<double, double>> factors) {
  for (const auto& [base, e] : factors)
    if (base == 0.0 && e > 0.0) return 0.0;
  double prod = 1.0;
  for (const auto& [base, e] : factors) {
    if (e == 0.0) continue;
    prod *= std::pow(std::abs(base), e);
  }
  return prod;
}

double lebesgue_modular(const GridFunction& u, const ExponentField& p) {
  require_same_grid(u.grid(), p.grid());
  return integrate(u.grid(), [&](std::size_t i) {
    return std::pow(std::abs(u[i]), p[i]);
  });
}

double mixed_modular(const GridFunction& u, const ExponentField& gamma,
                     const ExponentField& beta) {
  require_same_grid(u.grid(), gamma.grid());
  require_same_grid(u.grid(), beta.grid());
  const Grid& g = u.grid();
  double total = 0.0;
  for (int axis = 0; axis < g.dim(); ++axis) {
    const GridFunction du = diff(u, axis);
    total += integrate(g, [&](std::size_t i) {
      return pow_product({{u[i], gamma[i]}, {du[i], beta[i]}});
    });
  }
  return total;
}

double log_modular(const GridFunction& u, const ExponentField& zeta,
                   const ExponentField& beta) {
  require_same_grid(u.grid(), zeta.grid());
  require_same_grid(u.grid(), beta.grid());
  return integrate(u.grid(), [&](std::size_t i) {
    const double a = std::abs(u[i]);
    if (a == 0.0) return 0.0;
    return std::pow(a, zeta[i]) * std::pow(std::abs(std::log(a)), beta[i]);
  });
}

double boundary_pn_modular(const GridFunction& u, double exponent) {
  if (!(exponent >= 1.0))
    throw Error(errc::hypothesis_violated,
                "boundary modular exponent must be >= 1");
  const GridFunction powed =
      map(u, [&](double v) { return std::pow(std::abs(v), exponent); });
  return integrate_boundary(boundary_trace(powed));
}

namespace {

double s_m_const_modular(const GridFunction& u, const SpaceSpec& spec) {
  const Grid& g = u.grid();
  const double alpha = spec.alpha();
  const double beta = spec.beta_const();
  auto term = [&](const GridFunction& d) {
    return integrate(g, [&](std::size_t i) {
      return pow_product({{u[i], alpha}, {d[i], beta}});
    });
  };
  double total = 0.0;
  if (spec.vanishing()) {
    // top-order form of the vanishing space: first-order terms for m = 1,
    // pure second-order terms for m = 2
    for (int axis = 0; axis < g.dim(); ++axis)
      total += term(spec.order() == 1 ? diff(u, axis) : diff2(u, axis));
    return total;
  }
  total += integrate(g, [&](std::size_t i) {
    return std::pow(std::abs(u[i]), alpha + beta);
  });
  for (int axis = 0; axis < g.dim(); ++axis) total += term(diff(u, axis));
  if (spec.order() == 2) {
    for (int axis = 0; axis < g.dim(); ++axis) total += term(diff2(u, axis));
    if (spec.include_mixed() && g.dim() == 2) total += term(diff(diff(u, 0), 1));
  }
  return total;
}

double s2_tilde_modular(const GridFunction& u, const SpaceSpec& spec) {
  const Grid& g = u.grid();
  if (g.dim() != 1)
    throw Error(errc::invalid_argument, "s2_tilde_1d needs a 1d grid");
  const double alpha = spec.alpha();
  const double beta = spec.beta_const();
  const GridFunction du = diff(u, 0);
  const GridFunction d2u = diff2(u, 0);
  double total = integrate(g, [&](std::size_t i) {
    return std::pow(std::abs(u[i]), alpha + beta);
  });
  total += integrate(g, [&](std::size_t i) {
    return pow_product({{u[i], alpha - beta}, {du[i], 2.0 * beta}});
  });
  total += integrate(g, [&](std::size_t i) {
    return pow_product({{u[i], alpha}, {d2u[i], beta}});
  });
  return total;
}

} // namespace

double pn_modular(const GridFunction& u, const SpaceSpec& spec) {
  switch (spec.kind()) {
    case SpaceKind::s_m_const:
      return s_m_const_modular(u, spec);
    case SpaceKind::s1_var: {
      require_same_grid(u.grid(), spec.gamma_field().grid());
      const ExponentField& gamma = spec.gamma_field();
      const ExponentField& beta = spec.beta_field();
      return integrate(u.grid(),
                       [&](std::size_t i) {
                         return std::pow(std::abs(u[i]), gamma[i] + beta[i]);
                       }) +
             mixed_modular(u, gamma, beta);
    }
    case SpaceKind::s1_var_theta:
      return lebesgue_modular(u, spec.theta_field()) +
             mixed_modular(u, spec.gamma_field(), spec.beta_field());
    case SpaceKind::s2_tilde_1d:
      return s2_tilde_modular(u, spec);
  }
  throw Error(errc::invalid_argument, "bad space kind");
}

} // namespace pnspace
