#ifndef PNSPACE_MODULARS_HPP
#define PNSPACE_MODULARS_HPP

#include <optional>

#include "pnspace/grid.hpp"

namespace pnspace {

enum class SpaceKind { s_m_const, s1_var, s1_var_theta, s2_tilde_1d };

//! Description of one of the nonlinear function spaces handled by the
//! toolkit: which modular terms it sums and with which exponents.
//!
//! s_m_const(m, alpha, beta): sum of |u|^alpha |D^k u|^beta over 0 <= |k| <= m
//! with constant exponents. The vanishing variant uses the equivalent
//! top-order form (first-order terms for m = 1, pure second-order terms for
//! m = 2). include_mixed adds the mixed partial D1D2u to the |k| = 2 sum of
//! the full form on 2d grids.
//!
//! s1_var(gamma, beta): int |u|^(gamma+beta) + sum_i int |u|^gamma |D_i u|^beta.
//! s1_var_theta(gamma, beta, theta): int |u|^theta + sum_i int |u|^gamma |D_i u|^beta,
//! with theta >= gamma + beta + eps0 nodewise for a stored eps0 > 0.
//! s2_tilde_1d(alpha, beta): the three-term 1d functional
//! int |u|^(alpha+beta) + int |u|^(alpha-beta) |Du|^(2 beta) + int |u|^alpha |D^2u|^beta.
class SpaceSpec {
public:
  static SpaceSpec s_m_const(int m, double alpha, double beta,
                             bool vanishing = false, bool include_mixed = false);
  static SpaceSpec s1_var(ExponentField gamma, ExponentField beta);
  static SpaceSpec s1_var_theta(ExponentField gamma, ExponentField beta,
                                ExponentField theta, double eps0);
  static SpaceSpec s2_tilde_1d(double alpha, double beta);

  SpaceKind kind() const { return kind_; }
  bool is_constant_exponent() const {
    return kind_ == SpaceKind::s_m_const || kind_ == SpaceKind::s2_tilde_1d;
  }
  int order() const { return m_; }
  double alpha() const { return alpha_; }
  double beta_const() const { return beta_; }
  bool vanishing() const { return vanishing_; }
  bool include_mixed() const { return include_mixed_; }
  double eps0() const { return eps0_; }
  const ExponentField& gamma_field() const { return field(0); }
  const ExponentField& beta_field() const { return field(1); }
  const ExponentField& theta_field() const { return field(2); }

private:
  SpaceSpec() = default;
  const ExponentField& field(int which) const;

  SpaceKind kind_ = SpaceKind::s_m_const;
  int m_ = 1;
  double alpha_ = 0.0;
  double beta_ = 1.0;
  bool vanishing_ = false;
  bool include_mixed_ = false;
  double eps0_ = 0.0;
  std::optional<ExponentField> gamma_, beta_field_, theta_;
};

//! sigma_p(u) = int |u|^p(x) dx.
double lebesgue_modular(const GridFunction& u, const ExponentField& p);

//! sum_i int |u|^gamma(x) |D_i u|^beta(x) dx.
double mixed_modular(const GridFunction& u, const ExponentField& gamma,
                     const ExponentField& beta);

//! The modular of the given space evaluated at u. May return +inf when the
//! integrand is singular at a node (a numerically honest "not in the space").
double pn_modular(const GridFunction& u, const SpaceSpec& spec);

//! int |u|^zeta(x) |ln|u||^beta(x) dx with the convention that nodes where
//! u = 0 contribute 0 (the limit t^e |ln t|^b -> 0 as t -> 0+).
double log_modular(const GridFunction& u, const ExponentField& zeta,
                   const ExponentField& beta);

//! Boundary integral of |u|^exponent.
double boundary_pn_modular(const GridFunction& u, double exponent);

//! Product of |base_k|^{e_k}; a zero base with positive exponent annihilates
//! the whole product, so 0^{-a} * 0^{+b} evaluates to 0 rather than nan.
double pow_product(std::initializer_list<std::pair<double, double>> factors);

} // namespace pnspace

#endif
