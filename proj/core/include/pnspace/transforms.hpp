#ifndef PNSPACE_TRANSFORMS_HPP
#define PNSPACE_TRANSFORMS_HPP

#include <vector>

#include "pnspace/grid.hpp"

namespace pnspace {

//! The nodewise map phi(x, t) = |t|^(gamma(x)/beta(x)) t and its
//! t-derivative. gamma >= 0 and beta >= 1 nodewise.
struct PhiMap {
  ExponentField gamma;
  ExponentField beta;

  PhiMap(ExponentField gamma_, ExponentField beta_);
  static PhiMap constants(const Grid& g, double alpha, double beta);
};

//! g(t) = |t|^(alpha/beta) t applied nodewise.
GridFunction g_apply(const GridFunction& u, double alpha, double beta);

//! Inverse of g: s -> |s|^(-alpha/(alpha+beta)) s, with g_inverse(0) = 0.
GridFunction g_inverse(const GridFunction& v, double alpha, double beta);

GridFunction phi_apply(const GridFunction& u, const PhiMap& m);

//! phi'_t(u) = (gamma/beta + 1) |u|^(gamma/beta). At u = 0 the value is
//! gamma/beta + 1 when gamma = 0 (phi is the identity there) and 0 otherwise.
GridFunction phi_prime(const GridFunction& u, const PhiMap& m);

//! Nodewise inverse of phi via the exponent beta/(gamma+beta).
GridFunction phi_inverse(const GridFunction& v, const PhiMap& m);

//! psi(x) = theta(x) beta(x) / (gamma(x) + beta(x)), validated as M0.
//! Requires theta >= gamma + beta + eps0 nodewise.
ExponentField psi_exponent(const ExponentField& theta,
                           const ExponentField& gamma,
                           const ExponentField& beta, double eps0 = 0.0);

//! Chain-rule residual per axis, interior nodes only (boundary entries 0):
//!   R_i = D_i(phi(u)) - phi'_t(u) D_i u - D_i(gamma/beta) |u|^(gamma/beta) u ln|u|
//! with 0 * ln 0 := 0. Vanishes at rate h^2 for smooth data.
std::vector<GridFunction> chain_rule_residual(const GridFunction& u,
                                              const PhiMap& m);

//! Residual of the alternative decomposition that carries the prefactor
//! beta/(beta+gamma) on D_i(phi(u)). Reported for comparison; not expected
//! to vanish except where gamma = 0.
std::vector<GridFunction> chain_rule_residual_prefactor(const GridFunction& u,
                                                        const PhiMap& m);

} // namespace pnspace

#endif
