#ifndef PNSPACE_NORMS_HPP
#define PNSPACE_NORMS_HPP

#include "pnspace/modulars.hpp"

namespace pnspace {

//! Result of an infimum solve: the unique lambda > 0 with
//! modular(u / lambda) = 1, or 0 when the modular of u vanishes.
struct NormResult {
  double value = 0.0;
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double residual = 0.0; //!< |modular(u/lambda) - 1| at the returned lambda
};

//! Luxemburg norm inf{lambda > 0 : sigma_p(u/lambda) <= 1} by bisection.
//! The initial bracket [sigma^(1/p^-), sigma^(1/p^+)] (sorted) always
//! straddles the root; it is expanded geometrically if rounding spoils that.
NormResult luxemburg_norm(const GridFunction& u, const ExponentField& p,
                          double tol = 1e-10);

//! Pseudo-norm of the s1_var / s1_var_theta spaces (the infimum form):
//! bisection on lambda of the lambda-scaled modular, every term of which is
//! strictly decreasing in lambda.
NormResult pn_pseudonorm(const GridFunction& u, const SpaceSpec& spec,
                         double tol = 1e-10);

//! The sum form of the theta-space pseudo-norm:
//! [u]_{gamma,beta} + ||u||_{L^theta}. Differs from the infimum form as a
//! number; reports must label which form was used.
double pn_pseudonorm_sum(const GridFunction& u, const SpaceSpec& spec,
                         double tol = 1e-10);

//! ||u||_{L^p(x)} + || |grad u| ||_{L^p(x)} with the nodewise Euclidean
//! gradient magnitude.
double sobolev_norm(const GridFunction& u, const ExponentField& p,
                    double tol = 1e-10);

//! Distance ||g(u) - g(v)||_{W^{1,beta}} with g(t) = |t|^(alpha/beta) t.
double metric_const(const GridFunction& u, const GridFunction& v, double alpha,
                    double beta, double tol = 1e-10);

//! Distance ||phi(u) - phi(v)||_{L^psi(x)}
//!   + sum_i ||phi'(u) D_i u - phi'(v) D_i v||_{L^beta(x)}.
double metric_var(const GridFunction& u, const GridFunction& v,
                  const ExponentField& gamma, const ExponentField& beta,
                  const ExponentField& psi, double tol = 1e-10);

} // namespace pnspace

#endif
