#ifndef PNSPACE_STUDIES_HPP
#define PNSPACE_STUDIES_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "pnspace/exprlang.hpp"
#include "pnspace/modulars.hpp"

namespace pnspace {

enum class GrowthModel { constant, log, power };

//! Modular values on a shrinking family of truncated domains (a_k, b),
//! classified as convergent or divergent. The growth models are fitted on
//! the deepest half of the sequence, where the transient from any bounded
//! part of the integrand has died out.
struct RefinementStudy {
  std::string functional;
  std::vector<double> cutoffs;
  std::vector<double> values;
  std::vector<int> densities; //!< nodes per unit length used at each level
  GrowthModel model = GrowthModel::constant;
  double slope = 0.0;          //!< log model: d value / d ln(1/a)
  double sigma = 0.0;          //!< power model exponent
  double residual_log = 0.0;   //!< RMS relative residual of the log fit
  double residual_power = 0.0; //!< RMS relative residual of the power fit
  bool divergent = false;

  nlohmann::json to_json() const;
  void write_csv(std::ostream& os) const; //!< rows of cutoff,value
};

//! Evaluate the modular of a constant-exponent space for u on the truncated
//! domains (a_k, right_end). The per-level node density is raised above
//! base_density when needed to resolve the integrand near the cutoff
//! (h <= a_k / 8), so quadrature error cannot masquerade as growth.
RefinementStudy refine_study(const expr::Expr& u, const SpaceSpec& spec,
                             const std::vector<double>& cutoffs,
                             double right_end = 1.0, int base_density = 4096);

//! Nonlinearity counterexample: u0 = x^tau and u1 = theta_shift separately
//! have convergent truncated modulars in S_{1,1,beta}(0,1) while their sum
//! diverges logarithmically with asymptotic slope theta_shift * tau^beta.
struct CounterexampleReport {
  double beta = 0.0, tau = 0.0, theta_shift = 0.0;
  RefinementStudy u0, u1, sum;
  double slope = 0.0;
  double expected_slope = 0.0;
  double slope_rel_err = 0.0;
  double tail_rel_change_u0 = 0.0; //!< |last-prev|/last of the u0 study
  double tail_rel_change_u1 = 0.0;
  bool pass = false; //!< the three classifications match expectations

  nlohmann::json to_json() const;
};

CounterexampleReport counterexample_nonlinearity(
    double beta, double tau, double theta_shift,
    const std::vector<double>& sum_cutoffs = {},
    const std::vector<double>& individual_cutoffs = {});

//! 1d identities of the second-order space S~_{2,alpha,beta}:
//!  (a) ||D^s g(u)||_beta^beta = ||g^{-1}(D^s g(u))||_{alpha+beta}^{alpha+beta}
//!      for s = 0, 1, exact up to floating rounding;
//!  (b) modular(u, S_1) <= C (modular(u, S~_2) + 1) with fitted C;
//!  (c) diff2(g(u)) matches g'(u) D^2 u + g''(u) (Du)^2 to O(h^2).
struct IdentityReport {
  double identity_a_rel_err = 0.0;
  double fitted_embedding_constant = 0.0;
  std::vector<double> residual_c; //!< max-norm at grid, refined, refined twice
  std::vector<double> ratios_c;
  bool pass = false;

  nlohmann::json to_json() const;
};

IdentityReport check_1d_identities(const expr::Expr& u, double alpha,
                                   double beta, const Grid& g);

} // namespace pnspace

#endif
