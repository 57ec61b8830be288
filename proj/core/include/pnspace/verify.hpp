#ifndef PNSPACE_VERIFY_HPP
#define PNSPACE_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "pnspace/exprlang.hpp"
#include "pnspace/norms.hpp"
#include "pnspace/transforms.hpp"

namespace pnspace {

//! Deterministic seeded family of test functions. Member i depends only on
//! (seed, i, kind, amplitude range, vanishing, grid), so a family extended
//! to a larger count keeps its prefix.
struct FunctionFamily {
  enum class Kind { trig_bumps, polynomial, bump_products, user_list };

  std::uint64_t seed = 1;
  int count = 100;
  Kind kind = Kind::trig_bumps;
  double amp_lo = 0.3;
  double amp_hi = 2.0;
  bool vanishing = false;
  std::vector<expr::Expr> user;

  std::string kind_name() const;
};

std::vector<GridFunction> generate_family(const FunctionFamily& fam,
                                          const Grid& g);

//! Smooth random exponent field mid + amp sin(...) confined to [lo, hi].
ExponentField random_exponent_field(const Grid& g, std::uint64_t seed,
                                    double lo, double hi);

//! Solve: minimize sum c_j subject to sum_j c_j terms_ij >= lhs_i, c_j >= 0,
//! for 1 to 3 unknowns, by vertex enumeration. Infeasible only when some row
//! has lhs_i > 0 and all its terms vanish.
std::vector<double> fit_constants(const std::vector<double>& lhs,
                                  const std::vector<std::vector<double>>& terms);

nlohmann::json grid_to_json(const Grid& g);

struct SampleRow {
  double lhs = 0.0;
  std::vector<double> terms;
  double margin = 0.0;
};

//! One verified inequality over a family: per-sample term values, the
//! prescribed or fitted constants, and the worst margin min_i(RHS_i - LHS_i).
struct InequalityReport {
  std::string lemma;
  std::uint64_t seed = 0;
  int family_count = 0;
  std::string family_kind;
  nlohmann::json grid;
  std::vector<double> constants;
  bool constants_prescribed = false;
  double worst_margin = 0.0;
  bool pass = false;
  std::string notes;
  std::vector<SampleRow> samples;
  nlohmann::json extra;

  nlohmann::json to_json() const;
};

//! Which case of an embedding theorem applies and the resulting admissible
//! p-range. Exactly one case label fires for valid inputs.
struct AdmissibilityDecision {
  std::string theorem;
  double alpha = 0.0;
  double beta = 1.0;
  int n = 1;
  double p = 0.0;
  std::string case_label;
  double p_min = 1.0;
  bool p_min_strict = false;
  double p_max = 0.0; //!< infinity encoded as +inf
  bool p_max_strict = false;
  double threshold = 0.0; //!< the case's binding bound on p
  bool admissible = false;

  nlohmann::json to_json() const;
};

// --- inequality checks over families -----------------------------------------

InequalityReport check_2_1(const FunctionFamily& fam, const Grid& g,
                           double alpha, double beta);
InequalityReport check_2_2(const FunctionFamily& fam, const Grid& g,
                           double alpha, double beta, double alpha1,
                           double beta1);
InequalityReport check_2_3(const FunctionFamily& fam, const Grid& g,
                           double alpha, double beta0, double beta1);

//! Hoelder with the prescribed constant 2 on pairs (members 2k, 2k+1).
//! Requires 1/p + 1/q = 1 nodewise within 1e-12.
InequalityReport check_holder(const FunctionFamily& fam, const Grid& g,
                              const ExponentField& p, const ExponentField& q);

//! min/max sandwich between sigma_p(u) and the Luxemburg norm.
InequalityReport check_sandwich_2_5(const FunctionFamily& fam, const Grid& g,
                                    const ExponentField& p,
                                    double rel_tol = 1e-6);

//! min/max sandwich between the combined theta-modular and the infimum-form
//! pseudo-norm, with exponents gamma^- + beta^- and theta^+.
InequalityReport check_lambda_sandwich(const FunctionFamily& fam, const Grid& g,
                                       const SpaceSpec& spec,
                                       double rel_tol = 1e-6);

//! Prescribed-constant check int |u|^beta <= int |u|^alpha + |Omega| for
//! alpha(x) >= beta(x).
InequalityReport check_4_1(const FunctionFamily& fam, const Grid& g,
                           const ExponentField& alpha,
                           const ExponentField& beta);

//! Smallest N0 >= 1 with ln t <= N0 t^eps for all t > 0: max(1, 1/(e*eps)).
double scalar_n0(double eps);

InequalityReport check_4_2(const FunctionFamily& fam, const Grid& g,
                           const ExponentField& zeta, double beta, double eps);
InequalityReport check_4_3(const FunctionFamily& fam, const Grid& g,
                           const ExponentField& xi, const ExponentField& beta,
                           const ExponentField& beta1);

//! Prescribed-constant embedding between two theta-spaces:
//! R^{xi,alpha,theta1}(u) <= (n+1) (R^{gamma,beta,theta}(u) + |Omega|).
InequalityReport check_4_4(const FunctionFamily& fam, const Grid& g,
                           const ExponentField& gamma, const ExponentField& beta,
                           const ExponentField& theta, const ExponentField& xi,
                           const ExponentField& alpha,
                           const ExponentField& theta1);

AdmissibilityDecision admissible_3_1(double alpha, double beta, int n,
                                     double p);
AdmissibilityDecision admissible_3_2(double alpha, double beta, int n,
                                     double p);

//! Embedding of W_0^{1,p} into the vanishing first-order space: fits
//! constants in modular(u) <= C (||u||_{W^{1,p}})^p + C'.
InequalityReport check_3_1(const FunctionFamily& fam, const Grid& g,
                           double alpha, double beta, double p,
                           bool probe_inadmissible = false);

//! Embedding of the vanishing second-order space into W_0^{1,p}: fits
//! constants in ||D_i u||_p^p <= C modular^(p/(alpha+beta)) + C'; the
//! modular^(2 beta/(alpha+beta)) variant is fitted and reported alongside.
InequalityReport check_3_2(const FunctionFamily& fam, const Grid& g,
                           double alpha, double beta, double p,
                           bool probe_inadmissible = false);

//! Finiteness of the combined theta-modular under a W^{1,p(x)} bound, with a
//! fitted constant in modular <= C (1 + ||u||_{W^{1,p(x)}})^(theta^+).
InequalityReport check_2_7(const FunctionFamily& fam, const Grid& g,
                           const ExponentField& p, const SpaceSpec& spec);

//! Metric axioms of the variable-exponent distance on sampled triples.
struct MetricAxiomReport {
  std::uint64_t seed = 0;
  int triples = 0;
  int violations = 0;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  nlohmann::json to_json() const;
};

MetricAxiomReport check_metric_axioms(const FunctionFamily& fam, const Grid& g,
                                      const SpaceSpec& spec,
                                      double tol = 1e-12);

//! Distance sequences along u_m = u0 + w/m: a_m is the metric distance,
//! b_m the direct image-space distance
//! ||phi(u_m)-phi(u0)||_{L^psi} + sum_i ||D_i(phi(u_m)-phi(u0))||_{L^beta}.
struct SequenceReport {
  std::vector<int> ms;
  std::vector<double> a;
  std::vector<double> b;
  double decay_a = 0.0; //!< final / initial
  double decay_b = 0.0;
  bool pass = false;    //!< both sequences decay below 1e-3 of their start
  nlohmann::json to_json() const;
};

SequenceReport check_homeomorphism_sequences(
    const GridFunction& u0, const GridFunction& w, const SpaceSpec& spec,
    const std::vector<int>& ms = {1, 2, 4, 8, 16, 32, 64});

} // namespace pnspace

#endif
