#include <cmath>
#include <limits>

#include "pnspace/verify.hpp"

namespace pnspace {

namespace {

using nlohmann::json;

json number_or_null(double v) {
  if (std::isinf(v)) return nullptr;
  return v;
}

InequalityReport make_report(const std::string& lemma,
                             const FunctionFamily& fam, const Grid& g) {
  InequalityReport r;
  r.lemma = lemma;
  r.seed = fam.seed;
  r.family_count = fam.count;
  r.family_kind = fam.kind_name();
  r.grid = grid_to_json(g);
  return r;
}

// margins with the report's constants; for fitted reports pass means the
// fit stayed feasible (margin >= -1e-9), for prescribed ones the stated
// tolerance applies
void finish_report(InequalityReport& r, double pass_tol) {
  double worst = std::numeric_limits<double>::infinity();
  for (auto& row : r.samples) {
    double rhs = 0.0;
    for (std::size_t j = 0; j < r.constants.size(); ++j)
      rhs += r.constants[j] * row.terms[j];
    row.margin = rhs - row.lhs;
    worst = std::min(worst, row.margin);
  }
  if (r.samples.empty()) worst = 0.0;
  r.worst_margin = worst;
  bool finite = true;
  for (double c : r.constants) finite = finite && std::isfinite(c);
  r.pass = finite && worst >= -pass_tol;
}

void fit_and_finish(InequalityReport& r) {
  std::vector<double> lhs;
  std::vector<std::vector<double>> terms;
  for (const auto& row : r.samples) {
    lhs.push_back(row.lhs);
    terms.push_back(row.terms);
  }
  r.constants = fit_constants(lhs, terms);
  r.constants_prescribed = false;
  finish_report(r, 1e-9);
}

double lp_norm_const_pow(const GridFunction& w, double p) {
  return integrate(w.grid(),
                   [&](std::size_t i) { return std::pow(std::abs(w[i]), p); });
}

} // namespace

json grid_to_json(const Grid& g) {
  json j;
  j["dim"] = g.dim();
  json bounds = json::array();
  json res = json::array();
  for (int a = 0; a < g.dim(); ++a) {
    bounds.push_back({g.bounds(a).lo, g.bounds(a).hi});
    res.push_back(g.extent(a));
  }
  j["bounds"] = bounds;
  j["resolution"] = res;
  return j;
}

json InequalityReport::to_json() const {
  json j;
  j["lemma"] = lemma;
  j["seed"] = seed;
  j["family"] = {{"kind", family_kind}, {"count", family_count}};
  j["grid"] = grid;
  j["constants"] = constants;
  j["constants_prescribed"] = constants_prescribed;
  j["worst_margin"] = worst_margin;
  j["pass"] = pass;
  if (!notes.empty()) j["notes"] = notes;
  json rows = json::array();
  for (const auto& s : samples)
    rows.push_back({{"lhs", s.lhs}, {"terms", s.terms}, {"margin", s.margin}});
  j["samples"] = rows;
  if (!extra.is_null()) j["extra"] = extra;
  return j;
}

json AdmissibilityDecision::to_json() const {
  json j;
  j["theorem"] = theorem;
  j["inputs"] = {{"alpha", alpha}, {"beta", beta}, {"n", n},
                 {"p", number_or_null(p)}};
  j["case"] = case_label;
  j["p_min"] = p_min;
  j["p_min_strict"] = p_min_strict;
  j["p_max"] = number_or_null(p_max);
  j["p_max_strict"] = p_max_strict;
  j["threshold"] = threshold;
  j["admissible"] = admissible;
  return j;
}

json MetricAxiomReport::to_json() const {
  json j;
  j["seed"] = seed;
  j["triples"] = triples;
  j["violations"] = violations;
  j["worst_violation"] = worst_violation;
  j["tolerance"] = tolerance;
  j["pass"] = pass;
  return j;
}

json SequenceReport::to_json() const {
  json j;
  j["m"] = ms;
  j["metric_distance"] = a;
  j["image_distance"] = b;
  j["decay_metric"] = decay_a;
  j["decay_image"] = decay_b;
  j["pass"] = pass;
  return j;
}

// --- first-order trace inequality (catalog id 2.1) ----------------------------

InequalityReport check_2_1(const FunctionFamily& fam, const Grid& g,
                           double alpha, double beta) {
  if (!(alpha >= 0.0) || !(beta >= 1.0))
    throw Error(errc::hypothesis_violated, "2.1 needs alpha >= 0, beta >= 1");
  InequalityReport r = make_report("2.1", fam, g);
  r.extra = {{"alpha", alpha}, {"beta", beta}};
  for (const GridFunction& u : generate_family(fam, g)) {
    const double lhs = integrate(g, [&](std::size_t i) {
      return std::pow(std::abs(u[i]), alpha + beta);
    });
    const double bnd = boundary_pn_modular(u, alpha + beta);
    for (int axis = 0; axis < g.dim(); ++axis) {
      const GridFunction du = diff(u, axis);
      const double mixed = integrate(g, [&](std::size_t i) {
        return pow_product({{u[i], alpha}, {du[i], beta}});
      });
      r.samples.push_back({lhs, {mixed, bnd}, 0.0});
    }
  }
  fit_and_finish(r);
  return r;
}

// --- lower-order interpolation inequality (catalog id 2.2) ---------------------

InequalityReport check_2_2(const FunctionFamily& fam, const Grid& g,
                           double alpha, double beta, double alpha1,
                           double beta1) {
  auto fail = [](const std::string& cond) {
    throw Error(errc::hypothesis_violated, "2.2 hypothesis fails: " + cond);
  };
  if (!(alpha >= 0.0) || !(alpha1 >= 0.0)) fail("alpha, alpha1 >= 0");
  if (!(beta >= 1.0)) fail("beta >= 1");
  if (!(beta > beta1) || !(beta1 > 0.0)) fail("beta > beta1 > 0");
  if (!(alpha1 / beta1 >= alpha / beta - 1e-12)) fail("alpha1/beta1 >= alpha/beta");
  if (!(alpha1 + beta1 <= alpha + beta + 1e-12)) fail("alpha1+beta1 <= alpha+beta");

  InequalityReport r = make_report("2.2", fam, g);
  r.extra = {{"alpha", alpha}, {"beta", beta}, {"alpha1", alpha1},
             {"beta1", beta1}};
  for (const GridFunction& u : generate_family(fam, g)) {
    const double bnd = boundary_pn_modular(u, alpha + beta);
    for (int axis = 0; axis < g.dim(); ++axis) {
      const GridFunction du = diff(u, axis);
      const double lhs = integrate(g, [&](std::size_t i) {
        return pow_product({{u[i], alpha1}, {du[i], beta1}});
      });
      const double mixed = integrate(g, [&](std::size_t i) {
        return pow_product({{u[i], alpha}, {du[i], beta}});
      });
      r.samples.push_back({lhs, {mixed, bnd, 1.0}, 0.0});
    }
  }
  fit_and_finish(r);
  return r;
}

// --- second-order inequality (catalog id 2.3) ----------------------------------

InequalityReport check_2_3(const FunctionFamily& fam, const Grid& g,
                           double alpha, double beta0, double beta1) {
  auto fail = [](const std::string& cond) {
    throw Error(errc::hypothesis_violated, "2.3 hypothesis fails: " + cond);
  };
  if (!(alpha >= 0.0)) fail("alpha >= 0");
  if (!(beta0 + beta1 >= 2.0)) fail("beta0 + beta1 >= 2");
  if (!(beta1 >= beta0) || !(beta0 >= 0.0)) fail("beta1 >= beta0 >= 0");

  InequalityReport r = make_report("2.3", fam, g);
  r.extra = {{"alpha", alpha}, {"beta0", beta0}, {"beta1", beta1}};
  for (const GridFunction& u : generate_family(fam, g)) {
    for (int axis = 0; axis < g.dim(); ++axis) {
      const GridFunction du = diff(u, axis);
      const GridFunction d2u = diff2(u, axis);
      const double lhs = integrate(g, [&](std::size_t i) {
        return pow_product({{u[i], alpha}, {du[i], beta0 + beta1}});
      });
      const double second = integrate(g, [&](std::size_t i) {
        return pow_product({{u[i], alpha + beta0}, {d2u[i], beta1}});
      });
      const GridFunction boundary_integrand =
          zip(u, du, [&](double uv, double dv) {
            return std::pow(std::abs(uv), alpha + beta0 + beta1) +
                   pow_product({{uv, alpha + 1.0}, {dv, beta0 + beta1 - 1.0}});
          });
      const double bnd = integrate_boundary(boundary_trace(boundary_integrand));
      r.samples.push_back({lhs, {second, bnd}, 0.0});
    }
  }
  fit_and_finish(r);
  return r;
}

// --- Hoelder with prescribed constant 2 (catalog id holder) --------------------

InequalityReport check_holder(const FunctionFamily& fam, const Grid& g,
                              const ExponentField& p, const ExponentField& q) {
  if (!(p.grid() == g) || !(q.grid() == g))
    throw Error(errc::invalid_argument, "grid mismatch");
  if (p.lower() < 1.0 || q.lower() < 1.0)
    throw Error(errc::conjugacy_violated, "p and q must lie in M0");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (std::abs(1.0 / p[i] + 1.0 / q[i] - 1.0) > 1e-12)
      throw Error(errc::conjugacy_violated,
                  "1/p + 1/q = 1 fails at node " + std::to_string(i));

  FunctionFamily doubled = fam;
  doubled.count = fam.count * 2;
  const std::vector<GridFunction> members = generate_family(doubled, g);

  InequalityReport r = make_report("holder", fam, g);
  r.constants = {2.0};
  r.constants_prescribed = true;
  for (int k = 0; k < fam.count; ++k) {
    const GridFunction& u = members[static_cast<std::size_t>(2 * k)];
    const GridFunction& v = members[static_cast<std::size_t>(2 * k + 1)];
    const double lhs =
        integrate(g, [&](std::size_t i) { return std::abs(u[i] * v[i]); });
    const double norms =
        luxemburg_norm(u, p).value * luxemburg_norm(v, q).value;
    r.samples.push_back({lhs, {norms}, 0.0});
  }
  finish_report(r, 1e-8);
  return r;
}

// --- norm/modular sandwiches (catalog id 2.5) -----------------------------------

namespace {

InequalityReport sandwich_report(const std::string& id,
                                 const FunctionFamily& fam, const Grid& g,
                                 double rel_tol,
                                 const std::vector<GridFunction>& members,
                                 double e_lo, double e_hi,
                                 double (*modular)(const GridFunction&,
                                                   const void*),
                                 double (*norm)(const GridFunction&,
                                                const void*),
                                 const void* ctx) {
  InequalityReport r = make_report(id, fam, g);
  r.notes = "relative sandwich margins; terms are [min bound, max bound]";
  double worst = std::numeric_limits<double>::infinity();
  for (const GridFunction& u : members) {
    const double sigma = modular(u, ctx);
    const double lambda = norm(u, ctx);
    if (sigma == 0.0 && lambda == 0.0) {
      r.samples.push_back({0.0, {0.0, 0.0}, 0.0});
      continue;
    }
    const double lo = std::min(std::pow(lambda, e_lo), std::pow(lambda, e_hi));
    const double hi = std::max(std::pow(lambda, e_lo), std::pow(lambda, e_hi));
    const double scale = std::max({sigma, lo, 1e-300});
    const double margin = std::min(sigma - lo, hi - sigma) / scale;
    worst = std::min(worst, margin);
    r.samples.push_back({sigma, {lo, hi}, margin});
  }
  r.worst_margin = r.samples.empty() ? 0.0 : worst;
  r.pass = r.worst_margin >= -rel_tol;
  r.extra = {{"exponent_lo", e_lo}, {"exponent_hi", e_hi},
             {"relative_tolerance", rel_tol}};
  return r;
}

} // namespace

InequalityReport check_sandwich_2_5(const FunctionFamily& fam, const Grid& g,
                                    const ExponentField& p, double rel_tol) {
  const std::vector<GridFunction> members = generate_family(fam, g);
  auto modular = [](const GridFunction& u, const void* ctx) {
    return lebesgue_modular(u, *static_cast<const ExponentField*>(ctx));
  };
  auto norm = [](const GridFunction& u, const void* ctx) {
    return luxemburg_norm(u, *static_cast<const ExponentField*>(ctx)).value;
  };
  return sandwich_report("2.5", fam, g, rel_tol, members, p.lower(), p.upper(),
                         modular, norm, &p);
}

InequalityReport check_lambda_sandwich(const FunctionFamily& fam, const Grid& g,
                                       const SpaceSpec& spec, double rel_tol) {
  if (spec.kind() != SpaceKind::s1_var_theta)
    throw Error(errc::invalid_argument,
                "lambda sandwich needs an s1_var_theta spec");
  const std::vector<GridFunction> members = generate_family(fam, g);
  auto modular = [](const GridFunction& u, const void* ctx) {
    return pn_modular(u, *static_cast<const SpaceSpec*>(ctx));
  };
  auto norm = [](const GridFunction& u, const void* ctx) {
    return pn_pseudonorm(u, *static_cast<const SpaceSpec*>(ctx)).value;
  };
  const double e_lo = spec.gamma_field().lower() + spec.beta_field().lower();
  const double e_hi = spec.theta_field().upper();
  InequalityReport r = sandwich_report("lambda_sandwich", fam, g, rel_tol,
                                       members, e_lo, e_hi, modular, norm,
                                       &spec);
  return r;
}

// --- exponent monotonicity bound (catalog id 4.1) -------------------------------

InequalityReport check_4_1(const FunctionFamily& fam, const Grid& g,
                           const ExponentField& alpha,
                           const ExponentField& beta) {
  if (!(alpha.grid() == g) || !(beta.grid() == g))
    throw Error(errc::invalid_argument, "grid mismatch");
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] < beta[i] - 1e-12)
      throw Error(errc::hypothesis_violated,
                  "4.1 needs alpha(x) >= beta(x); fails at node " +
                      std::to_string(i));
  InequalityReport r = make_report("4.1", fam, g);
  r.constants = {1.0, g.measure()};
  r.constants_prescribed = true;
  for (const GridFunction& u : generate_family(fam, g)) {
    const double lhs = lebesgue_modular(u, beta);
    const double rhs_term = lebesgue_modular(u, alpha);
    r.samples.push_back({lhs, {rhs_term, 1.0}, 0.0});
  }
  finish_report(r, 1e-8);
  return r;
}

double scalar_n0(double eps) {
  if (!(eps > 0.0)) throw Error(errc::invalid_argument, "eps must be > 0");
  // sup of ln t / t^eps over t > 0 sits at t = e^(1/eps) with value 1/(e eps)
  return std::max(1.0, 1.0 / (std::exp(1.0) * eps));
}

// --- logarithmic-weight bounds (catalog ids 4.2, 4.3) ---------------------------

InequalityReport check_4_2(const FunctionFamily& fam, const Grid& g,
                           const ExponentField& zeta, double beta, double eps) {
  if (!(beta >= 1.0) || !(eps > 0.0))
    throw Error(errc::hypothesis_violated, "4.2 needs beta >= 1 and eps > 0");
  if (!(zeta.grid() == g)) throw Error(errc::invalid_argument, "grid mismatch");
  if (zeta.lower() < 1.0)
    throw Error(errc::hypothesis_violated, "4.2 needs zeta in M0");
  InequalityReport r = make_report("4.2", fam, g);
  const ExponentField beta_field = ExponentField::constant(g, beta);
  for (const GridFunction& u : generate_family(fam, g)) {
    const double lhs = log_modular(u, zeta, beta_field);
    const double term = integrate(g, [&](std::size_t i) {
      return std::pow(std::abs(u[i]), zeta[i] + eps);
    });
    r.samples.push_back({lhs, {term, 1.0}, 0.0});
  }
  fit_and_finish(r);
  // the fitted leading constant must not beat the constructive bound
  // N0(eps/beta)^beta from the scalar inequality ln t <= N0 t^(eps/beta)
  const double proof_n1 = std::pow(scalar_n0(eps / beta), beta);
  r.extra = {{"zeta_lo", zeta.lower()}, {"zeta_hi", zeta.upper()},
             {"beta", beta}, {"eps", eps}, {"proof_n1_bound", proof_n1}};
  r.pass = r.pass && r.constants[0] <= proof_n1 + 1e-12;
  return r;
}

InequalityReport check_4_3(const FunctionFamily& fam, const Grid& g,
                           const ExponentField& xi, const ExponentField& beta,
                           const ExponentField& beta1) {
  if (!(xi.grid() == g) || !(beta.grid() == g) || !(beta1.grid() == g))
    throw Error(errc::invalid_argument, "grid mismatch");
  if (xi.lower() < 1.0 || beta.lower() < 1.0)
    throw Error(errc::hypothesis_violated, "4.3 needs xi, beta in M0");
  if (!(beta1.lower() > 0.0))
    throw Error(errc::hypothesis_violated,
                "4.3 needs beta1(x) >= eps~ > 0 everywhere");
  InequalityReport r = make_report("4.3", fam, g);
  for (const GridFunction& u : generate_family(fam, g)) {
    const double lhs = log_modular(u, xi, beta);
    const double term = integrate(g, [&](std::size_t i) {
      return std::pow(std::abs(u[i]), xi[i] + beta1[i]);
    });
    r.samples.push_back({lhs, {term, 1.0}, 0.0});
  }
  fit_and_finish(r);
  r.extra = {{"beta1_lo", beta1.lower()}, {"beta_hi", beta.upper()}};
  return r;
}

// --- theta-space embedding with prescribed constants (catalog id 4.4) -----------

InequalityReport check_4_4(const FunctionFamily& fam, const Grid& g,
                           const ExponentField& gamma, const ExponentField& beta,
                           const ExponentField& theta, const ExponentField& xi,
                           const ExponentField& alpha,
                           const ExponentField& theta1) {
  for (const ExponentField* f : {&gamma, &beta, &theta, &xi, &alpha, &theta1})
    if (!(f->grid() == g))
      throw Error(errc::invalid_argument, "grid mismatch");

  const double tol = 1e-12;
  bool case_i = true, case_ii = true;
  std::string why;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (theta1[i] > theta[i] + tol) {
      throw Error(errc::condition_violated,
                  "theta1 <= theta fails at node " + std::to_string(i));
    }
    if (theta[i] < gamma[i] + beta[i] - tol)
      throw Error(errc::condition_violated,
                  "theta >= gamma + beta fails at node " + std::to_string(i));
    const double cross = xi[i] * beta[i] - gamma[i] * alpha[i];
    const double scale = std::max(1.0, std::abs(xi[i] * beta[i]));
    if (std::abs(cross) > 1e-9 * scale) case_i = false;
    if (beta[i] < alpha[i] - tol) case_i = false;
    if (!(cross > 1e-12 * scale)) case_ii = false;
    if (gamma[i] + beta[i] < xi[i] + alpha[i] - tol) case_ii = false;
    if (!(beta[i] >= alpha[i] + 1e-9)) case_ii = false;
  }
  if (!case_i && !case_ii)
    throw Error(errc::condition_violated,
                "neither condition set (i) nor (ii) holds nodewise");

  const double n = static_cast<double>(g.dim());
  InequalityReport r = make_report("4.4", fam, g);
  r.constants = {n + 1.0, (n + 1.0) * g.measure()};
  r.constants_prescribed = true;
  r.extra = {{"condition_case", case_i ? "i" : "ii"}};
  for (const GridFunction& u : generate_family(fam, g)) {
    const double lhs =
        lebesgue_modular(u, theta1) + mixed_modular(u, xi, alpha);
    const double rhs_term =
        lebesgue_modular(u, theta) + mixed_modular(u, gamma, beta);
    r.samples.push_back({lhs, {rhs_term, 1.0}, 0.0});
  }
  finish_report(r, 1e-8);
  return r;
}

// --- admissibility of the constant-exponent embeddings --------------------------

AdmissibilityDecision admissible_3_1(double alpha, double beta, int n,
                                     double p) {
  if (!(alpha >= 0.0) || !(beta >= 1.0) || n < 1)
    throw Error(errc::hypothesis_violated,
                "3.1 needs alpha >= 0, beta >= 1, n >= 1");
  AdmissibilityDecision d;
  d.theorem = "3.1";
  d.alpha = alpha;
  d.beta = beta;
  d.n = n;
  d.p = p;
  d.p_max = std::numeric_limits<double>::infinity();
  d.p_max_strict = false;
  const double nd = static_cast<double>(n);
  if (beta == nd) {
    d.case_label = "i";
    d.p_min = beta;
    d.p_min_strict = true;
  } else if (beta > nd) {
    d.case_label = "ii";
    d.p_min = beta;
    d.p_min_strict = false;
  } else {
    d.case_label = "iii";
    d.p_min = nd * (alpha + beta) / (alpha + nd);
    d.p_min_strict = false;
  }
  d.threshold = d.p_min;
  if (std::isfinite(p))
    d.admissible = d.p_min_strict ? p > d.p_min : p >= d.p_min;
  return d;
}

AdmissibilityDecision admissible_3_2(double alpha, double beta, int n,
                                     double p) {
  if (!(beta > alpha) || !(alpha >= 0.0) || !(beta >= 2.0) || n < 1)
    throw Error(errc::hypothesis_violated,
                "3.2 needs beta > alpha >= 0 and beta >= 2");
  AdmissibilityDecision d;
  d.theorem = "3.2";
  d.alpha = alpha;
  d.beta = beta;
  d.n = n;
  d.p = p;
  d.p_min = 1.0;
  d.p_min_strict = false;
  const double nd = static_cast<double>(n);
  const double s = alpha + beta;
  if (s == nd) {
    d.case_label = "i";
    d.p_max = 2.0 * beta;
    d.p_max_strict = true;
  } else if (s > nd) {
    d.case_label = "ii";
    d.p_max = 2.0 * beta;
    d.p_max_strict = false;
  } else {
    d.case_label = "iii";
    d.p_max = 2.0 * nd * beta * s / (2.0 * nd * beta - s * (beta - alpha));
    d.p_max_strict = false;
  }
  d.threshold = d.p_max;
  if (std::isfinite(p))
    d.admissible = p >= 1.0 && (d.p_max_strict ? p < d.p_max : p <= d.p_max);
  return d;
}

// --- constant-exponent embedding checks (catalog ids 3.1, 3.2) ------------------

InequalityReport check_3_1(const FunctionFamily& fam, const Grid& g,
                           double alpha, double beta, double p,
                           bool probe_inadmissible) {
  const AdmissibilityDecision d = admissible_3_1(alpha, beta, g.dim(), p);
  if (!d.admissible && !probe_inadmissible)
    throw Error(errc::not_admissible,
                "p = " + std::to_string(p) + " is below the case (" +
                    d.case_label + ") threshold " + std::to_string(d.threshold));
  if (!fam.vanishing)
    throw Error(errc::hypothesis_violated,
                "3.1 needs a boundary-vanishing family");
  const SpaceSpec ring1 = SpaceSpec::s_m_const(1, alpha, beta, true);
  const ExponentField pf = ExponentField::constant(g, p);
  InequalityReport r = make_report("3.1", fam, g);
  for (const GridFunction& u : generate_family(fam, g)) {
    const double lhs = pn_modular(u, ring1);
    const double sob = sobolev_norm(u, pf);
    r.samples.push_back({lhs, {std::pow(sob, p), 1.0}, 0.0});
  }
  fit_and_finish(r);
  r.extra = {{"admissibility", d.to_json()}};
  if (!d.admissible) {
    r.notes = "parameters are not admissible; constants are a probe only";
    r.pass = false;
  }
  return r;
}

InequalityReport check_3_2(const FunctionFamily& fam, const Grid& g,
                           double alpha, double beta, double p,
                           bool probe_inadmissible) {
  const AdmissibilityDecision d = admissible_3_2(alpha, beta, g.dim(), p);
  if (!d.admissible && !probe_inadmissible)
    throw Error(errc::not_admissible,
                "p = " + std::to_string(p) + " violates the case (" +
                    d.case_label + ") bound " + std::to_string(d.threshold));
  if (!fam.vanishing)
    throw Error(errc::hypothesis_violated,
                "3.2 needs a boundary-vanishing family");
  const SpaceSpec ring2 = SpaceSpec::s_m_const(2, alpha, beta, true);
  InequalityReport r = make_report("3.2", fam, g);
  std::vector<double> lhs_alt;
  std::vector<std::vector<double>> terms_alt;
  for (const GridFunction& u : generate_family(fam, g)) {
    const double mod2 = pn_modular(u, ring2);
    for (int axis = 0; axis < g.dim(); ++axis) {
      const double lhs = lp_norm_const_pow(diff(u, axis), p);
      r.samples.push_back(
          {lhs, {std::pow(mod2, p / (alpha + beta)), 1.0}, 0.0});
      lhs_alt.push_back(lhs);
      terms_alt.push_back({std::pow(mod2, 2.0 * beta / (alpha + beta)), 1.0});
    }
  }
  fit_and_finish(r);
  const std::vector<double> alt = fit_constants(lhs_alt, terms_alt);
  r.extra = {{"admissibility", d.to_json()},
             {"variant_2beta_exponent_constants", alt}};
  if (!d.admissible) {
    r.notes = "parameters are not admissible; constants are a probe only";
    r.pass = false;
  }
  return r;
}

// --- variable-exponent Sobolev bound (catalog id 2.7) ---------------------------

InequalityReport check_2_7(const FunctionFamily& fam, const Grid& g,
                           const ExponentField& p, const SpaceSpec& spec) {
  if (spec.kind() != SpaceKind::s1_var_theta)
    throw Error(errc::invalid_argument, "2.7 needs an s1_var_theta spec");
  if (!(p.grid() == g)) throw Error(errc::invalid_argument, "grid mismatch");
  const ExponentField& theta = spec.theta_field();
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < theta[i] - 1e-12)
      throw Error(errc::condition_violated,
                  "2.7 needs p(x) >= theta(x); fails at node " +
                      std::to_string(i));
  InequalityReport r = make_report("2.7", fam, g);
  const double top = theta.upper();
  bool all_finite = true;
  for (const GridFunction& u : generate_family(fam, g)) {
    const double lhs = pn_modular(u, spec);
    const double sob = sobolev_norm(u, p);
    all_finite = all_finite && std::isfinite(lhs) && std::isfinite(sob);
    r.samples.push_back({lhs, {std::pow(1.0 + sob, top)}, 0.0});
  }
  fit_and_finish(r);
  r.extra = {{"theta_upper", top}, {"all_finite", all_finite}};
  r.pass = r.pass && all_finite;
  return r;
}

// --- metric space axioms ---------------------------------------------------------

MetricAxiomReport check_metric_axioms(const FunctionFamily& fam, const Grid& g,
                                      const SpaceSpec& spec, double tol) {
  if (spec.kind() != SpaceKind::s1_var_theta)
    throw Error(errc::invalid_argument,
                "metric axioms need an s1_var_theta spec");
  const ExponentField& gamma = spec.gamma_field();
  const ExponentField& beta = spec.beta_field();
  const ExponentField psi = psi_exponent(spec.theta_field(), gamma, beta);

  FunctionFamily tripled = fam;
  tripled.count = fam.count * 3;
  const std::vector<GridFunction> members = generate_family(tripled, g);

  MetricAxiomReport r;
  r.seed = fam.seed;
  r.triples = fam.count;
  r.tolerance = tol;
  auto d = [&](const GridFunction& a, const GridFunction& b) {
    return metric_var(a, b, gamma, beta, psi);
  };
  for (int t = 0; t < fam.count; ++t) {
    const GridFunction& u = members[static_cast<std::size_t>(3 * t)];
    const GridFunction& v = members[static_cast<std::size_t>(3 * t + 1)];
    const GridFunction& w = members[static_cast<std::size_t>(3 * t + 2)];
    const double duv = d(u, v), dvu = d(v, u), duu = d(u, u);
    const double duw = d(u, w), dvw = d(v, w);
    const double viol = std::max({-duv, duu, std::abs(duv - dvu),
                                  duw - (duv + dvw)});
    r.worst_violation = std::max(r.worst_violation, viol);
    if (viol > tol) ++r.violations;
  }
  r.pass = r.violations == 0;
  return r;
}

SequenceReport check_homeomorphism_sequences(const GridFunction& u0,
                                             const GridFunction& w,
                                             const SpaceSpec& spec,
                                             const std::vector<int>& ms) {
  if (spec.kind() != SpaceKind::s1_var_theta)
    throw Error(errc::invalid_argument,
                "homeomorphism check needs an s1_var_theta spec");
  const ExponentField& gamma = spec.gamma_field();
  const ExponentField& beta = spec.beta_field();
  const ExponentField psi = psi_exponent(spec.theta_field(), gamma, beta);
  const PhiMap phi{gamma, beta};
  const GridFunction phi_u0 = phi_apply(u0, phi);

  SequenceReport r;
  r.ms = ms;
  for (int m : ms) {
    if (m < 1) throw Error(errc::invalid_argument, "sequence index must be >= 1");
    const GridFunction um = u0 + (1.0 / m) * w;
    r.a.push_back(metric_var(um, u0, gamma, beta, psi));
    const GridFunction dphi = phi_apply(um, phi) - phi_u0;
    double b = luxemburg_norm(dphi, psi).value;
    for (int axis = 0; axis < u0.grid().dim(); ++axis)
      b += luxemburg_norm(diff(dphi, axis), beta).value;
    r.b.push_back(b);
  }
  auto decay = [](const std::vector<double>& s) {
    if (s.empty() || s.front() == 0.0) return 0.0;
    return s.back() / s.front();
  };
  r.decay_a = decay(r.a);
  r.decay_b = decay(r.b);
  r.pass = r.decay_a < 1e-3 && r.decay_b < 1e-3;
  return r;
}

} // namespace pnspace
