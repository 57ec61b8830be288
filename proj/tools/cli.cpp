#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pnspace/studies.hpp"
#include "pnspace/verify.hpp"

namespace pnspace::cli {

namespace {

using nlohmann::json;

// ---- option helpers -----------------------------------------------------------

std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw Error(errc::invalid_argument, "bad number in " + what + ": " + cell);
    }
  }
  if (out.empty()) throw Error(errc::invalid_argument, what + " is empty");
  return out;
}

Grid make_grid_from_opts(const std::string& domain, const std::string& nodes) {
  const std::vector<double> b = parse_number_list(domain, "--domain");
  std::vector<int> n;
  for (double v : parse_number_list(nodes, "node counts"))
    n.push_back(static_cast<int>(v));
  if (b.size() == 2) {
    if (n.size() != 1)
      throw Error(errc::invalid_argument, "1d domain needs one node count");
    return make_grid_1d(b[0], b[1], n[0]);
  }
  if (b.size() == 4) {
    if (n.size() == 1) n.push_back(n[0]);
    if (n.size() != 2)
      throw Error(errc::invalid_argument, "2d domain needs two node counts");
    return make_grid_2d(b[0], b[1], n[0], b[2], b[3], n[1]);
  }
  throw Error(errc::invalid_argument,
              "--domain must be a,b (1d) or ax,bx,ay,by (2d)");
}

double scalar_from_expr(const std::string& text, const std::string& what) {
  const expr::Expr e = expr::Expr::parse(text);
  if (e.arity() != 0)
    throw Error(errc::invalid_argument, what + " must be a constant expression");
  return e.eval(0.0);
}

ExponentField field_m0(const std::string& text, const Grid& g) {
  return ExponentField::m0(expr::Expr::parse(text).sample(g));
}

ExponentField field_weight(const std::string& text, const Grid& g) {
  return ExponentField::weight(expr::Expr::parse(text).sample(g));
}

FunctionFamily parse_family(const std::string& spec) {
  FunctionFamily fam;
  std::stringstream ss(spec);
  std::string part;
  if (!std::getline(ss, part, ':'))
    throw Error(errc::invalid_argument, "empty family spec");
  if (part == "trig") fam.kind = FunctionFamily::Kind::trig_bumps;
  else if (part == "poly") fam.kind = FunctionFamily::Kind::polynomial;
  else if (part == "bumps") fam.kind = FunctionFamily::Kind::bump_products;
  else
    throw Error(errc::invalid_argument,
                "family kind must be trig, poly or bumps: " + part);
  while (std::getline(ss, part, ':')) {
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw Error(errc::invalid_argument, "family option needs key=value: " + part);
    const std::string key = part.substr(0, eq);
    const std::string val = part.substr(eq + 1);
    try {
      if (key == "seed") fam.seed = std::stoull(val);
      else if (key == "count") fam.count = std::stoi(val);
      else if (key == "amp_lo") fam.amp_lo = std::stod(val);
      else if (key == "amp_hi") fam.amp_hi = std::stod(val);
      else if (key == "vanishing") fam.vanishing = (val == "1" || val == "true");
      else
        throw Error(errc::invalid_argument, "unknown family option: " + key);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error(errc::invalid_argument, "bad family value: " + part);
    }
  }
  return fam;
}

std::vector<double> parse_cutoffs(const std::string& text) {
  // either "2^-4..2^-14" (dyadic range) or an explicit comma list
  const std::size_t dots = text.find("..");
  if (text.rfind("2^-", 0) == 0 && dots != std::string::npos) {
    const int from = std::stoi(text.substr(3, dots - 3));
    const std::string rest = text.substr(dots + 2);
    if (rest.rfind("2^-", 0) != 0)
      throw Error(errc::invalid_argument, "bad cutoff range: " + text);
    const int to = std::stoi(rest.substr(3));
    if (to <= from) throw Error(errc::invalid_argument, "bad cutoff range");
    std::vector<double> c;
    for (int k = from; k <= to; ++k) c.push_back(std::ldexp(1.0, -k));
    return c;
  }
  return parse_number_list(text, "--cutoffs");
}

// Flat TOML subset for run configs: `key = value` lines, # comments,
// quoted strings, bare numbers and booleans. Values become CLI arguments
// inserted ahead of the user's flags, so explicit flags win.
std::vector<std::pair<std::string, std::string>> read_flat_toml(
    const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(errc::io_error, "cannot open config file: " + path);
  std::vector<std::pair<std::string, std::string>> items;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  };
  while (std::getline(f, line)) {
    ++lineno;
    // strip comments outside quotes
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      else if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[')
      throw Error(errc::invalid_argument,
                  "config must be flat key = value pairs (line " +
                      std::to_string(lineno) + ")");
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(errc::invalid_argument,
                  "bad config line " + std::to_string(lineno) + ": " + t);
    const std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (val.size() >= 2 && val.front() == '"' && val.back() == '"')
      val = val.substr(1, val.size() - 2);
    if (key.empty())
      throw Error(errc::invalid_argument,
                  "empty key in config line " + std::to_string(lineno));
    items.emplace_back(key, val);
  }
  return items;
}

std::vector<std::string> apply_config_file(const std::vector<std::string>& args) {
  std::string path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size())
        throw Error(errc::invalid_argument, "--config needs a file path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty() || rest.empty()) return rest.empty() ? args : rest;
  std::vector<std::string> out;
  out.push_back(rest[0]); // the subcommand
  for (const auto& [key, val] : read_flat_toml(path)) {
    if (key == "config") continue;
    if (val == "true") {
      out.push_back("--" + key);
    } else if (val == "false") {
      continue;
    } else {
      out.push_back("--" + key);
      out.push_back(val);
    }
  }
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case errc::no_convergence:
    case errc::infeasible:
    case errc::fit_ambiguous:
      return 2;
    case errc::hypothesis_violated:
    case errc::condition_violated:
    case errc::conjugacy_violated:
    case errc::not_admissible:
      return 3;
    default:
      return 1;
  }
}

void emit(std::ostream& out, const std::string& command, const json& config,
          const json& result) {
  json j;
  j["schema"] = 1;
  j["command"] = command;
  j["config"] = config;
  j["result"] = result;
  out << j.dump(2) << "\n";
}

// ---- norm subcommand ------------------------------------------------------------

struct NormOpts {
  std::string kind = "luxemburg";
  std::string u, v;
  std::string p, gamma, beta, theta;
  std::string alpha;
  std::string domain = "0,1";
  std::string nodes = "1025";
  std::string dump_u;
  double tol = 1e-10;
  double eps0 = 1e-3;

  json to_json() const {
    return {{"kind", kind},     {"u", u},         {"v", v},
            {"p", p},           {"gamma", gamma}, {"beta", beta},
            {"theta", theta},   {"alpha", alpha}, {"domain", domain},
            {"n", nodes},       {"tol", tol},     {"eps0", eps0},
            {"dump_u", dump_u}};
  }
};

json norm_result_json(const NormResult& r) {
  return {{"value", r.value},
          {"iterations", r.iterations},
          {"bracket", {r.bracket_lo, r.bracket_hi}},
          {"residual", r.residual}};
}

void require_opt(const std::string& value, const std::string& name) {
  if (value.empty())
    throw Error(errc::invalid_argument, "missing required option " + name);
}

int run_norm(const NormOpts& o, std::ostream& out) {
  const Grid g = make_grid_from_opts(o.domain, o.nodes);
  require_opt(o.u, "--u");
  const GridFunction u = expr::Expr::parse(o.u).sample(g);
  if (!o.dump_u.empty()) {
    std::ofstream f(o.dump_u);
    if (!f) throw Error(errc::io_error, "cannot open CSV path: " + o.dump_u);
    write_csv(u, f);
  }
  json result;

  if (o.kind == "luxemburg") {
    require_opt(o.p, "--p");
    result = norm_result_json(luxemburg_norm(u, field_m0(o.p, g), o.tol));
    result["form"] = "luxemburg";
  } else if (o.kind == "pn" || o.kind == "pn_theta") {
    require_opt(o.gamma, "--gamma");
    require_opt(o.beta, "--beta");
    if (o.kind == "pn") {
      const SpaceSpec spec =
          SpaceSpec::s1_var(field_weight(o.gamma, g), field_m0(o.beta, g));
      result = norm_result_json(pn_pseudonorm(u, spec, o.tol));
      result["form"] = "inf";
    } else {
      require_opt(o.theta, "--theta");
      const SpaceSpec spec = SpaceSpec::s1_var_theta(
          field_weight(o.gamma, g), field_m0(o.beta, g), field_m0(o.theta, g),
          o.eps0);
      result = norm_result_json(pn_pseudonorm(u, spec, o.tol));
      result["form"] = "inf";
      result["sum_form_value"] = pn_pseudonorm_sum(u, spec, o.tol);
    }
  } else if (o.kind == "sobolev") {
    require_opt(o.p, "--p");
    result = {{"value", sobolev_norm(u, field_m0(o.p, g), o.tol)}};
  } else if (o.kind == "metric_const") {
    require_opt(o.v, "--v");
    require_opt(o.alpha, "--alpha");
    require_opt(o.beta, "--beta");
    const GridFunction v = expr::Expr::parse(o.v).sample(g);
    result = {{"value", metric_const(u, v, scalar_from_expr(o.alpha, "--alpha"),
                                     scalar_from_expr(o.beta, "--beta"), o.tol)}};
  } else if (o.kind == "metric_var") {
    require_opt(o.v, "--v");
    require_opt(o.gamma, "--gamma");
    require_opt(o.beta, "--beta");
    require_opt(o.theta, "--theta");
    const GridFunction v = expr::Expr::parse(o.v).sample(g);
    const ExponentField gamma = field_weight(o.gamma, g);
    const ExponentField beta = field_m0(o.beta, g);
    const ExponentField theta = field_m0(o.theta, g);
    const ExponentField psi = psi_exponent(theta, gamma, beta);
    result = {{"value", metric_var(u, v, gamma, beta, psi, o.tol)}};
  } else {
    throw Error(errc::invalid_argument, "unknown norm kind: " + o.kind);
  }

  emit(out, "norm", o.to_json(), result);
  return 0;
}

// ---- verify subcommand ------------------------------------------------------------

struct VerifyOpts {
  std::string lemma;
  std::string alpha, beta, alpha1, beta1, beta0;
  std::string p, q, gamma, theta, xi, theta1, zeta;
  std::string u0 = "0", w;
  std::string family = "trig:seed=1:count=100";
  std::string domain = "0,1";
  std::string nodes = "257";
  double eps = 1.0;
  double eps0 = 1e-3;
  double tol = 1e-10;
  int dim_n = 0;
  bool probe = false;

  json to_json() const {
    return {{"lemma", lemma},   {"alpha", alpha},   {"beta", beta},
            {"alpha1", alpha1}, {"beta1", beta1},   {"beta0", beta0},
            {"p", p},           {"q", q},           {"gamma", gamma},
            {"theta", theta},   {"xi", xi},         {"theta1", theta1},
            {"zeta", zeta},     {"u0", u0},         {"w", w},
            {"family", family}, {"domain", domain}, {"nodes", nodes},
            {"eps", eps},       {"eps0", eps0},     {"tol", tol},
            {"n", dim_n},       {"probe", probe}};
  }
};

int run_verify(const VerifyOpts& o, std::ostream& out) {
  require_opt(o.lemma, "--lemma");

  // admissibility-only mode for the embedding theorems
  if ((o.lemma == "3.1" || o.lemma == "3.2") && o.dim_n > 0) {
    require_opt(o.alpha, "--alpha");
    require_opt(o.beta, "--beta");
    require_opt(o.p, "--p");
    const double alpha = scalar_from_expr(o.alpha, "--alpha");
    const double beta = scalar_from_expr(o.beta, "--beta");
    const double p = scalar_from_expr(o.p, "--p");
    const AdmissibilityDecision d =
        o.lemma == "3.1" ? admissible_3_1(alpha, beta, o.dim_n, p)
                         : admissible_3_2(alpha, beta, o.dim_n, p);
    emit(out, "verify", o.to_json(), d.to_json());
    if (!d.admissible)
      throw Error(errc::not_admissible,
                  "p = " + std::to_string(p) + " is outside the case (" +
                      d.case_label + ") range; threshold " +
                      std::to_string(d.threshold));
    return 0;
  }

  const Grid g = make_grid_from_opts(o.domain, o.nodes);
  FunctionFamily fam = parse_family(o.family);
  json result;
  bool pass = true;

  auto scalar = [&](const std::string& v, const char* name) {
    require_opt(v, name);
    return scalar_from_expr(v, name);
  };

  if (o.lemma == "2.1") {
    auto r = check_2_1(fam, g, scalar(o.alpha, "--alpha"),
                       scalar(o.beta, "--beta"));
    result = r.to_json();
    pass = r.pass;
  } else if (o.lemma == "2.2") {
    auto r = check_2_2(fam, g, scalar(o.alpha, "--alpha"),
                       scalar(o.beta, "--beta"), scalar(o.alpha1, "--alpha1"),
                       scalar(o.beta1, "--beta1"));
    result = r.to_json();
    pass = r.pass;
  } else if (o.lemma == "2.3") {
    auto r = check_2_3(fam, g, scalar(o.alpha, "--alpha"),
                       scalar(o.beta0, "--beta0"), scalar(o.beta1, "--beta1"));
    result = r.to_json();
    pass = r.pass;
  } else if (o.lemma == "holder") {
    require_opt(o.p, "--p");
    const ExponentField p = field_m0(o.p, g);
    ExponentField q =
        o.q.empty()
            ? ExponentField::m0(map(p.function(),
                                    [](double v) { return v / (v - 1.0); }))
            : field_m0(o.q, g);
    auto r = check_holder(fam, g, p, q);
    result = r.to_json();
    pass = r.pass;
  } else if (o.lemma == "2.5") {
    json parts = json::object();
    bool any = false;
    if (!o.p.empty()) {
      auto r = check_sandwich_2_5(fam, g, field_m0(o.p, g));
      parts["sigma_p"] = r.to_json();
      pass = pass && r.pass;
      any = true;
    }
    if (!o.gamma.empty() && !o.beta.empty() && !o.theta.empty()) {
      const SpaceSpec spec = SpaceSpec::s1_var_theta(
          field_weight(o.gamma, g), field_m0(o.beta, g), field_m0(o.theta, g),
          o.eps0);
      auto r = check_lambda_sandwich(fam, g, spec);
      parts["lambda_u"] = r.to_json();
      pass = pass && r.pass;
      any = true;
    }
    if (!any)
      throw Error(errc::invalid_argument,
                  "2.5 needs --p and/or --gamma/--beta/--theta");
    result = parts;
  } else if (o.lemma == "4.1") {
    require_opt(o.alpha, "--alpha");
    require_opt(o.beta, "--beta");
    auto r = check_4_1(fam, g, field_weight(o.alpha, g), field_weight(o.beta, g));
    result = r.to_json();
    pass = r.pass;
  } else if (o.lemma == "4.2") {
    require_opt(o.zeta, "--zeta");
    auto r = check_4_2(fam, g, field_m0(o.zeta, g), scalar(o.beta, "--beta"),
                       o.eps);
    result = r.to_json();
    pass = r.pass;
  } else if (o.lemma == "4.3") {
    require_opt(o.xi, "--xi");
    require_opt(o.beta, "--beta");
    require_opt(o.beta1, "--beta1");
    auto r = check_4_3(fam, g, field_m0(o.xi, g), field_m0(o.beta, g),
                       field_weight(o.beta1, g));
    result = r.to_json();
    pass = r.pass;
  } else if (o.lemma == "4.4") {
    require_opt(o.gamma, "--gamma");
    require_opt(o.beta, "--beta");
    require_opt(o.theta, "--theta");
    require_opt(o.xi, "--xi");
    require_opt(o.alpha, "--alpha");
    require_opt(o.theta1, "--theta1");
    auto r = check_4_4(fam, g, field_weight(o.gamma, g), field_m0(o.beta, g),
                       field_m0(o.theta, g), field_weight(o.xi, g),
                       field_m0(o.alpha, g), field_m0(o.theta1, g));
    result = r.to_json();
    pass = r.pass;
  } else if (o.lemma == "3.1" || o.lemma == "3.2") {
    const double alpha = scalar(o.alpha, "--alpha");
    const double beta = scalar(o.beta, "--beta");
    const double p = scalar(o.p, "--p");
    fam.vanishing = true;
    auto r = o.lemma == "3.1" ? check_3_1(fam, g, alpha, beta, p, o.probe)
                              : check_3_2(fam, g, alpha, beta, p, o.probe);
    result = r.to_json();
    pass = r.pass;
  } else if (o.lemma == "2.7") {
    require_opt(o.p, "--p");
    require_opt(o.gamma, "--gamma");
    require_opt(o.beta, "--beta");
    require_opt(o.theta, "--theta");
    const SpaceSpec spec = SpaceSpec::s1_var_theta(
        field_weight(o.gamma, g), field_m0(o.beta, g), field_m0(o.theta, g),
        o.eps0);
    auto r = check_2_7(fam, g, field_m0(o.p, g), spec);
    result = r.to_json();
    pass = r.pass;
  } else if (o.lemma == "metric") {
    require_opt(o.gamma, "--gamma");
    require_opt(o.beta, "--beta");
    require_opt(o.theta, "--theta");
    const SpaceSpec spec = SpaceSpec::s1_var_theta(
        field_weight(o.gamma, g), field_m0(o.beta, g), field_m0(o.theta, g),
        o.eps0);
    auto r = check_metric_axioms(fam, g, spec);
    result = r.to_json();
    pass = r.pass;
  } else if (o.lemma == "homeo") {
    require_opt(o.gamma, "--gamma");
    require_opt(o.beta, "--beta");
    require_opt(o.theta, "--theta");
    require_opt(o.w, "--w");
    const SpaceSpec spec = SpaceSpec::s1_var_theta(
        field_weight(o.gamma, g), field_m0(o.beta, g), field_m0(o.theta, g),
        o.eps0);
    auto r = check_homeomorphism_sequences(expr::Expr::parse(o.u0).sample(g),
                                           expr::Expr::parse(o.w).sample(g),
                                           spec);
    result = r.to_json();
    pass = r.pass;
  } else {
    throw Error(errc::invalid_argument, "unknown lemma id: " + o.lemma);
  }

  emit(out, "verify", o.to_json(), result);
  return pass ? 0 : 2;
}

// ---- study subcommand ------------------------------------------------------------

struct StudyOpts {
  std::string kind;
  std::string u;
  std::string alpha, beta;
  std::string tau, theta;
  std::string space = "s1";
  std::string cutoffs;
  std::string domain = "0,1";
  std::string nodes = "257";
  std::string csv_path;
  double right_end = 1.0;
  int base_density = 4096;

  json to_json() const {
    return {{"kind", kind},         {"u", u},
            {"alpha", alpha},       {"beta", beta},
            {"tau", tau},           {"theta", theta},
            {"space", space},       {"cutoffs", cutoffs},
            {"domain", domain},     {"nodes", nodes},
            {"csv", csv_path},      {"right_end", right_end},
            {"base_density", base_density}};
  }
};

void maybe_write_csv(const RefinementStudy& st, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw Error(errc::io_error, "cannot open CSV path: " + path);
  st.write_csv(f);
}

int run_study(const StudyOpts& o, std::ostream& out) {
  require_opt(o.kind, "--kind");
  json result;
  bool pass = true;

  if (o.kind == "counterexample") {
    require_opt(o.beta, "--beta");
    require_opt(o.tau, "--tau");
    require_opt(o.theta, "--theta");
    const std::vector<double> cs =
        o.cutoffs.empty() ? std::vector<double>{} : parse_cutoffs(o.cutoffs);
    auto r = counterexample_nonlinearity(scalar_from_expr(o.beta, "--beta"),
                                         scalar_from_expr(o.tau, "--tau"),
                                         scalar_from_expr(o.theta, "--theta"),
                                         cs);
    maybe_write_csv(r.sum, o.csv_path);
    result = r.to_json();
    pass = r.pass;
  } else if (o.kind == "refine") {
    require_opt(o.u, "--u");
    require_opt(o.alpha, "--alpha");
    require_opt(o.beta, "--beta");
    const double alpha = scalar_from_expr(o.alpha, "--alpha");
    const double beta = scalar_from_expr(o.beta, "--beta");
    SpaceSpec spec = SpaceSpec::s_m_const(1, alpha, beta, false);
    if (o.space == "s2") spec = SpaceSpec::s_m_const(2, alpha, beta, false);
    else if (o.space == "s2tilde") spec = SpaceSpec::s2_tilde_1d(alpha, beta);
    else if (o.space != "s1")
      throw Error(errc::invalid_argument, "space must be s1, s2 or s2tilde");
    const std::vector<double> cs = parse_cutoffs(
        o.cutoffs.empty() ? std::string("2^-4..2^-14") : o.cutoffs);
    auto r = refine_study(expr::Expr::parse(o.u), spec, cs, o.right_end,
                          o.base_density);
    maybe_write_csv(r, o.csv_path);
    result = r.to_json();
    pass = true; // a refine study reports a classification, it cannot fail
  } else if (o.kind == "identities_1d") {
    require_opt(o.u, "--u");
    require_opt(o.alpha, "--alpha");
    require_opt(o.beta, "--beta");
    const Grid g = make_grid_from_opts(o.domain, o.nodes);
    auto r = check_1d_identities(expr::Expr::parse(o.u),
                                 scalar_from_expr(o.alpha, "--alpha"),
                                 scalar_from_expr(o.beta, "--beta"), g);
    result = r.to_json();
    pass = r.pass;
  } else {
    throw Error(errc::invalid_argument, "unknown study kind: " + o.kind);
  }

  emit(out, "study", o.to_json(), result);
  return pass ? 0 : 2;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"numerical toolkit for nonlinear function-space modulars, "
               "pseudo-norms and inequality verification"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::string config_path; // consumed before parsing, registered for --help

  NormOpts n;
  CLI::App* norm = app.add_subcommand("norm", "evaluate a norm or metric");
  norm->add_option("--config", config_path,
                   "flat TOML config file; flags override its values");
  norm->add_option("--kind", n.kind,
                   "luxemburg|pn|pn_theta|sobolev|metric_const|metric_var");
  norm->add_option("--u", n.u, "expression for u(x[,y])");
  norm->add_option("--v", n.v, "expression for v (metrics)");
  norm->add_option("--p", n.p, "exponent field expression");
  norm->add_option("--gamma", n.gamma, "exponent field expression");
  norm->add_option("--beta", n.beta, "exponent field expression or constant");
  norm->add_option("--theta", n.theta, "exponent field expression");
  norm->add_option("--alpha", n.alpha, "constant exponent (metric_const)");
  norm->add_option("--domain", n.domain, "a,b or ax,bx,ay,by");
  norm->add_option("--n", n.nodes, "nodes per axis, e.g. 1025 or 65,65");
  norm->add_option("--tol", n.tol, "residual tolerance of the infimum solve");
  norm->add_option("--dump-u", n.dump_u, "write the sampled u as CSV here");
  norm->add_option("--eps0", n.eps0, "margin of theta >= gamma+beta+eps0");

  VerifyOpts v;
  CLI::App* verify =
      app.add_subcommand("verify", "check an inequality on a seeded family");
  verify->add_option("--config", config_path,
                   "flat TOML config file; flags override its values");
  verify->add_option("--lemma", v.lemma,
                     "2.1|2.2|2.3|holder|2.5|4.1|4.2|4.3|4.4|3.1|3.2|2.7|"
                     "metric|homeo");
  verify->add_option("--alpha", v.alpha);
  verify->add_option("--beta", v.beta);
  verify->add_option("--alpha1", v.alpha1);
  verify->add_option("--beta1", v.beta1);
  verify->add_option("--beta0", v.beta0);
  verify->add_option("--p", v.p);
  verify->add_option("--q", v.q);
  verify->add_option("--gamma", v.gamma);
  verify->add_option("--theta", v.theta);
  verify->add_option("--xi", v.xi);
  verify->add_option("--theta1", v.theta1);
  verify->add_option("--zeta", v.zeta);
  verify->add_option("--u0", v.u0, "base function (homeo)");
  verify->add_option("--w", v.w, "perturbation (homeo)");
  verify->add_option("--family", v.family,
                     "kind:seed=S:count=C[:amp_lo=..][:amp_hi=..][:vanishing=1]");
  verify->add_option("--domain", v.domain);
  verify->add_option("--nodes", v.nodes, "grid nodes per axis");
  verify->add_option("--eps", v.eps, "epsilon of the log bound (4.2)");
  verify->add_option("--eps0", v.eps0, "margin of theta >= gamma+beta+eps0");
  verify->add_option("--tol", v.tol);
  verify->add_option("--n", v.dim_n,
                     "space dimension for admissibility-only 3.1/3.2 checks");
  verify->add_flag("--probe-inadmissible", v.probe,
                   "fit constants even at inadmissible parameters");

  StudyOpts s;
  CLI::App* study =
      app.add_subcommand("study", "refinement and divergence studies");
  study->add_option("--config", config_path,
                   "flat TOML config file; flags override its values");
  study->add_option("--kind", s.kind, "counterexample|refine|identities_1d");
  study->add_option("--u", s.u, "expression for u(x)");
  study->add_option("--alpha", s.alpha);
  study->add_option("--beta", s.beta);
  study->add_option("--tau", s.tau);
  study->add_option("--theta", s.theta);
  study->add_option("--space", s.space, "s1|s2|s2tilde");
  study->add_option("--cutoffs", s.cutoffs,
                    "2^-4..2^-14 or an explicit comma list");
  study->add_option("--domain", s.domain);
  study->add_option("--nodes", s.nodes);
  study->add_option("--csv", s.csv_path, "write cutoff,value rows here");
  study->add_option("--right-end", s.right_end);
  study->add_option("--base-density", s.base_density, "nodes per unit length");

  std::vector<std::string> merged;
  try {
    merged = apply_config_file(args);
  } catch (const Error& e) {
    err << errc_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  }

  try {
    std::vector<std::string> reversed(merged.rbegin(), merged.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (norm->parsed()) return run_norm(n, out);
    if (verify->parsed()) return run_verify(v, out);
    if (study->parsed()) return run_study(s, out);
    err << "no subcommand given\n";
    return 1;
  } catch (const ParseError& e) {
    err << "ParseError at offset " << e.offset() << ": expected "
        << e.expected() << "\n";
    return 1;
  } catch (const Error& e) {
    err << errc_name(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace pnspace::cli
