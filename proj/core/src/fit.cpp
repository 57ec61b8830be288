#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "pnspace/verify.hpp"

namespace pnspace {

namespace {

// Gaussian elimination with partial pivoting for m <= 3. Returns false when
// the active set is (numerically) singular.
bool solve_small(int m, std::array<std::array<double, 4>, 3>& a,
                 std::array<double, 3>& x) {
  for (int col = 0; col < m; ++col) {
    int piv = col;
    for (int r = col + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-14) return false;
    std::swap(a[piv], a[col]);
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  for (int r = 0; r < m; ++r) x[r] = a[r][m] / a[r][r];
  return true;
}

struct Candidate {
  std::array<double, 3> c{0.0, 0.0, 0.0};
  double sum = std::numeric_limits<double>::infinity();
  bool valid = false;
};

bool lex_less(const std::array<double, 3>& a, const std::array<double, 3>& b,
              int m) {
  for (int j = 0; j < m; ++j) {
    if (a[j] < b[j] - 1e-15) return true;
    if (a[j] > b[j] + 1e-15) return false;
  }
  return false;
}

} // namespace

std::vector<double> fit_constants(
    const std::vector<double>& lhs,
    const std::vector<std::vector<double>>& terms) {
  const std::size_t rows = lhs.size();
  if (terms.size() != rows)
    throw Error(errc::invalid_argument, "lhs/terms row count mismatch");
  if (rows == 0) throw Error(errc::invalid_argument, "no constraints");
  const int m = static_cast<int>(terms[0].size());
  if (m < 1 || m > 3)
    throw Error(errc::invalid_argument, "fit_constants supports 1 to 3 constants");

  for (std::size_t i = 0; i < rows; ++i) {
    if (!std::isfinite(lhs[i]))
      throw Error(errc::invalid_argument, "non-finite lhs entry");
    if (terms[i].size() != static_cast<std::size_t>(m))
      throw Error(errc::invalid_argument, "ragged terms matrix");
    for (double t : terms[i]) {
      if (!std::isfinite(t) || t < 0.0)
        throw Error(errc::invalid_argument,
                    "terms must be finite and nonnegative");
    }
  }

  // rows with lhs <= 0 are satisfied by any c >= 0
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < rows; ++i) {
    if (lhs[i] <= 0.0) continue;
    bool all_zero = true;
    for (double t : terms[i]) all_zero = all_zero && t == 0.0;
    if (all_zero)
      throw Error(errc::infeasible,
                  "row " + std::to_string(i) +
                      " has positive lhs and all-zero terms");
    active.push_back(i);
  }
  if (active.empty()) return std::vector<double>(static_cast<std::size_t>(m), 0.0);

  // drop rows implied by another row (componentwise smaller terms, larger lhs)
  std::vector<std::size_t> kept;
  for (std::size_t ii = 0; ii < active.size(); ++ii) {
    const std::size_t i = active[ii];
    bool dominated = false;
    for (std::size_t kk = 0; kk < active.size() && !dominated; ++kk) {
      if (kk == ii) continue;
      const std::size_t k = active[kk];
      bool leq = lhs[k] >= lhs[i];
      bool equal = lhs[k] == lhs[i];
      for (int j = 0; j < m && leq; ++j) {
        leq = terms[k][static_cast<std::size_t>(j)] <=
              terms[i][static_cast<std::size_t>(j)];
        equal = equal && terms[k][static_cast<std::size_t>(j)] ==
                             terms[i][static_cast<std::size_t>(j)];
      }
      if (leq && (!equal || kk < ii)) dominated = true;
    }
    if (!dominated) kept.push_back(i);
  }

  auto feasible = [&](const std::array<double, 3>& c) {
    for (int j = 0; j < m; ++j)
      if (c[static_cast<std::size_t>(j)] < -1e-12) return false;
    for (std::size_t i : kept) {
      double dot = 0.0, scale = std::abs(lhs[i]);
      for (int j = 0; j < m; ++j) {
        const double t = terms[i][static_cast<std::size_t>(j)] *
                         c[static_cast<std::size_t>(j)];
        dot += t;
        scale += std::abs(t);
      }
      if (dot - lhs[i] < -1e-9 * std::max(1.0, scale)) return false;
    }
    return true;
  };

  // each vertex activates m constraints drawn from the rows and the
  // c_j = 0 planes; enumerate all combinations
  const int n_rows = static_cast<int>(kept.size());
  const int n_cons = n_rows + m;
  auto fill_constraint = [&](int which, std::array<double, 4>& out) {
    if (which < n_rows) {
      const std::size_t i = kept[static_cast<std::size_t>(which)];
      for (int j = 0; j < m; ++j)
        out[static_cast<std::size_t>(j)] = terms[i][static_cast<std::size_t>(j)];
      out[static_cast<std::size_t>(m)] = lhs[i];
    } else {
      out = {0.0, 0.0, 0.0, 0.0};
      out[static_cast<std::size_t>(which - n_rows)] = 1.0;
      out[static_cast<std::size_t>(m)] = 0.0;
    }
  };

  Candidate best;
  std::array<int, 3> pick{0, 0, 0};
  auto consider = [&]() {
    std::array<std::array<double, 4>, 3> a{};
    for (int r = 0; r < m; ++r) fill_constraint(pick[static_cast<std::size_t>(r)], a[static_cast<std::size_t>(r)]);
    std::array<double, 3> c{0.0, 0.0, 0.0};
    if (!solve_small(m, a, c)) return;
    for (int j = 0; j < m; ++j)
      if (!std::isfinite(c[static_cast<std::size_t>(j)])) return;
    if (!feasible(c)) return;
    double sum = 0.0;
    for (int j = 0; j < m; ++j) sum += c[static_cast<std::size_t>(j)];
    const double tie = 1e-12 * (1.0 + std::abs(best.sum));
    if (!best.valid || sum < best.sum - tie ||
        (sum <= best.sum + tie && lex_less(c, best.c, m))) {
      best.c = c;
      best.sum = sum;
      best.valid = true;
    }
  };

  if (m == 1) {
    for (int i = 0; i < n_cons; ++i) {
      pick[0] = i;
      consider();
    }
  } else if (m == 2) {
    for (int i = 0; i < n_cons; ++i)
      for (int j = i + 1; j < n_cons; ++j) {
        pick = {i, j, 0};
        consider();
      }
  } else {
    for (int i = 0; i < n_cons; ++i)
      for (int j = i + 1; j < n_cons; ++j)
        for (int k = j + 1; k < n_cons; ++k) {
          pick = {i, j, k};
          consider();
        }
  }

  if (!best.valid)
    throw Error(errc::infeasible, "no feasible vertex found");

  std::vector<double> c(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    c[static_cast<std::size_t>(j)] = std::max(0.0, best.c[static_cast<std::size_t>(j)]);

  // nudge upward until every margin re-evaluates to >= -1e-9
  for (int attempt = 0; attempt < 100; ++attempt) {
    double worst = 0.0;
    for (std::size_t i : active) {
      double dot = 0.0;
      for (int j = 0; j < m; ++j)
        dot += terms[i][static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(j)];
      worst = std::min(worst, dot - lhs[i]);
    }
    if (worst >= -1e-9) break;
    for (double& v : c) v = v * (1.0 + 1e-9) + 1e-15;
  }
  return c;
}

} // namespace pnspace
