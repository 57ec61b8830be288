#include "pnspace/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace pnspace {

const char* errc_name(errc code) {
  switch (code) {
    case errc::invalid_domain: return "InvalidDomain";
    case errc::axis_out_of_range: return "AxisOutOfRange";
    case errc::parse_error: return "ParseError";
    case errc::eval_error: return "EvalError";
    case errc::unsupported_order: return "UnsupportedOrder";
    case errc::no_convergence: return "NoConvergence";
    case errc::infeasible: return "Infeasible";
    case errc::hypothesis_violated: return "HypothesisViolated";
    case errc::condition_violated: return "ConditionViolated";
    case errc::conjugacy_violated: return "ConjugacyViolated";
    case errc::not_admissible: return "NotAdmissible";
    case errc::fit_ambiguous: return "FitAmbiguous";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::io_error: return "IoError";
  }
  return "Error";
}

Grid Grid::make(int dim, const std::vector<Interval>& bounds,
                const std::vector<int>& resolution) {
  if (dim != 1 && dim != 2)
    throw Error(errc::invalid_domain, "grid dimension must be 1 or 2");
  if (bounds.size() != static_cast<std::size_t>(dim) ||
      resolution.size() != static_cast<std::size_t>(dim))
    throw Error(errc::invalid_domain, "bounds/resolution size must match dim");
  Grid g;
  g.dim_ = dim;
  for (int a = 0; a < dim; ++a) {
    const Interval b = bounds[static_cast<std::size_t>(a)];
    const int n = resolution[static_cast<std::size_t>(a)];
    if (!(b.lo < b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi))
      throw Error(errc::invalid_domain, "interval must satisfy lo < hi");
    if (n < 3)
      throw Error(errc::invalid_domain, "resolution must be >= 3 per axis");
    g.bounds_[a] = b;
    g.extent_[a] = n;
    g.spacing_[a] = (b.hi - b.lo) / (n - 1);
  }
  return g;
}

std::size_t Grid::node_count() const {
  std::size_t n = static_cast<std::size_t>(extent_[0]);
  if (dim_ == 2) n *= static_cast<std::size_t>(extent_[1]);
  return n;
}

double Grid::coord(int axis, int k) const {
  check_axis(axis);
  if (k == extent_[axis] - 1) return bounds_[axis].hi;
  return bounds_[axis].lo + k * spacing_[axis];
}

double Grid::measure() const {
  double m = bounds_[0].length();
  if (dim_ == 2) m *= bounds_[1].length();
  return m;
}

double Grid::boundary_measure() const {
  if (dim_ == 1) return 2.0;
  return 2.0 * (bounds_[0].length() + bounds_[1].length());
}

std::size_t Grid::index(int i, int j) const {
  if (dim_ == 1) return static_cast<std::size_t>(i);
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(extent_[1]) +
         static_cast<std::size_t>(j);
}

std::array<int, 2> Grid::unravel(std::size_t idx) const {
  if (dim_ == 1) return {static_cast<int>(idx), 0};
  const int ny = extent_[1];
  return {static_cast<int>(idx / static_cast<std::size_t>(ny)),
          static_cast<int>(idx % static_cast<std::size_t>(ny))};
}

bool Grid::on_boundary(std::size_t idx) const {
  const auto ij = unravel(idx);
  if (ij[0] == 0 || ij[0] == extent_[0] - 1) return true;
  if (dim_ == 2 && (ij[1] == 0 || ij[1] == extent_[1] - 1)) return true;
  return false;
}

double Grid::quad_weight(std::size_t idx) const {
  const auto ij = unravel(idx);
  double w = spacing_[0] * ((ij[0] == 0 || ij[0] == extent_[0] - 1) ? 0.5 : 1.0);
  if (dim_ == 2)
    w *= spacing_[1] * ((ij[1] == 0 || ij[1] == extent_[1] - 1) ? 0.5 : 1.0);
  return w;
}

Grid make_grid(int dim, const std::vector<Interval>& bounds,
               const std::vector<int>& resolution) {
  return Grid::make(dim, bounds, resolution);
}

Grid make_grid_1d(double a, double b, int n) {
  return Grid::make(1, {Interval{a, b}}, {n});
}

Grid make_grid_2d(double ax, double bx, int nx, double ay, double by, int ny) {
  return Grid::make(2, {Interval{ax, bx}, Interval{ay, by}}, {nx, ny});
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.node_count())
    throw Error(errc::invalid_argument, "value array does not match node count");
  for (double v : values_)
    if (!std::isfinite(v))
      throw Error(errc::invalid_argument, "grid function values must be finite");
}

GridFunction GridFunction::zeros(const Grid& g) {
  return GridFunction(g, std::vector<double>(g.node_count(), 0.0));
}

GridFunction GridFunction::constant(const Grid& g, double c) {
  return GridFunction(g, std::vector<double>(g.node_count(), c));
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction operator+(const GridFunction& u, const GridFunction& v) {
  return zip(u, v, [](double a, double b) { return a + b; });
}

GridFunction operator-(const GridFunction& u, const GridFunction& v) {
  return zip(u, v, [](double a, double b) { return a - b; });
}

GridFunction operator*(double c, const GridFunction& u) {
  return map(u, [c](double a) { return c * a; });
}

ExponentField::ExponentField(GridFunction f) : f_(std::move(f)) {
  lower_ = f_[0];
  upper_ = f_[0];
  for (std::size_t i = 1; i < f_.size(); ++i) {
    lower_ = std::min(lower_, f_[i]);
    upper_ = std::max(upper_, f_[i]);
  }
}

ExponentField ExponentField::m0(GridFunction f) {
  ExponentField e{std::move(f)};
  if (e.lower_ < 1.0)
    throw Error(errc::invalid_argument,
                "exponent field must satisfy p(x) >= 1 everywhere");
  return e;
}

ExponentField ExponentField::weight(GridFunction f) {
  ExponentField e{std::move(f)};
  if (e.lower_ < 0.0)
    throw Error(errc::invalid_argument,
                "weight exponent field must be nonnegative");
  return e;
}

ExponentField ExponentField::constant(const Grid& g, double value) {
  if (value >= 1.0) return m0(GridFunction::constant(g, value));
  return weight(GridFunction::constant(g, value));
}

namespace {

// Second-order stencils along one grid line, written in difference form so
// constants are annihilated exactly. Boundary rows use one-sided stencils;
// the 3-point second-derivative fallback (N == 3) is exact on quadratics,
// like the interior stencil.
template <class At>
void line_diff1(At at, double* out, std::size_t start, std::size_t stride,
                int count, double h) {
  // -3 a0 + 4 a1 - a2 == 4 (a1 - a0) - (a2 - a0)
  out[start] = (4.0 * (at(1) - at(0)) - (at(2) - at(0))) / (2.0 * h);
  for (int k = 1; k + 1 < count; ++k)
    out[start + static_cast<std::size_t>(k) * stride] =
        (at(k + 1) - at(k - 1)) / (2.0 * h);
  const int e = count - 1;
  out[start + static_cast<std::size_t>(e) * stride] =
      (4.0 * (at(e) - at(e - 1)) - (at(e) - at(e - 2))) / (2.0 * h);
}

template <class At>
void line_diff2(At at, double* out, std::size_t start, std::size_t stride,
                int count, double h) {
  const double h2 = h * h;
  const int e = count - 1;
  if (count >= 4) {
    // 2 a0 - 5 a1 + 4 a2 - a3 in consecutive differences
    out[start] = (-2.0 * (at(1) - at(0)) + 3.0 * (at(2) - at(1)) -
                  (at(3) - at(2))) / h2;
    out[start + static_cast<std::size_t>(e) * stride] =
        (-2.0 * (at(e - 1) - at(e)) + 3.0 * (at(e - 2) - at(e - 1)) -
         (at(e - 3) - at(e - 2))) / h2;
  } else {
    out[start] = ((at(2) - at(1)) - (at(1) - at(0))) / h2;
    out[start + static_cast<std::size_t>(e) * stride] = out[start];
  }
  for (int k = 1; k + 1 < count; ++k)
    out[start + static_cast<std::size_t>(k) * stride] =
        ((at(k + 1) - at(k)) - (at(k) - at(k - 1))) / h2;
}

template <int Order>
GridFunction apply_stencil(const GridFunction& u, int axis) {
  const Grid& g = u.grid();
  if (axis < 0 || axis >= g.dim())
    throw Error(errc::axis_out_of_range, "derivative axis out of range");
  const double h = g.spacing(axis);
  std::vector<double> out(u.size());
  const auto& v = u.values();
  if (g.dim() == 1) {
    auto at = [&](int k) { return v[static_cast<std::size_t>(k)]; };
    if constexpr (Order == 1)
      line_diff1(at, out.data(), 0, 1, g.extent(0), h);
    else
      line_diff2(at, out.data(), 0, 1, g.extent(0), h);
  } else {
    const int nx = g.extent(0), ny = g.extent(1);
    if (axis == 0) {
      for (int j = 0; j < ny; ++j) {
        const std::size_t start = g.index(0, j);
        const std::size_t stride = static_cast<std::size_t>(ny);
        auto at = [&](int k) { return v[start + static_cast<std::size_t>(k) * stride]; };
        if constexpr (Order == 1) line_diff1(at, out.data(), start, stride, nx, h);
        else line_diff2(at, out.data(), start, stride, nx, h);
      }
    } else {
      for (int i = 0; i < nx; ++i) {
        const std::size_t start = g.index(i, 0);
        auto at = [&](int k) { return v[start + static_cast<std::size_t>(k)]; };
        if constexpr (Order == 1) line_diff1(at, out.data(), start, 1, ny, h);
        else line_diff2(at, out.data(), start, 1, ny, h);
      }
    }
  }
  return GridFunction(g, std::move(out));
}

} // namespace

GridFunction diff(const GridFunction& u, int axis) {
  return apply_stencil<1>(u, axis);
}

GridFunction diff2(const GridFunction& u, int axis) {
  return apply_stencil<2>(u, axis);
}

double integrate(const GridFunction& f) {
  return integrate(f.grid(), [&](std::size_t i) { return f[i]; });
}

BoundaryTrace boundary_trace(const GridFunction& u) {
  const Grid& g = u.grid();
  BoundaryTrace t;
  t.grid = g;
  if (g.dim() == 1) {
    t.faces.push_back({u.at(0)});
    t.faces.push_back({u.at(g.extent(0) - 1)});
    return t;
  }
  const int nx = g.extent(0), ny = g.extent(1);
  std::vector<double> xlo(static_cast<std::size_t>(ny)), xhi(static_cast<std::size_t>(ny));
  std::vector<double> ylo(static_cast<std::size_t>(nx)), yhi(static_cast<std::size_t>(nx));
  for (int j = 0; j < ny; ++j) {
    xlo[static_cast<std::size_t>(j)] = u.at(0, j);
    xhi[static_cast<std::size_t>(j)] = u.at(nx - 1, j);
  }
  for (int i = 0; i < nx; ++i) {
    ylo[static_cast<std::size_t>(i)] = u.at(i, 0);
    yhi[static_cast<std::size_t>(i)] = u.at(i, ny - 1);
  }
  t.faces = {std::move(xlo), std::move(xhi), std::move(ylo), std::move(yhi)};
  return t;
}

double integrate_boundary(const BoundaryTrace& t) {
  const Grid& g = t.grid;
  if (g.dim() == 1) return t.faces[0][0] + t.faces[1][0];
  // trapezoid along each edge; each corner carries h/2 from both its edges
  auto edge = [](const std::vector<double>& f, double h) {
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t k = 1; k + 1 < f.size(); ++k) s += f[k];
    return s * h;
  };
  return edge(t.faces[0], g.spacing(1)) + edge(t.faces[1], g.spacing(1)) +
         edge(t.faces[2], g.spacing(0)) + edge(t.faces[3], g.spacing(0));
}

GridFunction enforce_vanishing_boundary(const GridFunction& u) {
  std::vector<double> v = u.values();
  const Grid& g = u.grid();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (g.on_boundary(i)) v[i] = 0.0;
  return GridFunction(g, std::move(v));
}

namespace {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw Error(errc::io_error, "trailing junk in CSV number");
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(errc::io_error, "malformed CSV number: " + s);
  }
}

} // namespace

void write_csv(const GridFunction& u, std::ostream& os) {
  const Grid& g = u.grid();
  if (g.dim() == 1) {
    os << "x,value\n";
    for (int i = 0; i < g.extent(0); ++i)
      os << format_g17(g.coord(0, i)) << ',' << format_g17(u.at(i)) << '\n';
    return;
  }
  os << "x,y,value\n";
  for (int i = 0; i < g.extent(0); ++i)
    for (int j = 0; j < g.extent(1); ++j)
      os << format_g17(g.coord(0, i)) << ',' << format_g17(g.coord(1, j))
         << ',' << format_g17(u.at(i, j)) << '\n';
}

GridFunction read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(errc::io_error, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  int dim = 0;
  if (line == "x,value") dim = 1;
  else if (line == "x,y,value") dim = 2;
  else throw Error(errc::io_error, "unrecognised CSV header: " + line);

  std::vector<std::array<double, 3>> rows;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<double, 3> row{0.0, 0.0, 0.0};
    std::stringstream ss(line);
    std::string cell;
    for (int c = 0; c < dim + 1; ++c) {
      if (!std::getline(ss, cell, ','))
        throw Error(errc::io_error, "short CSV row: " + line);
      row[static_cast<std::size_t>(c)] = parse_double(cell);
    }
    rows.push_back(row);
  }
  if (rows.size() < 3) throw Error(errc::io_error, "CSV has fewer than 3 nodes");

  if (dim == 1) {
    const int n = static_cast<int>(rows.size());
    Grid g = make_grid_1d(rows.front()[0], rows.back()[0], n);
    std::vector<double> v(rows.size());
    for (int i = 0; i < n; ++i) {
      if (rows[static_cast<std::size_t>(i)][0] != g.coord(0, i))
        throw Error(errc::io_error, "CSV nodes are not a uniform lattice");
      v[static_cast<std::size_t>(i)] = rows[static_cast<std::size_t>(i)][1];
    }
    return GridFunction(g, std::move(v));
  }

  // axis-0-major rows: the y of the first row repeats every ny rows
  std::size_t ny = 1;
  while (ny < rows.size() && rows[ny][0] == rows[0][0]) ++ny;
  if (ny < 3 || rows.size() % ny != 0)
    throw Error(errc::io_error, "CSV rows do not form a 2d lattice");
  const std::size_t nx = rows.size() / ny;
  if (nx < 3) throw Error(errc::io_error, "CSV rows do not form a 2d lattice");
  Grid g = make_grid_2d(rows.front()[0], rows.back()[0], static_cast<int>(nx),
                        rows.front()[1], rows[ny - 1][1], static_cast<int>(ny));
  std::vector<double> v(rows.size());
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      const auto& row = rows[i * ny + j];
      if (row[0] != g.coord(0, static_cast<int>(i)) ||
          row[1] != g.coord(1, static_cast<int>(j)))
        throw Error(errc::io_error, "CSV nodes are not a uniform lattice");
      v[g.index(static_cast<int>(i), static_cast<int>(j))] = row[2];
    }
  return GridFunction(g, std::move(v));
}

} // namespace pnspace
