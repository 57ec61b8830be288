#ifndef PNSPACE_GRID_HPP
#define PNSPACE_GRID_HPP

#include <array>
#include <cstddef>
#include <iosfwd>
#include <type_traits>
#include <utility>
#include <vector>

#include "pnspace/errors.hpp"

namespace pnspace {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

//! Uniform node lattice on an axis-aligned box in R^n, n = 1 or 2.
//!
//! Nodes along axis a sit at lo_a + k*h_a, k = 0..N_a-1, with
//! h_a = (hi_a - lo_a)/(N_a - 1). Immutable after construction.
class Grid {
public:
  static Grid make(int dim, const std::vector<Interval>& bounds,
                   const std::vector<int>& resolution);

  int dim() const { return dim_; }
  Interval bounds(int axis) const { check_axis(axis); return bounds_[axis]; }
  int extent(int axis) const { check_axis(axis); return extent_[axis]; }
  double spacing(int axis) const { check_axis(axis); return spacing_[axis]; }
  std::size_t node_count() const;
  double coord(int axis, int k) const;
  double measure() const;          //!< volume of the box
  double boundary_measure() const; //!< counting measure (=2) in 1d, perimeter in 2d

  std::size_t index(int i, int j = 0) const; //!< row-major, axis 0 major
  std::array<int, 2> unravel(std::size_t idx) const;
  bool on_boundary(std::size_t idx) const;

  //! Trapezoid quadrature weight of a node (per-axis h * {1/2 at ends, 1 inside}).
  double quad_weight(std::size_t idx) const;

  bool operator==(const Grid&) const = default;

private:
  void check_axis(int axis) const {
    if (axis < 0 || axis >= dim_)
      throw Error(errc::axis_out_of_range, "axis out of range");
  }

  int dim_ = 1;
  std::array<Interval, 2> bounds_{};
  std::array<int, 2> extent_{1, 1};
  std::array<double, 2> spacing_{0.0, 0.0};
};

Grid make_grid(int dim, const std::vector<Interval>& bounds,
               const std::vector<int>& resolution);
Grid make_grid_1d(double a, double b, int n);
Grid make_grid_2d(double ax, double bx, int nx, double ay, double by, int ny);

//! Real values sampled at the nodes of a Grid. Values are finite by invariant.
class GridFunction {
public:
  GridFunction(Grid grid, std::vector<double> values);

  static GridFunction zeros(const Grid& g);
  static GridFunction constant(const Grid& g, double c);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(int i, int j = 0) const { return values_[grid_.index(i, j)]; }
  const std::vector<double>& values() const { return values_; }
  double max_abs() const;

private:
  Grid grid_;
  std::vector<double> values_;
};

//! Sample f(x) (1d) or f(x, y) (2d) at every node.
template <class F>
GridFunction make_grid_function(const Grid& g, F&& f) {
  std::vector<double> v(g.node_count());
  if (g.dim() == 1) {
    for (int i = 0; i < g.extent(0); ++i) {
      if constexpr (std::is_invocable_v<F, double, double>)
        v[static_cast<std::size_t>(i)] = f(g.coord(0, i), 0.0);
      else
        v[static_cast<std::size_t>(i)] = f(g.coord(0, i));
    }
  } else {
    if constexpr (std::is_invocable_v<F, double, double>) {
      for (int i = 0; i < g.extent(0); ++i)
        for (int j = 0; j < g.extent(1); ++j)
          v[g.index(i, j)] = f(g.coord(0, i), g.coord(1, j));
    } else {
      throw Error(errc::invalid_argument, "2d sampling needs f(x, y)");
    }
  }
  return GridFunction(g, std::move(v));
}

template <class F>
GridFunction map(const GridFunction& u, F&& f) {
  std::vector<double> v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) v[i] = f(u[i]);
  return GridFunction(u.grid(), std::move(v));
}

template <class F>
GridFunction zip(const GridFunction& u, const GridFunction& v, F&& f) {
  if (!(u.grid() == v.grid()))
    throw Error(errc::invalid_argument, "grid mismatch");
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = f(u[i], v[i]);
  return GridFunction(u.grid(), std::move(w));
}

GridFunction operator+(const GridFunction& u, const GridFunction& v);
GridFunction operator-(const GridFunction& u, const GridFunction& v);
GridFunction operator*(double c, const GridFunction& u);

//! Exponent field over a grid. The m0 factory enforces the class
//! M0 = {1 <= p^- <= p(x) <= p^+ < inf}; the weight factory admits
//! nonnegative fields (the gamma/alpha slots of the mixed modulars).
//! lower()/upper() are the true nodewise extrema, recomputed on construction.
class ExponentField {
public:
  static ExponentField m0(GridFunction f);
  static ExponentField weight(GridFunction f);
  static ExponentField constant(const Grid& g, double value);

  const Grid& grid() const { return f_.grid(); }
  const GridFunction& function() const { return f_; }
  std::size_t size() const { return f_.size(); }
  double operator[](std::size_t i) const { return f_[i]; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }

private:
  explicit ExponentField(GridFunction f);
  GridFunction f_;
  double lower_ = 0.0;
  double upper_ = 0.0;
};

//! Restriction of a GridFunction to the box boundary. In 1d the two endpoint
//! values; in 2d the four edge arrays (corners appear on both adjacent edges).
struct BoundaryTrace {
  Grid grid;
  std::vector<std::vector<double>> faces;
};

GridFunction diff(const GridFunction& u, int axis);
GridFunction diff2(const GridFunction& u, int axis);

double integrate(const GridFunction& f);

//! Trapezoid sum of w_i * node_term(i) over all nodes.
template <class F>
double integrate(const Grid& g, F&& node_term) {
  double acc = 0.0;
  const std::size_t n = g.node_count();
  for (std::size_t i = 0; i < n; ++i) acc += g.quad_weight(i) * node_term(i);
  return acc;
}

BoundaryTrace boundary_trace(const GridFunction& u);
double integrate_boundary(const BoundaryTrace& t);

GridFunction enforce_vanishing_boundary(const GridFunction& u);

//! CSV with header row `x[,y],value`, row-major over nodes, 17 significant
//! digits. write/read round-trips bit-exactly for finite doubles.
void write_csv(const GridFunction& u, std::ostream& os);
GridFunction read_csv(std::istream& is);

} // namespace pnspace

#endif
