#include <cmath>

#include "pnspace/verify.hpp"

namespace pnspace {

namespace {

constexpr double kPi = 3.14159265358979323846;

// splitmix64; the per-member stream depends only on (seed, member index)
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed, std::uint64_t stream) {
    state = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
    next();
    next();
  }

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

constexpr int kCanonicalShapes = 6;
constexpr int kCanonicalMembers = 2 * kCanonicalShapes;

// The first members of every trig family are canonical envelope shapes,
// each pinned at both ends of the amplitude range (constants, the pure
// lowest mode, a monotone ramp, blends, the highest mode). Fitted constants
// are driven by the extremes of integral ratios over the family, and those
// extremes sit at corners of the shape/amplitude box; pinning the corners
// keeps fits stable when a family is enlarged.
GridFunction trig_member(Rng& rng, const Grid& g, bool vanishing, int index) {
  const int modes = 3;
  std::vector<double> as(static_cast<std::size_t>(modes * modes), 0.0),
      bs(static_cast<std::size_t>(modes * modes), 0.0);
  for (auto& a : as) a = rng.uniform(-1.0, 1.0);
  for (auto& b : bs) b = rng.uniform(-1.0, 1.0);
  double offset = rng.uniform(-1.0, 1.0);
  if (index < kCanonicalMembers) {
    std::fill(as.begin(), as.end(), 0.0);
    std::fill(bs.begin(), bs.end(), 0.0);
    offset = 0.0;
    switch (index % kCanonicalShapes) {
      case 0:
        if (vanishing) as[0] = 1.0;
        else offset = 1.0;
        break;
      case 1:
        as[0] = 1.0;
        break;
      case 2:
        // monotone ramp (cos of the first mode); vanishing: skewed bubble
        if (vanishing) {
          as[0] = 1.0;
          as[1] = 0.5;
        } else {
          bs[0] = 1.0;
        }
        break;
      case 3:
        as[0] = 0.3;
        if (vanishing) as[1] = -0.4;
        else offset = 1.4;
        break;
      case 4:
        as[2] = 1.0; // highest mode
        break;
      default:
        as[0] = 0.6;
        as[1] = 0.6;
        break;
    }
  }
  auto value1d = [&](double s) {
    double v = vanishing ? 0.0 : 0.5 * offset;
    for (int j = 1; j <= modes; ++j) {
      v += as[static_cast<std::size_t>(j - 1)] * std::sin(j * kPi * s);
      if (!vanishing)
        v += bs[static_cast<std::size_t>(j - 1)] * std::cos(j * kPi * s);
    }
    return v;
  };
  if (g.dim() == 1)
    return make_grid_function(g, [&](double x) {
      return value1d((x - g.bounds(0).lo) / g.bounds(0).length());
    });
  return make_grid_function(g, [&](double x, double y) {
    const double s = (x - g.bounds(0).lo) / g.bounds(0).length();
    const double t = (y - g.bounds(1).lo) / g.bounds(1).length();
    double v = vanishing ? 0.0 : 0.5 * offset;
    for (int j = 1; j <= modes; ++j)
      for (int k = 1; k <= modes; ++k) {
        const std::size_t idx = static_cast<std::size_t>((j - 1) * modes + k - 1);
        v += as[idx] * std::sin(j * kPi * s) * std::sin(k * kPi * t);
        if (!vanishing)
          v += bs[idx] * std::cos(j * kPi * s) * std::cos(k * kPi * t);
      }
    return v;
  });
}

GridFunction poly_member(Rng& rng, const Grid& g, bool vanishing) {
  const int deg = 4;
  std::vector<double> cx(static_cast<std::size_t>(deg + 1)),
      cy(static_cast<std::size_t>(deg + 1));
  for (auto& c : cx) c = rng.uniform(-1.0, 1.0);
  for (auto& c : cy) c = rng.uniform(-1.0, 1.0);
  auto poly = [&](const std::vector<double>& c, double s) {
    double v = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) v = v * s + c[j];
    return v;
  };
  auto bubble = [&](double s) { return 4.0 * s * (1.0 - s); };
  if (g.dim() == 1)
    return make_grid_function(g, [&](double x) {
      const double s = (x - g.bounds(0).lo) / g.bounds(0).length();
      return poly(cx, s) * (vanishing ? bubble(s) : 1.0);
    });
  return make_grid_function(g, [&](double x, double y) {
    const double s = (x - g.bounds(0).lo) / g.bounds(0).length();
    const double t = (y - g.bounds(1).lo) / g.bounds(1).length();
    double v = poly(cx, s) + poly(cy, t) + 0.5 * poly(cx, t) * poly(cy, s);
    if (vanishing) v *= bubble(s) * bubble(t);
    return v;
  });
}

GridFunction bump_member(Rng& rng, const Grid& g, bool vanishing) {
  const int bumps = 2;
  std::vector<double> amp(static_cast<std::size_t>(bumps)),
      cx(static_cast<std::size_t>(bumps)), cy(static_cast<std::size_t>(bumps)),
      wx(static_cast<std::size_t>(bumps)), wy(static_cast<std::size_t>(bumps));
  for (int b = 0; b < bumps; ++b) {
    const std::size_t i = static_cast<std::size_t>(b);
    amp[i] = rng.uniform(-1.0, 1.0);
    cx[i] = rng.uniform(0.25, 0.75);
    cy[i] = rng.uniform(0.25, 0.75);
    wx[i] = rng.uniform(0.12, 0.35);
    wy[i] = rng.uniform(0.12, 0.35);
  }
  auto bubble = [&](double s) { return 4.0 * s * (1.0 - s); };
  return make_grid_function(g, [&](double x, double y) {
    const double s = (x - g.bounds(0).lo) / g.bounds(0).length();
    const double t = g.dim() == 2
                         ? (y - g.bounds(1).lo) / g.bounds(1).length()
                         : 0.5;
    double v = 0.0;
    for (int b = 0; b < bumps; ++b) {
      const std::size_t i = static_cast<std::size_t>(b);
      double e = (s - cx[i]) / wx[i];
      double w = std::exp(-e * e);
      if (g.dim() == 2) {
        e = (t - cy[i]) / wy[i];
        w *= std::exp(-e * e);
      }
      v += amp[i] * w;
    }
    if (vanishing) {
      v *= bubble(s);
      if (g.dim() == 2) v *= bubble(t);
    }
    return v;
  });
}

} // namespace

std::string FunctionFamily::kind_name() const {
  switch (kind) {
    case Kind::trig_bumps: return "trig";
    case Kind::polynomial: return "poly";
    case Kind::bump_products: return "bumps";
    case Kind::user_list: return "user";
  }
  return "?";
}

std::vector<GridFunction> generate_family(const FunctionFamily& fam,
                                          const Grid& g) {
  if (fam.count < 1)
    throw Error(errc::invalid_argument, "family count must be >= 1");
  if (!(fam.amp_lo > 0.0) || !(fam.amp_hi >= fam.amp_lo))
    throw Error(errc::invalid_argument, "bad amplitude range");
  std::vector<GridFunction> out;
  out.reserve(static_cast<std::size_t>(fam.count));
  if (fam.kind == FunctionFamily::Kind::user_list) {
    if (fam.user.empty())
      throw Error(errc::invalid_argument, "user_list family has no expressions");
    for (int i = 0; i < fam.count; ++i)
      out.push_back(fam.user[static_cast<std::size_t>(i) % fam.user.size()].sample(g));
    return out;
  }
  for (int i = 0; i < fam.count; ++i) {
    Rng rng(fam.seed, static_cast<std::uint64_t>(i));
    GridFunction u = GridFunction::zeros(g);
    switch (fam.kind) {
      case FunctionFamily::Kind::trig_bumps:
        u = trig_member(rng, g, fam.vanishing, i);
        break;
      case FunctionFamily::Kind::polynomial:
        u = poly_member(rng, g, fam.vanishing);
        break;
      case FunctionFamily::Kind::bump_products:
        u = bump_member(rng, g, fam.vanishing);
        break;
      case FunctionFamily::Kind::user_list:
        break;
    }
    double target = rng.uniform(fam.amp_lo, fam.amp_hi);
    if (fam.kind == FunctionFamily::Kind::trig_bumps && i < kCanonicalMembers)
      target = i < kCanonicalShapes ? fam.amp_hi : fam.amp_lo;
    const double sup = u.max_abs();
    const double scale = sup > 1e-14 ? target / sup : 0.0;
    out.push_back(scale * u);
  }
  return out;
}

ExponentField random_exponent_field(const Grid& g, std::uint64_t seed,
                                    double lo, double hi) {
  if (!(lo >= 0.0) || !(hi >= lo))
    throw Error(errc::invalid_argument, "bad exponent range");
  Rng rng(seed, 0x9E3779B9ULL);
  const double mid = 0.5 * (lo + hi);
  const double amp = 0.5 * (hi - lo);
  const double fx = rng.uniform(0.5, 2.0), px = rng.uniform(0.0, 2.0 * kPi);
  const double fy = rng.uniform(0.5, 2.0), py = rng.uniform(0.0, 2.0 * kPi);
  GridFunction f = make_grid_function(g, [&](double x, double y) {
    const double s = (x - g.bounds(0).lo) / g.bounds(0).length();
    double v = std::sin(2.0 * kPi * fx * s + px);
    if (g.dim() == 2) {
      const double t = (y - g.bounds(1).lo) / g.bounds(1).length();
      v = 0.5 * (v + std::sin(2.0 * kPi * fy * t + py));
    }
    return mid + amp * v;
  });
  return lo >= 1.0 ? ExponentField::m0(std::move(f))
                   : ExponentField::weight(std::move(f));
}

} // namespace pnspace
