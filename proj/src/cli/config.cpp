#include "cli/config.hpp"

#include "weyl/error.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace weyl::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw PreconditionError(what + ": '" + s + "' is not a number");
  }
  if (used != s.size() || !std::isfinite(v)) throw PreconditionError(what + ": '" + s + "' is not a finite number");
  return v;
}

int to_int(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v != std::floor(v)) throw PreconditionError(what + ": '" + s + "' is not an integer");
  return static_cast<int>(v);
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  if (text.empty()) throw PreconditionError("empty list");
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(to_double(part, "list entry"));
  return out;
}

ModelManifold parse_manifold(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw PreconditionError("--manifold is empty");
  if (parts[0] == "sphere2") {
    if (parts.size() > 2) throw PreconditionError("--manifold: expected sphere2[:radius], got '" + text + "'");
    const double r = parts.size() == 2 ? to_double(parts[1], "sphere radius") : 1.0;
    if (!(r > 0.0)) throw PreconditionError("--manifold: sphere radius must be positive");
    return ModelManifold::sphere2(r);
  }
  if (parts[0] != "torus" || parts.size() < 3) {
    throw PreconditionError("--manifold: expected torus:<n>:<basis> or sphere2[:radius], got '" + text + "'");
  }
  const int n = to_int(parts[1], "torus dimension");
  if (n != 2 && n != 3) throw PreconditionError("--manifold: torus dimension must be 2 or 3");
  const std::string& kind = parts[2];
  if (kind == "square2pi" && parts.size() == 3) return ModelManifold::torus(Lattice::square(n, kTwoPi));
  if (kind == "golden" && parts.size() == 3) {
    const double phi = std::numbers::phi;
    std::vector<double> periods{kTwoPi, kTwoPi * phi, kTwoPi * phi * phi};
    periods.resize(static_cast<std::size_t>(n));
    return ModelManifold::torus(Lattice::rectangular(periods));
  }
  if (kind == "hex" && parts.size() == 3) {
    if (n != 2) throw PreconditionError("--manifold: hex lattice is planar");
    return ModelManifold::torus(Lattice::hexagonal(kTwoPi));
  }
  if ((kind == "diag" || kind == "mat") && parts.size() == 4) {
    const auto v = parse_list(parts[3]);
    if (kind == "diag") {
      if (v.size() != static_cast<std::size_t>(n)) throw PreconditionError("--manifold: diag needs n periods");
      for (double p : v) {
        if (!(p > 0.0)) throw PreconditionError("--manifold: periods must be positive");
      }
      return ModelManifold::torus(Lattice::rectangular(v));
    }
    if (v.size() != static_cast<std::size_t>(n * n)) throw PreconditionError("--manifold: mat needs n*n entries");
    Mat b(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) b(i, j) = v[static_cast<std::size_t>(i * n + j)];
    }
    try {
      return ModelManifold::torus(Lattice(b));
    } catch (const DomainError& e) {
      throw PreconditionError(std::string("--manifold: ") + e.what());
    }
  }
  throw PreconditionError("--manifold: unknown torus basis '" + text + "'");
}

std::vector<double> parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3 && parts.size() != 4) throw PreconditionError("grid: expected lo:hi:count[:log], got '" + text + "'");
  const double lo = to_double(parts[0], "grid lo");
  const double hi = to_double(parts[1], "grid hi");
  const int count = to_int(parts[2], "grid count");
  bool log_spaced = false;
  if (parts.size() == 4) {
    if (parts[3] != "log") throw PreconditionError("grid: fourth field must be 'log'");
    log_spaced = true;
  }
  if (count < 1) throw PreconditionError("grid: count must be >= 1");
  if (count > 1 && !(hi > lo)) throw PreconditionError("grid: need lo < hi");
  if (log_spaced && !(lo > 0.0)) throw PreconditionError("grid: log spacing needs lo > 0");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    g[static_cast<std::size_t>(i)] = log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                                                : lo + t * (hi - lo);
  }
  g.front() = lo;
  if (count > 1) g.back() = hi;
  return g;
}

double grid_upper(const std::string& text) {
  parse_grid(text);
  return to_double(split(text, ':')[1], "grid hi");
}

DerivIndex parse_deriv(const std::string& text) {
  const auto v = parse_list(text);
  if (v.size() != 2) throw PreconditionError("--deriv: expected ax,ay");
  const int ax = static_cast<int>(v[0]);
  const int ay = static_cast<int>(v[1]);
  if (ax != v[0] || ay != v[1] || ax < 0 || ay < 0 || ax + ay > 2) {
    throw PreconditionError("--deriv: orders must be nonnegative integers with ax + ay <= 2");
  }
  return DerivIndex::along(0, ax, ay);
}

Vec to_vec(const std::vector<double>& v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

Point default_base_point(const ModelManifold& m) {
  if (m.is_torus()) return Point::Zero(m.dim());
  Point p(2);
  p << 0.5 * kPi, 0.0;
  return p;
}

std::vector<PointPair> random_pairs(const ModelManifold& m, std::size_t count, double min_dist, double max_dist,
                                    std::uint64_t seed) {
  if (!(min_dist >= 0.0) || !(max_dist >= min_dist)) throw PreconditionError("pair distances need 0 <= min <= max");
  std::mt19937_64 gen(seed);
  const auto uniform = [&] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<PointPair> out;
  out.reserve(count);
  const int n = m.dim();
  for (std::size_t i = 0; i < count; ++i) {
    bool ok = false;
    for (int attempt = 0; attempt < 1000 && !ok; ++attempt) {
      const double dist = min_dist + (max_dist - min_dist) * uniform();
      PointPair p;
      if (m.is_torus()) {
        Vec u(n);
        for (int k = 0; k < n; ++k) u(k) = uniform();
        p.x = m.lattice().basis() * u;
        Vec dir(n);
        if (n == 2) {
          const double a = kTwoPi * uniform();
          dir << std::cos(a), std::sin(a);
        } else {
          const double z = 2.0 * uniform() - 1.0;
          const double a = kTwoPi * uniform();
          const double s = std::sqrt(1.0 - z * z);
          dir << s * std::cos(a), s * std::sin(a), z;
        }
        p.y = p.x + dist * dir;
      } else {
        p.x = Point(2);
        p.x << std::acos(1.0 - 2.0 * uniform()), kTwoPi * uniform() - kPi;
        Vec bearing(1);
        bearing(0) = kTwoPi * uniform();
        p.y = m.geodesic_point(p.x, bearing, dist);
      }
      const double d = m.distance(p.x, p.y);
      if (d >= min_dist * (1.0 - 1e-12) && d <= max_dist * (1.0 + 1e-12)) {
        out.push_back(std::move(p));
        ok = true;
      }
    }
    if (!ok) throw PreconditionError("could not place a point pair in the requested distance range");
  }
  return out;
}

}  // namespace weyl::cli
