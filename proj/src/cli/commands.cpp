#include "cli/commands.hpp"

#include "weyl/analysis.hpp"
#include "weyl/error.hpp"
#include "weyl/projector.hpp"
#include "weyl/randomwaves.hpp"
#include "weyl/smoothing.hpp"
#include "weyl/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace weyl::cli {

namespace {

const OptionSpec kManifold{"manifold", "torus:2:square2pi", "torus:<n>:<basis> or sphere2[:radius]"};
const OptionSpec kSeed{"seed", "42", "seed for point pairs and random coefficients"};
const OptionSpec kDeriv{"deriv", "0,0", "derivative orders ax,ay along the first coordinate"};
const OptionSpec kSampling{"sampling", "window", "window: sup over (previous grid point, lambda]; grid: grid points only"};
const OptionSpec kX0{"x0", "", "base point (comma list); default origin / equator"};
const OptionSpec kDirection{"direction", "", "geodesic direction (torus vector, sphere bearing)"};

}  // namespace

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs = {
      {"eigens", "level table up to the top of the lambda grid",
       {kManifold, {"lambda-grid", "0:10:1", "lo:hi:count[:log]; levels up to max(grid)"}}},
      {"kernel", "spectral function (width 0) or cluster kernel along a geodesic",
       {kManifold,
        {"lambda", "1.5", "spectral parameter"},
        {"width", "0", "cluster width; 0 evaluates E_lambda"},
        {"dist-grid", "0:1:5", "geodesic distances lo:hi:count"},
        kX0,
        kDirection,
        kDeriv}},
      {"remainder-scan", "sup |E_lambda - leading| over pairs per lambda, with exponent fit",
       {kManifold,
        {"lambda-grid", "50.3:399.7:30:log", "lambda grid"},
        {"pairs", "1", "number of seeded pairs"},
        {"max-dist", "0", "pair distance upper bound (0: diagonal)"},
        kSeed,
        kDeriv,
        kSampling}},
      {"offdiag-scan", "sup |E_lambda| over separated pairs per lambda, with exponent fit",
       {kManifold,
        {"lambda-grid", "50.3:399.7:30:log", "lambda grid"},
        {"eps", "1", "minimum pair distance"},
        {"max-dist", "0", "maximum pair distance (0: 0.99 inj)"},
        {"pairs", "24", "number of seeded pairs"},
        kSeed,
        kDeriv,
        kSampling}},
      {"smooth-compare", "mollified projector: mode sum vs sum over deck images",
       {kManifold,
        {"lambda-grid", "5:20:3:log", "lambda grid"},
        {"A", "1.0,0.5", "comma list of A values in (0, 1]"},
        {"pairs", "20", "number of seeded pairs"},
        {"tol", "1e-6", "pass threshold on |spectral - images| / (1 + |spectral|)"},
        kSeed}},
      {"cluster-bessel", "cluster kernel vs Bessel prediction along a geodesic",
       {kManifold,
        {"lambda", "200.25", "window start"},
        {"width", "1", "window width"},
        {"windows", "5", "consecutive windows averaged"},
        {"dist-grid", "0:0.04:9", "geodesic distances"},
        kX0,
        kDirection,
        kDeriv}},
      {"randomwave", "random waves: sample values, covariance, or rescaled covariance error",
       {kManifold,
        {"mode", "covariance", "sample | covariance | rescaled"},
        {"lambda", "200.25", "window start"},
        {"width", "1", "window width"},
        {"samples", "5000", "number of samples"},
        {"pairs", "10", "covariance pairs"},
        {"max-dist", "0.05", "covariance pair distance bound"},
        {"dist-grid", "0:5:11", "sample: geodesic distances; rescaled: |u - v| values"},
        kX0,
        kDirection,
        kSeed}},
      {"appendix-a", "localized sums and integrals over a lambda grid",
       {{"lambda-grid", "50:800:30:log", "lambda grid"},
        {"round", "1", "1 rounds lambda to integers"},
        {"N", "4", "decay exponent"},
        {"p", "0,1,2", "comma list of growth exponents"}}},
      {"cluster-sup", "sup over points of the diagonal window sum",
       {{"manifold", "torus:2:golden", kManifold.help},
        {"lambda-grid", "50.3:799.7:30:log", "lambda grid"},
        {"A", "log", "window width, or 'log' for 1 / log(lambda)"},
        {"points", "3", "points per axis of the base-point grid"},
        kDeriv}},
  };
  return specs;
}

namespace {

class Config {
 public:
  explicit Config(const Json& j) : j_(j) {}

  [[nodiscard]] std::string str(const std::string& key) const {
    if (!j_.contains(key)) throw PreconditionError("config is missing '" + key + "'");
    if (!j_[key].is_string()) throw PreconditionError("config value '" + key + "' must be a string");
    return j_[key].get<std::string>();
  }
  [[nodiscard]] double num(const std::string& key) const {
    const auto v = parse_list(str(key));
    if (v.size() != 1) throw PreconditionError("--" + key + " expects a single number");
    return v[0];
  }
  [[nodiscard]] std::size_t count(const std::string& key) const {
    const double v = num(key);
    if (v < 0 || v != std::floor(v) || v > 1e9) throw PreconditionError("--" + key + " expects a nonnegative integer");
    return static_cast<std::size_t>(v);
  }
  [[nodiscard]] std::uint64_t seed() const {
    const std::string s = str("seed");
    try {
      std::size_t used = 0;
      const auto v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw PreconditionError("--seed expects a nonnegative integer");
    }
  }
  [[nodiscard]] ModelManifold manifold() const { return parse_manifold(str("manifold")); }
  [[nodiscard]] std::vector<double> grid(const std::string& key) const { return parse_grid(str(key)); }
  [[nodiscard]] DerivIndex deriv() const { return parse_deriv(str("deriv")); }
  [[nodiscard]] LambdaSampling sampling() const {
    const std::string s = str("sampling");
    if (s == "window") return LambdaSampling::window_sup;
    if (s == "grid") return LambdaSampling::grid;
    throw PreconditionError("--sampling must be 'window' or 'grid'");
  }

  [[nodiscard]] Point base_point(const ModelManifold& m) const {
    const std::string s = str("x0");
    if (s.empty()) return default_base_point(m);
    Point p = to_vec(parse_list(s));
    m.validate_point(p);
    return p;
  }
  [[nodiscard]] Vec direction(const ModelManifold& m) const {
    const std::string s = str("direction");
    if (s.empty()) {
      Vec d = Vec::Zero(m.is_torus() ? m.dim() : 1);
      if (m.is_torus()) d(0) = 1.0;
      return d;
    }
    return to_vec(parse_list(s));
  }

 private:
  const Json& j_;
};

std::vector<double> csv_point(const Point& p) { return {p.data(), p.data() + p.size()}; }

std::vector<std::string> point_header(const std::string& prefix, int dim) {
  std::vector<std::string> h;
  for (int i = 0; i < dim; ++i) h.push_back(prefix + std::to_string(i));
  return h;
}

Json fit_json(const ScanReport& r) {
  return {{"fitted_exponent", r.fitted_exponent}, {"fit_intercept", r.fit.intercept}, {"fit_residual", r.fit_residual}};
}

CommandResult cmd_eigens(const Config& c) {
  const auto m = c.manifold();
  const auto g = c.grid("lambda-grid");
  const double top = std::max(*std::max_element(g.begin(), g.end()), grid_upper(c.str("lambda-grid")));
  if (!(top > 0.0)) throw PreconditionError("eigens: the lambda grid must reach above 0");
  Table t{"eigens", {"level", "sqrt_eigenvalue", "eigenvalue", "multiplicity", "cumulative_count"}, {}};
  double total = 0.0;
  const auto levels = eigenlevels(m, top);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& l = levels[i];
    total += static_cast<double>(l.multiplicity);
    t.rows.push_back({static_cast<double>(i), l.sqrt_eigenvalue, l.sqrt_eigenvalue * l.sqrt_eigenvalue,
                      static_cast<double>(l.multiplicity), total});
  }
  CommandResult r;
  r.tables.push_back(std::move(t));
  r.results = {{"levels", levels.size()}, {"total_multiplicity", total}};
  return r;
}

CommandResult cmd_kernel(const Config& c) {
  const auto m = c.manifold();
  const double lambda = c.num("lambda");
  const double width = c.num("width");
  const auto dists = c.grid("dist-grid");
  const auto d = c.deriv();
  const Point x0 = c.base_point(m);
  const Vec dir = c.direction(m);
  if (width < 0.0) throw PreconditionError("--width must be >= 0");
  const Spectrum spec(m, lambda + std::max(width, 0.0) + 2.0 * kSpectrumTolerance);
  auto header = std::vector<std::string>{"dist"};
  for (const auto& h : point_header("y", m.dim())) header.push_back(h);
  header.push_back(width > 0.0 ? "cluster_kernel" : "spectral_function");
  if (width == 0.0) header.push_back("leading_term");
  Table t{"kernel", header, {}};
  const double inj = m.injectivity_radius();
  for (double r : dists) {
    if (r < 0.0) throw PreconditionError("kernel: distances must be >= 0");
    const Point y = m.geodesic_point(x0, dir, r);
    std::vector<double> row{r};
    for (double v : csv_point(y)) row.push_back(v);
    if (width > 0.0) {
      row.push_back(spec.cluster_kernel(lambda, width, x0, y, d));
    } else {
      row.push_back(spec.spectral_function(lambda, x0, y, d));
      row.push_back(r < inj ? leading_term(m, lambda, x0, y, d) : std::numeric_limits<double>::quiet_NaN());
    }
    t.rows.push_back(std::move(row));
  }
  CommandResult res;
  res.tables.push_back(std::move(t));
  return res;
}

std::vector<PointPair> scan_pairs(const Config& c, const ModelManifold& m, double min_dist, double max_dist) {
  return random_pairs(m, c.count("pairs"), min_dist, max_dist, c.seed());
}

CommandResult scan_result(const std::string& name, const std::string& column, const ScanReport& rep) {
  Table t{name, {"lambda", column}, {}};
  for (std::size_t i = 0; i < rep.lambda_grid.size(); ++i) t.rows.push_back({rep.lambda_grid[i], rep.sup_values[i]});
  CommandResult r;
  r.tables.push_back(std::move(t));
  r.results = fit_json(rep);
  return r;
}

CommandResult cmd_remainder_scan(const Config& c) {
  const auto m = c.manifold();
  const auto grid = c.grid("lambda-grid");
  const double max_dist = c.num("max-dist");
  if (c.count("pairs") == 0) throw PreconditionError("--pairs must be >= 1");
  const auto pairs = scan_pairs(c, m, 0.0, max_dist);
  return scan_result("remainder_scan", "sup_abs_remainder", remainder_scan(m, grid, pairs, c.deriv(), c.sampling()));
}

CommandResult cmd_offdiag_scan(const Config& c) {
  const auto m = c.manifold();
  const auto grid = c.grid("lambda-grid");
  const double eps = c.num("eps");
  double max_dist = c.num("max-dist");
  if (max_dist == 0.0) max_dist = 0.99 * m.injectivity_radius();
  if (c.count("pairs") == 0) throw PreconditionError("--pairs must be >= 1");
  if (!(eps > 0.0) || eps > max_dist) throw PreconditionError("--eps must lie in (0, max-dist]");
  const auto pairs = scan_pairs(c, m, eps, max_dist);
  return scan_result("offdiag_scan", "sup_abs_spectral_function", offdiagonal_scan(m, grid, eps, pairs, c.deriv(), c.sampling()));
}

CommandResult cmd_smooth_compare(const Config& c) {
  const auto m = c.manifold();
  if (!m.is_torus()) throw UnsupportedError("smooth-compare needs a flat torus");
  const auto lambdas = c.grid("lambda-grid");
  const auto as = parse_list(c.str("A"));
  const double tol = c.num("tol");
  if (c.count("pairs") == 0) throw PreconditionError("--pairs must be >= 1");
  for (double a : as) {
    if (!(a > 0.0 && a <= 1.0)) throw PreconditionError("--A values must lie in (0, 1]");
  }
  for (double l : lambdas) {
    if (!(l > 0.0)) throw PreconditionError("lambda values must be positive");
  }
  const auto pairs = random_pairs(m, c.count("pairs"), 0.0, m.injectivity_radius(), c.seed());
  const auto spec = MollifierSpec::for_manifold(m);
  auto header = std::vector<std::string>{"lambda", "A", "pair"};
  for (const auto& h : point_header("x", m.dim())) header.push_back(h);
  for (const auto& h : point_header("y", m.dim())) header.push_back(h);
  for (const char* h : {"spectral", "images", "abs_diff", "rel_diff"}) header.emplace_back(h);
  Table rows{"smooth_compare", header, {}};
  Table summary{"smooth_compare_summary", {"lambda", "A", "spectral_radius", "image_radius", "max_rel_diff", "pass"}, {}};
  double worst = 0.0;
  for (double l : lambdas) {
    for (double a : as) {
      const SmoothedProjector proj(m, spec, l, a);
      const auto spectral = proj.spectral(pairs);
      double group = 0.0;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const double img = proj.images(pairs[i].x, pairs[i].y);
        const double diff = std::abs(spectral[i] - img);
        const double rel = diff / (1.0 + std::abs(spectral[i]));
        group = std::max(group, rel);
        std::vector<double> row{l, a, static_cast<double>(i)};
        for (double v : csv_point(pairs[i].x)) row.push_back(v);
        for (double v : csv_point(pairs[i].y)) row.push_back(v);
        for (double v : {spectral[i], img, diff, rel}) row.push_back(v);
        rows.rows.push_back(std::move(row));
      }
      summary.rows.push_back({l, a, proj.spectral_radius(), proj.image_radius(), group, group <= tol ? 1.0 : 0.0});
      worst = std::max(worst, group);
    }
  }
  CommandResult r;
  r.tables.push_back(std::move(rows));
  r.tables.push_back(std::move(summary));
  r.results = {{"max_rel_diff", worst}, {"tol", tol}, {"pass", worst <= tol}};
  return r;
}

CommandResult cmd_cluster_bessel(const Config& c) {
  const auto m = c.manifold();
  const double lambda = c.num("lambda");
  const double width = c.num("width");
  const auto windows = c.count("windows");
  if (windows == 0) throw PreconditionError("--windows must be >= 1");
  const auto table = cluster_vs_bessel(m, lambda, width, c.base_point(m), c.direction(m), c.grid("dist-grid"),
                                       c.deriv(), static_cast<int>(windows));
  Table t{"cluster_bessel", {"dist", "lambda_dist", "cluster", "prediction", "abs_error", "rel_error"}, {}};
  double worst = 0.0;
  for (const auto& row : table.rows) {
    t.rows.push_back({row.dist, lambda * row.dist, row.cluster, row.prediction, row.abs_error, row.rel_error});
    worst = std::max(worst, row.rel_error);
  }
  CommandResult r;
  r.tables.push_back(std::move(t));
  r.results = {{"diagonal", table.diagonal}, {"max_rel_error", worst}};
  return r;
}

CommandResult cmd_randomwave(const Config& c) {
  const auto m = c.manifold();
  const std::string mode = c.str("mode");
  if (mode != "sample" && mode != "covariance" && mode != "rescaled") {
    throw PreconditionError("--mode must be sample, covariance or rescaled");
  }
  const RandomWaveEnsemble ens(m, c.num("lambda"), c.num("width"), c.seed(), c.count("samples"));
  const Point x0 = c.base_point(m);
  CommandResult r;
  r.results = {{"modes", ens.modes().size()}};
  if (mode == "sample") {
    const auto dists = c.grid("dist-grid");
    const Vec dir = c.direction(m);
    Table t{"randomwave_sample", {"sample", "dist", "psi"}, {}};
    std::vector<std::vector<double>> basis;
    for (double d : dists) basis.push_back(ens.basis_values(m.geodesic_point(x0, dir, d / ens.lambda())));
    for (std::size_t s = 0; s < ens.num_samples(); ++s) {
      const auto a = ens.coefficients(s);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        double psi = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) psi += a[j] * basis[i][j];
        t.rows.push_back({static_cast<double>(s), dists[i] / ens.lambda(), ens.normalization() * psi});
      }
    }
    r.tables.push_back(std::move(t));
  } else if (mode == "covariance") {
    if (c.count("pairs") == 0) throw PreconditionError("--pairs must be >= 1");
    const auto pairs = random_pairs(m, c.count("pairs"), 0.0, c.num("max-dist"), c.seed());
    const auto rep = covariance_report(ens, pairs);
    Table t{"randomwave_covariance", {"pair", "dist", "empirical", "std_error", "exact", "z_score", "universal"}, {}};
    double worst_z = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double z = (rep.empirical[i] - rep.exact[i]) / rep.std_errors[i];
      worst_z = std::max(worst_z, std::abs(z));
      t.rows.push_back({static_cast<double>(i), m.distance(pairs[i].x, pairs[i].y), rep.empirical[i],
                        rep.std_errors[i], rep.exact[i], z, rep.universal_limit[i]});
    }
    r.tables.push_back(std::move(t));
    r.results["max_abs_z"] = worst_z;
  } else {
    const auto seps = c.grid("dist-grid");
    Table t{"randomwave_rescaled", {"separation", "exact_rescaled", "universal", "abs_error"}, {}};
    double worst = 0.0;
    for (double s : seps) {
      Vec u = Vec::Zero(m.dim());
      u(0) = 0.5 * s;
      const auto e = rescaled_covariance_error(ens, x0, u, -u);
      worst = std::max(worst, e.abs_error);
      t.rows.push_back({s, e.exact_rescaled, e.universal, e.abs_error});
    }
    r.tables.push_back(std::move(t));
    r.results["max_abs_error"] = worst;
  }
  return r;
}

CommandResult cmd_appendix_a(const Config& c) {
  auto grid = c.grid("lambda-grid");
  const auto round = c.count("round");
  if (round > 1) throw PreconditionError("--round must be 0 or 1");
  if (round == 1) {
    for (auto& l : grid) l = std::round(l);
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  }
  const double n_val = c.num("N");
  if (n_val != std::floor(n_val)) throw PreconditionError("--N must be an integer");
  const int N = static_cast<int>(n_val);
  const auto ps = parse_list(c.str("p"));
  Table t{"appendix_a", {"lambda", "N", "p", "sum", "integral", "sum_over_lambda_p", "sum_over_integral"}, {}};
  Json spreads = Json::object();
  for (double p : ps) {
    const auto rep = localized_sum_ratio_scan(grid, N, p);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double integral = localized_integral(grid[i], N, p);
      t.rows.push_back({grid[i], static_cast<double>(N), p, rep.sup_values[i], integral, rep.normalized[i],
                        rep.sup_values[i] / integral});
    }
    spreads[format_number(p)] = rep.normalized_spread();
  }
  CommandResult r;
  r.tables.push_back(std::move(t));
  r.results = {{"ratio_spread_by_p", spreads}};
  return r;
}

CommandResult cmd_cluster_sup(const Config& c) {
  const auto m = c.manifold();
  const auto grid = c.grid("lambda-grid");
  const std::string a = c.str("A");
  WidthRule rule = OneOverLog{};
  if (a != "log") rule = FixedWidth{c.num("A")};
  const auto k = c.count("points");
  if (k == 0 || k > 50) throw PreconditionError("--points must lie in [1, 50]");
  std::vector<Point> pts;
  if (m.is_torus()) {
    const int n = m.dim();
    const std::size_t total = static_cast<std::size_t>(std::pow(k, n));
    for (std::size_t idx = 0; idx < total; ++idx) {
      Vec u(n);
      std::size_t rest = idx;
      for (int i = 0; i < n; ++i) {
        u(i) = static_cast<double>(rest % k) / static_cast<double>(k);
        rest /= k;
      }
      pts.push_back(m.lattice().basis() * u);
    }
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      Point p(2);
      p << kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(k), 0.0;
      pts.push_back(p);
    }
  }
  const auto rep = cluster_sup_scan(m, grid, rule, c.deriv(), pts);
  Table t{"cluster_sup", {"lambda", "A", "sup_value", "normalized"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    t.rows.push_back({grid[i], window_width(rule, grid[i]), rep.sup_values[i], rep.normalized[i]});
  }
  CommandResult r;
  r.tables.push_back(std::move(t));
  r.results = fit_json(rep);
  r.results["normalized_spread"] = rep.normalized_spread();
  return r;
}

}  // namespace

CommandResult execute(const std::string& subcommand, const Json& config) {
  static const std::map<std::string, std::function<CommandResult(const Config&)>> table = {
      {"eigens", cmd_eigens},
      {"kernel", cmd_kernel},
      {"remainder-scan", cmd_remainder_scan},
      {"offdiag-scan", cmd_offdiag_scan},
      {"smooth-compare", cmd_smooth_compare},
      {"cluster-bessel", cmd_cluster_bessel},
      {"randomwave", cmd_randomwave},
      {"appendix-a", cmd_appendix_a},
      {"cluster-sup", cmd_cluster_sup},
  };
  const auto it = table.find(subcommand);
  if (it == table.end()) throw PreconditionError("unknown subcommand '" + subcommand + "'");
  return it->second(Config(config));
}

}  // namespace weyl::cli
