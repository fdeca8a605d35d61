#pragma once

#include "weyl/manifolds.hpp"
#include "weyl/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace weyl::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kArtifactVersion = "1.0.0";

/// torus:<n>:square2pi|golden|hex|diag:a,b[,c]|mat:<n*n row-major entries>, or sphere2[:radius].
ModelManifold parse_manifold(const std::string& text);

/// lo:hi:count[:log].
std::vector<double> parse_grid(const std::string& text);

/// The hi field of a grid spec (a one-point grid holds only lo).
double grid_upper(const std::string& text);

/// Comma-separated reals.
std::vector<double> parse_list(const std::string& text);

/// "ax,ay": |alpha| = ax and |beta| = ay along the first coordinate.
DerivIndex parse_deriv(const std::string& text);

Vec to_vec(const std::vector<double>& v);

/// Default base point: origin on the torus, a point on the equator of the sphere.
Point default_base_point(const ModelManifold& m);

/// Seeded point pairs with min_dist <= distance <= max_dist (uniform in distance).
std::vector<PointPair> random_pairs(const ModelManifold& m, std::size_t count, double min_dist, double max_dist,
                                    std::uint64_t seed);

}  // namespace weyl::cli
