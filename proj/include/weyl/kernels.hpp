#pragma once

#include "weyl/lattice.hpp"
#include "weyl/types.hpp"

#include <span>
#include <vector>

// Torus mode sums. Every routine exists twice: `serial` is the plain
// reference loop kept for testing, `omp` is the OpenMP kernel used by the
// library. The OpenMP reductions add fixed-size chunk partials in chunk
// order, so their results do not depend on the thread count.
namespace weyl::kernels {

enum class Execution { serial, parallel };

inline constexpr std::size_t kChunk = 2048;

/// Derivative weight of one mode: Re[(-ik)^alpha (ik)^beta exp(i<k, w>)].
double mode_term(const Vec& k, const Vec& w, const DerivIndex& d);

namespace serial {
/// Sum of mode_term over `modes` (no 1/covolume factor).
double mode_sum(std::span<const DualPoint> modes, const Vec& w, const DerivIndex& d);
std::vector<double> mode_sums(std::span<const DualPoint> modes, std::span<const Vec> ws,
                              const DerivIndex& d);
/// Sum of weights[i] cos<k_i, w>.
double weighted_cos_sum(std::span<const DualPoint> modes, std::span<const double> weights,
                        const Vec& w);
/// Running sums over modes[0, ends[j]) for each j; ends nondecreasing.
std::vector<double> prefix_mode_sums(std::span<const DualPoint> modes, const Vec& w,
                                     const DerivIndex& d, std::span<const std::size_t> ends);
}  // namespace serial

namespace omp {
double mode_sum(std::span<const DualPoint> modes, const Vec& w, const DerivIndex& d);
std::vector<double> mode_sums(std::span<const DualPoint> modes, std::span<const Vec> ws,
                              const DerivIndex& d);
double weighted_cos_sum(std::span<const DualPoint> modes, std::span<const double> weights,
                        const Vec& w);
std::vector<double> weighted_cos_sums(std::span<const DualPoint> modes,
                                      std::span<const double> weights, std::span<const Vec> ws);
std::vector<double> prefix_mode_sums(std::span<const DualPoint> modes, const Vec& w,
                                     const DerivIndex& d, std::span<const std::size_t> ends);
}  // namespace omp

/// Number of OpenMP threads in use (honours WEYL_LAB_THREADS when set).
int thread_count();
/// Applies WEYL_LAB_THREADS, if set, to the OpenMP runtime.
void configure_threads_from_env();

}  // namespace weyl::kernels
