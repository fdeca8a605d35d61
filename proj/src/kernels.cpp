#include "weyl/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace weyl::kernels {

double mode_term(const Vec& k, const Vec& w, const DerivIndex& d) {
  double mono = 1.0;
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    const int p = d.alpha[static_cast<std::size_t>(i)] + d.beta[static_cast<std::size_t>(i)];
    for (int j = 0; j < p; ++j) mono *= k(i);
  }
  const double theta = k.dot(w);
  double trig = 0.0;
  switch (d.total()) {
    case 0: trig = std::cos(theta); break;
    case 1: trig = -std::sin(theta); break;
    case 2: trig = -std::cos(theta); break;
    default: trig = std::cos(theta + 0.5 * kPi * d.total()); break;
  }
  const double sign = (d.order_x() % 2 == 0) ? 1.0 : -1.0;
  return sign * mono * trig;
}

namespace {

double chunk_sum(std::span<const DualPoint> modes, std::size_t begin, std::size_t end, const Vec& w,
                 const DerivIndex& d) {
  double s = 0.0;
  if (d.is_zero()) {
    for (std::size_t i = begin; i < end; ++i) s += std::cos(modes[i].vector.dot(w));
  } else {
    for (std::size_t i = begin; i < end; ++i) s += mode_term(modes[i].vector, w, d);
  }
  return s;
}

std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

// Chunked reduction with a fixed summation order.
double chunked(std::span<const DualPoint> modes, const Vec& w, const DerivIndex& d) {
  double s = 0.0;
  const std::size_t nc = chunk_count(modes.size());
  for (std::size_t c = 0; c < nc; ++c) {
    s += chunk_sum(modes, c * kChunk, std::min(modes.size(), (c + 1) * kChunk), w, d);
  }
  return s;
}

double weighted_chunk(std::span<const DualPoint> modes, std::span<const double> weights,
                      std::size_t begin, std::size_t end, const Vec& w) {
  double s = 0.0;
  for (std::size_t i = begin; i < end; ++i) s += weights[i] * std::cos(modes[i].vector.dot(w));
  return s;
}

double weighted_chunked(std::span<const DualPoint> modes, std::span<const double> weights,
                        const Vec& w) {
  double s = 0.0;
  const std::size_t nc = chunk_count(modes.size());
  for (std::size_t c = 0; c < nc; ++c) {
    s += weighted_chunk(modes, weights, c * kChunk, std::min(modes.size(), (c + 1) * kChunk), w);
  }
  return s;
}

}  // namespace

namespace serial {

double mode_sum(std::span<const DualPoint> modes, const Vec& w, const DerivIndex& d) {
  double s = 0.0;
  for (const auto& m : modes) s += mode_term(m.vector, w, d);
  return s;
}

std::vector<double> mode_sums(std::span<const DualPoint> modes, std::span<const Vec> ws,
                              const DerivIndex& d) {
  std::vector<double> out;
  out.reserve(ws.size());
  for (const auto& w : ws) out.push_back(mode_sum(modes, w, d));
  return out;
}

double weighted_cos_sum(std::span<const DualPoint> modes, std::span<const double> weights,
                        const Vec& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) s += weights[i] * std::cos(modes[i].vector.dot(w));
  return s;
}

std::vector<double> prefix_mode_sums(std::span<const DualPoint> modes, const Vec& w,
                                     const DerivIndex& d, std::span<const std::size_t> ends) {
  std::vector<double> out;
  out.reserve(ends.size());
  double s = 0.0;
  std::size_t i = 0;
  for (std::size_t e : ends) {
    for (; i < e; ++i) s += mode_term(modes[i].vector, w, d);
    out.push_back(s);
  }
  return out;
}

}  // namespace serial

namespace omp {

double mode_sum(std::span<const DualPoint> modes, const Vec& w, const DerivIndex& d) {
  const std::size_t nc = chunk_count(modes.size());
  std::vector<double> partial(nc, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < nc; ++c) {
    partial[c] = chunk_sum(modes, c * kChunk, std::min(modes.size(), (c + 1) * kChunk), w, d);
  }
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

std::vector<double> mode_sums(std::span<const DualPoint> modes, std::span<const Vec> ws,
                              const DerivIndex& d) {
  std::vector<double> out(ws.size(), 0.0);
  if (ws.size() == 1) {
    out[0] = mode_sum(modes, ws[0], d);
    return out;
  }
#pragma omp parallel for schedule(dynamic)
  for (std::size_t j = 0; j < ws.size(); ++j) out[j] = chunked(modes, ws[j], d);
  return out;
}

double weighted_cos_sum(std::span<const DualPoint> modes, std::span<const double> weights,
                        const Vec& w) {
  const std::size_t nc = chunk_count(modes.size());
  std::vector<double> partial(nc, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < nc; ++c) {
    partial[c] = weighted_chunk(modes, weights, c * kChunk, std::min(modes.size(), (c + 1) * kChunk), w);
  }
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

std::vector<double> weighted_cos_sums(std::span<const DualPoint> modes,
                                      std::span<const double> weights, std::span<const Vec> ws) {
  std::vector<double> out(ws.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t j = 0; j < ws.size(); ++j) out[j] = weighted_chunked(modes, weights, ws[j]);
  return out;
}

std::vector<double> prefix_mode_sums(std::span<const DualPoint> modes, const Vec& w,
                                     const DerivIndex& d, std::span<const std::size_t> ends) {
  const std::size_t last = ends.empty() ? 0 : ends.back();
  const std::size_t nc = chunk_count(last);
  std::vector<double> partial(nc, 0.0);
  std::vector<double> out(ends.size(), 0.0);
  // Each chunk records its local running sum at the ends inside it; chunk
  // totals are added afterwards in chunk order.
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < nc; ++c) {
    const std::size_t lo = c * kChunk;
    const std::size_t hi = std::min(last, lo + kChunk);
    std::size_t j = static_cast<std::size_t>(std::upper_bound(ends.begin(), ends.end(), lo) - ends.begin());
    std::size_t i = lo;
    double s = 0.0;
    for (; j < ends.size() && ends[j] <= hi; ++j) {
      s += chunk_sum(modes, i, ends[j], w, d);
      i = ends[j];
      out[j] = s;
    }
    partial[c] = s + chunk_sum(modes, i, hi, w, d);
  }
  std::vector<double> base(nc, 0.0);
  for (std::size_t c = 1; c < nc; ++c) base[c] = base[c - 1] + partial[c - 1];
  for (std::size_t j = 0; j < ends.size(); ++j) {
    if (ends[j] > 0) out[j] += base[(ends[j] - 1) / kChunk];
  }
  return out;
}

}  // namespace omp

int thread_count() { return omp_get_max_threads(); }

void configure_threads_from_env() {
  if (const char* env = std::getenv("WEYL_LAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

}  // namespace weyl::kernels
