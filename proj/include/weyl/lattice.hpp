#pragma once

#include "weyl/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace weyl {

inline constexpr std::size_t kDefaultEnumerationCap = 100'000'000;

/// Period lattice of a flat torus R^n / L, n in {2, 3}.
///
/// Columns of `basis` are the period vectors b_i. The dual basis b*_j
/// satisfies <b_i, b*_j> = 2 pi delta_ij, so torus eigenfunctions are
/// exp(i<k, x>) for k in the dual lattice, with eigenvalue |k|^2.
class Lattice {
 public:
  /// Throws DomainError if the dimension is not 2 or 3 or basis is singular.
  explicit Lattice(Mat basis);

  /// Cubic lattice with all periods equal to `period`.
  static Lattice square(int dim, double period);
  /// Orthogonal periods of the given lengths.
  static Lattice rectangular(std::span<const double> periods);
  /// Planar hexagonal lattice with shortest period `shortest`.
  static Lattice hexagonal(double shortest);

  [[nodiscard]] int dim() const { return static_cast<int>(basis_.cols()); }
  [[nodiscard]] const Mat& basis() const { return basis_; }
  [[nodiscard]] const Mat& dual_basis() const { return dual_; }
  [[nodiscard]] double covolume() const { return covolume_; }

 private:
  Mat basis_;
  Mat dual_;
  double covolume_;
};

/// Integer combination offset + M c with its length, used for both dual
/// points (M = dual basis) and deck images (M = basis, offset = y - x).
struct LatticeVector {
  IVec coeffs;
  Vec vector;
  double norm = 0.0;
};

/// A dual-lattice point k = dual_basis * coeffs; a torus mode of eigenvalue |k|^2.
using DualPoint = LatticeVector;

/// All vectors offset + M c with lo < |.| <= hi (lo < 0 admits the zero
/// vector), sorted by (norm, lexicographic coeffs). The coefficient box
/// |c_i - (M^-1 offset)_i| <= hi * |row_i(M^-1)| is provably complete; the
/// last coordinate is solved from the quadratic norm constraint.
std::vector<LatticeVector> enumerate_lattice(const Mat& generator, const Vec& offset, double lo,
                                             double hi, std::size_t cap = kDefaultEnumerationCap);

/// Dual points with norm <= radius, sorted by (norm, coeffs).
std::vector<DualPoint> enumerate_dual(const Lattice& lattice, double radius,
                                      std::size_t cap = kDefaultEnumerationCap);

/// Dual points with lo < norm <= hi, sorted.
std::vector<DualPoint> enumerate_dual_shell(const Lattice& lattice, double lo, double hi,
                                            std::size_t cap = kDefaultEnumerationCap);

/// Number of dual points with lo < norm <= hi.
std::size_t shell_count(const Lattice& lattice, double lo, double hi,
                        std::size_t cap = kDefaultEnumerationCap);

/// Half the length of the shortest nonzero period.
double injectivity_radius(const Lattice& lattice);

/// Length of the shortest lift of y - x (well defined everywhere).
double torus_distance(const Lattice& lattice, const Point& x, const Point& y);

/// Shortest representative of y - x. Throws AmbiguityError when the distance
/// reaches the injectivity radius; the message lists every representative
/// of minimal length.
Vec torus_log(const Lattice& lattice, const Point& x, const Point& y);

/// All y - x + gamma, gamma a period, with length <= radius, sorted by norm.
std::vector<Vec> deck_images(const Lattice& lattice, const Point& x, const Point& y, double radius,
                             std::size_t cap = kDefaultEnumerationCap);

}  // namespace weyl
