#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "minfib/errors.hpp"
#include "minfib/flatten.hpp"

namespace minfib {

/// Deterministic random generator. One explicit instance is threaded through
/// every sampling call; identical seeds yield identical streams. Independent
/// sub-generators are derived from the seed with split(), never from the draw
/// state, so parallel tasks stay reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller (no state caching, platform independent).
  double gaussian();
  /// Child generator for stream index `stream`; deterministic in (seed, stream).
  Rng split(std::uint64_t stream) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

/// Central finite-difference stencil for derivative `order` along a curve.
struct Stencil {
  int order = 1;       // derivative order, 1 or 2
  int points = 5;      // odd count >= 3, > order
  double step = 1e-4;  // abscissa spacing h

  static Stencil first_derivative(double h = 1e-4, int points = 5);
  static Stencil second_derivative(double h = 1e-3, int points = 5);

  /// Abscissae (-(p-1)/2 .. (p-1)/2) * step.
  std::vector<double> offsets() const;
  /// Weights including the 1/h^order factor, solved from the moment conditions.
  std::vector<double> weights() const;
  /// Highest polynomial degree differentiated exactly.
  int exactness_degree() const;

  void validate() const;
};

using InnerProduct =
    std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

/// Modified Gram-Schmidt (two passes) under an arbitrary inner product.
/// Throws DegenerateInput when the smallest Gram eigenvalue is <= 1e-12.
std::vector<Eigen::VectorXd> gram_schmidt(
    const std::vector<Eigen::VectorXd>& vectors, const InnerProduct& inner);

/// Eigenvalues of the symmetric 2x2 matrix [[a11,a12],[a12,a22]], ascending.
std::pair<double, double> eig_sym2(double a11, double a12, double a22);

/// Matrix exponential by scaling-and-squaring with a truncated series core.
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& x);
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& x);

/// Finite-difference estimate of d^k/dt^k f(curve(t)) at t = 0, where k is
/// the stencil order.
Complex diff_along_curve(
    const std::function<Eigen::VectorXd(double)>& curve,
    const std::function<Complex(const Eigen::VectorXd&)>& f,
    const Stencil& stencil);

enum class CompactGroup { SpecialOrthogonal, Unitary, QuaternionicUnitary };

/// Haar-distributed element of SO(n) (QR of a Gaussian matrix with sign
/// correction, then reflected into the identity component).
Eigen::MatrixXd haar_so(int n, Rng& rng);
/// Haar-distributed element of U(n) (QR of a complex Ginibre matrix with
/// phase correction on the R diagonal).
Eigen::MatrixXcd haar_unitary(int n, Rng& rng);
/// Haar-distributed element of Sp(n) as a 2n x 2n complex matrix whose
/// quaternionic block structure holds exactly by construction.
Eigen::MatrixXcd haar_sp(int n, Rng& rng);
/// Dispatching wrapper; SO(n) entries are returned with zero imaginary part.
Eigen::MatrixXcd haar_sample(CompactGroup group, int n, Rng& rng);

/// Uniform point on the unit sphere S^dim in R^{dim+1} (normalised Gaussian).
Eigen::VectorXd uniform_sphere_point(int dim, Rng& rng);

/// Checked constructors: verify the defining symmetry entrywise to 1e-12.
Eigen::MatrixXd require_symmetric(const Eigen::MatrixXd& m, double tol = 1e-12);
Eigen::MatrixXcd require_hermitian(const Eigen::MatrixXcd& m,
                                   double tol = 1e-12);

}  // namespace minfib
