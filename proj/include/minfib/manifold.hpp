#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "minfib/numerics.hpp"

namespace minfib {

enum class ManifoldKind {
  Sphere,              // S^{2n-1} in R^{2n}, identified with C^n
  ComplexProjective,   // CP^n, stored as a unit lift in C^{n+1}
  SpecialOrthogonal,   // SO(n), real n x n
  Unitary,             // U(n), complex n x n
  QuaternionicUnitary  // Sp(n), complex 2n x 2n with quaternionic blocks
};

/// Identifies one of the five supported manifolds together with its size
/// parameter n. Points and tangent vectors are flat real vectors (see
/// flatten.hpp); the metric is the Euclidean dot product of these flats
/// for every kind, which is the round metric on spheres, the submersion
/// metric on CP^n and Re trace(ZW*) on the matrix groups.
struct ManifoldSpec {
  ManifoldKind kind;
  int n;

  int dim() const;           // intrinsic real dimension m
  int ambient_size() const;  // length of the flat ambient vector
  std::string name() const;
  std::vector<std::string> coordinate_names() const;

  /// Max violation of the defining relations at `ambient`.
  double defining_residual(const Eigen::VectorXd& ambient) const;

  bool operator==(const ManifoldSpec&) const = default;

  static constexpr double kPointTol = 1e-10;
};

struct ManifoldPoint {
  ManifoldSpec spec;
  Eigen::VectorXd ambient;
};

/// Validating factory; throws DegenerateInput when the defining relations are
/// violated beyond ManifoldSpec::kPointTol.
ManifoldPoint make_point(const ManifoldSpec& spec,
                         const Eigen::VectorXd& ambient);

/// Ordered orthonormal basis of the tangent space at `base`.
struct TangentFrame {
  ManifoldPoint base;
  std::vector<Eigen::VectorXd> vectors;
};

/// How far X is from being tangent at p (0 for exact tangency).
double tangency_residual(const ManifoldPoint& p, const Eigen::VectorXd& x);

/// Riemannian metric; throws TangencyViolation when either argument fails
/// tangency beyond 1e-8.
double metric(const ManifoldPoint& p, const Eigen::VectorXd& x,
              const Eigen::VectorXd& y);

/// Deterministic orthonormal tangent frame. Matrix groups use the canonical
/// Lie algebra basis left-translated to the point; spheres use a Householder
/// map of the equatorial basis; CP^n frames are horizontal in the lift.
TangentFrame tangent_frame(const ManifoldPoint& p);

/// Unit-speed geodesic through p with initial velocity x, evaluated at t.
ManifoldPoint geodesic(const ManifoldPoint& p, const Eigen::VectorXd& x,
                       double t);

/// Metric projection back onto the manifold: normalisation for sphere / CP
/// lifts, the unitary (or special orthogonal) polar factor for the groups.
ManifoldPoint retract(const ManifoldSpec& spec, const Eigen::VectorXd& ambient);

ManifoldPoint random_point(const ManifoldSpec& spec, Rng& rng);

/// Distance between ambient representations. Euclidean for all kinds except
/// CP^n, whose lifts are compared modulo the phase of the representative.
double point_distance(const ManifoldSpec& spec, const Eigen::VectorXd& a,
                      const Eigen::VectorXd& b);

// --- canonical Lie algebra bases -------------------------------------------

/// (E_rs - E_sr)/sqrt(2), 1-based r < s.
Eigen::MatrixXd so_basis(int n, int r, int s);
/// Skew element of u(n): (E_rs - E_sr)/sqrt(2).
Eigen::MatrixXcd u_basis_skew(int n, int r, int s);
/// Symmetric element of u(n): i (E_rs + E_sr)/sqrt(2).
Eigen::MatrixXcd u_basis_sym(int n, int r, int s);
/// Diagonal element of u(n): i E_tt.
Eigen::MatrixXcd u_basis_diag(int n, int t);

enum class SpBasisFamily {
  DiagSkew,  // diag(Y, Y)/sqrt(2)
  DiagSym,   // diag(iX, -iX)/sqrt(2)
  OffSymI,   // [[0, iX], [iX, 0]]/sqrt(2)
  OffSym,    // [[0, X], [-X, 0]]/sqrt(2)
  DiagUnit,  // diag(iD, -iD)/sqrt(2)
  OffUnitI,  // [[0, iD], [iD, 0]]/sqrt(2)
  OffUnit    // [[0, D], [-D, 0]]/sqrt(2)
};

/// Orthonormal basis element of sp(n) as a 2n x 2n matrix. For the pairwise
/// families pass 1-based r < s; for the unit families pass t in r (s ignored).
Eigen::MatrixXcd sp_basis(SpBasisFamily family, int n, int r, int s = 0);

// Positions of named basis elements inside tangent_frame(...).vectors.
int so_frame_index(int n, int r, int s);
int u_frame_index_skew(int n, int r, int s);
int u_frame_index_sym(int n, int r, int s);
int u_frame_index_diag(int n, int t);
int sp_frame_index(SpBasisFamily family, int n, int r, int s = 0);

}  // namespace minfib
