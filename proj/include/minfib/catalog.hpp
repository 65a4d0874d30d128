#pragma once

#include <vector>

#include "minfib/field.hpp"

namespace minfib {

enum class FamilyId {
  SphereBasic,
  CPBasic,
  SOTrace,
  UTrace,
  SpTrace,
  HomogeneousPoly,
  SphereQuadraticA,
  CPDiagonal,
  SO2nDegreeD,
  UFirstRowDegreeD,
  UMinor,
  SpZ11
};

std::string family_name(FamilyId id);

/// An eigenfunction together with the eigenvalue pair it is predicted to
/// satisfy and whether the zero fibre is claimed to be a regular (and hence
/// minimal, codimension-two) submanifold.
struct CatalogEntry {
  ScalarField field;
  EigenData predicted;
  bool regular_zero_claimed = false;
  FamilyId id = FamilyId::SphereBasic;
};

/// z_j / |z| on S^{2n-1}; predicted (-(2n-1), -1).
CatalogEntry sphere_basic(int n, int j);

/// z_j conj(z_k) / |z|^2 on CP^n for 1 <= j <= alpha < k <= n+1;
/// predicted (-4(n+1), -4).
CatalogEntry cp_basic(int n, int j, int k, int alpha);

/// Linear trace family on SO(n): x -> sum_{j,a} p_j a_a x_{ja} with a in a
/// maximal isotropic subspace (a^T a = 0); predicted (-(n-1)/2, -1/2).
CatalogEntry so_trace_family(int n, const Eigen::VectorXcd& p,
                             const Eigen::VectorXcd& a);

/// Linear trace family on U(n): z -> sum p_j a_a z_{ja}; predicted (-n, -1).
CatalogEntry u_trace_family(int n, const Eigen::VectorXcd& p,
                            const Eigen::VectorXcd& a);

/// Linear trace family on Sp(n): q -> sum_j p_j sum_a (a_a z_{ja} + b_a w_{ja});
/// predicted (-(2n+1)/2, -1/2).
CatalogEntry sp_trace_family(int n, const Eigen::VectorXcd& p,
                             const Eigen::VectorXcd& a,
                             const Eigen::VectorXcd& b);

/// One monomial of a polynomial in catalog fields: coeff * prod f_i^{e_i}.
struct MonomialTerm {
  Complex coeff;
  std::vector<int> exponents;
};

/// Homogeneous degree-d polynomial in members of one eigenfamily; predicted
/// (d lambda + d(d-1) mu, d^2 mu). Throws MixedFamilies when the base entries
/// disagree on their predicted pair.
CatalogEntry homogeneous_poly(const std::vector<CatalogEntry>& entries,
                              const std::vector<MonomialTerm>& terms,
                              int degree);

/// Quadratic family on S^{2n-1} built from an invertible coefficient matrix:
/// z -> (sum_{k != l} A_{kl} z_k z_l + (1/2) sum_k A_{kk} z_k^2) / |z|^2;
/// predicted (-4n, -4), regular zero fibre.
CatalogEntry sphere_quadratic(const Eigen::MatrixXcd& a);

/// Diagonal family on CP^{2n-1}: [z] -> sum_k a_k z_k conj(z_{n+k}) / |z|^2
/// with all a_k nonzero; predicted (-8n, -4), regular zero fibre.
CatalogEntry cp_diagonal(int n, const Eigen::VectorXcd& a);

/// Degree-d family on SO(2n): x -> sum_k a_k (x_{1,2k-1} + i x_{1,2k})^d with
/// all a_k nonzero; predicted from the degree-d formula over the base pair
/// (-(2n-1)/2, -1/2), regular zero fibre.
CatalogEntry so2n_degree_d(int n, const Eigen::VectorXcd& a, int d);

/// First-row degree-d family on U(n): z -> sum_k a_k z_{1k}^d with all a_k
/// nonzero; predicted (-d n - d(d-1), -d^2), regular zero fibre.
CatalogEntry u_first_row_degree_d(int n, const Eigen::VectorXcd& a, int d);

/// 2x2 minor determinant z_11 z_22 - z_12 z_21 on U(n), n >= 3; predicted
/// (-2(n-1), -2), regular zero fibre.
CatalogEntry u_minor(int n);

/// Top-left coordinate q -> z_11 on Sp(n); predicted (-(2n+1)/2, -1/2),
/// regular zero fibre.
CatalogEntry sp_z11(int n);

/// Standard maximal isotropic basis of C^n: (e_{2k-1} + i e_{2k})/sqrt(2),
/// k = 1..floor(n/2). All pairwise unconjugated products vanish.
std::vector<Eigen::VectorXcd> isotropic_basis(int n);

}  // namespace minfib
