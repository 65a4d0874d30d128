#pragma once

#include "minfib/calculus.hpp"
#include "minfib/catalog.hpp"

namespace minfib {

struct FibreOptions {
  double eps_fib = 1e-10;     // residual tolerance for membership
  int max_iterations = 100;   // Gauss-Newton iterations per attempt
  int max_restarts = 20;      // fresh random seeds after a failed attempt
  double sigma_min = 1e-3;    // regularity threshold on the Jacobian
  double curvature_step = 1e-2;
  CalculusOptions calculus;
};

/// A solved point of the fibre f^{-1}({target}).
struct FibrePoint {
  ManifoldPoint point;
  double residual = 0.0;
  Complex target{0.0, 0.0};
};

/// Gauss-Newton search for a fibre point, stepping in the tangent space with
/// minimal-norm increments and retracting. Restarts from random points after
/// a stalled attempt; throws FibreNotFound (carrying the best residual seen)
/// when every attempt fails.
FibrePoint find_fibre_point(const ScalarField& f, Complex target,
                            const ManifoldPoint& seed, Rng& rng,
                            const FibreOptions& opts = {});

struct FibreSample {
  std::vector<FibrePoint> points;
  int duplicates = 0;  // entries closer than 1e-6 to an earlier one
};

/// `count` independently seeded fibre points. Near-coincident points are
/// re-drawn within a retry budget and otherwise kept, with the multiplicity
/// reported (low-volume fibres legitimately repeat).
FibreSample sample_fibre(const ScalarField& f, Complex target, int count,
                         Rng& rng, const FibreOptions& opts = {});

/// The 2 x m Jacobian of (Re f, Im f) over the tangent frame at p.
Eigen::MatrixXd fibre_jacobian(const ScalarField& f, const ManifoldPoint& p,
                               const CalculusOptions& opts = {});

struct RegularityCertificate {
  int points_tested = 0;
  double min_singular_value = 0.0;
  double threshold = 0.0;
  bool certified = false;
};

/// Smallest singular value of the Jacobian over the given fibre points.
RegularityCertificate regularity_certificate(
    const ScalarField& f, const std::vector<FibrePoint>& points,
    const FibreOptions& opts = {});

/// Orthonormal basis of ker df inside the tangent space (dimension m - 2 at
/// regular points): deterministic Gram-Schmidt of the canonical frame
/// projections. Throws DegeneratePoint below the regularity threshold.
std::vector<Eigen::VectorXd> fibre_tangent_frame(const ScalarField& f,
                                                 const FibrePoint& fp,
                                                 const FibreOptions& opts = {});

/// Geodesic from fp with fibre-tangent velocity v, re-projected onto the
/// fibre (Gauss-Newton, moving orthogonally to the fibre tangent). |t| <= 0.1.
ManifoldPoint curve_in_fibre(const ScalarField& f, const FibrePoint& fp,
                             const Eigen::VectorXd& v, double t,
                             const FibreOptions& opts = {});

struct MeanCurvatureEstimate {
  Eigen::VectorXd vector;  // ambient representation, tangent to M, normal to the fibre
  double norm = 0.0;
  double step = 0.0;
  std::vector<double> direction_accelerations;  // per fibre-frame direction
};

/// Mean curvature vector of the fibre at fp: the average over the fibre
/// frame of second derivatives of in-fibre curves, projected onto the
/// tangent space of M and orthogonally to the fibre tangent. On manifolds of
/// dimension 2 the fibre is discrete and the estimate is zero.
MeanCurvatureEstimate mean_curvature(const ScalarField& f, const FibrePoint& fp,
                                     double step, const FibreOptions& opts = {});
MeanCurvatureEstimate mean_curvature(const ScalarField& f, const FibrePoint& fp,
                                     const FibreOptions& opts = {});

struct HcFirstOrderResult {
  double point_gap = 0.0;        // |lam1^2 - lam2^2| at the point
  double max_derivative_gap = 0.0;  // max first derivative along random directions
};

/// Horizontal-conformality-up-to-first-order check at a zero-fibre point.
HcFirstOrderResult hc_first_order_check(const ScalarField& f,
                                        const FibrePoint& fp, int directions,
                                        Rng& rng,
                                        const FibreOptions& opts = {});

/// Residual of |tau(f) + (m-2) df(H)| at fp, with both sides computed
/// independently (tau by finite differences, H via mean_curvature).
double bg_identity_check(const CatalogEntry& entry, const FibrePoint& fp,
                         const FibreOptions& opts = {});

}  // namespace minfib
