#include "minfib/fibre.hpp"

#include <cmath>
#include <optional>

namespace minfib {

namespace {

Eigen::VectorXd frame_combination(const TangentFrame& frame,
                                  const Eigen::VectorXd& coeffs) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(frame.base.ambient.size());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    out += coeffs(i) * frame.vectors[static_cast<std::size_t>(i)];
  return out;
}

struct GaussNewtonResult {
  ManifoldPoint point;
  double residual;
  bool converged;
};

// Minimal-norm Gauss-Newton on the 2-vector (Re f - Re c, Im f - Im c); each
// step lives in span{grad u, grad v}, so it is orthogonal to the fibre
// tangent, and is followed by a retraction.
GaussNewtonResult gauss_newton_to_fibre(const ScalarField& f, Complex target,
                                        const ManifoldPoint& seed,
                                        const FibreOptions& opts) {
  ManifoldPoint p = seed;
  double res = std::abs(f(p) - target);
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    if (res <= opts.eps_fib) return {p, res, true};
    const TangentFrame frame = tangent_frame(p);
    const Eigen::VectorXcd coeffs = gradient_in_frame(f, frame, opts.calculus);
    const Eigen::VectorXd du = coeffs.real();
    const Eigen::VectorXd dv = coeffs.imag();
    const Complex value = f(p);
    const Eigen::Vector2d rhs(value.real() - target.real(),
                              value.imag() - target.imag());

    // Solve (J J^T + damping) y = -r, step = J^T y.
    Eigen::Matrix2d jjt;
    jjt << du.dot(du), du.dot(dv), du.dot(dv), dv.dot(dv);
    const double damping = 1e-14 * (jjt(0, 0) + jjt(1, 1));
    jjt(0, 0) += damping;
    jjt(1, 1) += damping;
    const double det = jjt(0, 0) * jjt(1, 1) - jjt(0, 1) * jjt(1, 0);
    if (!(det > 1e-300)) break;  // gradient collapsed: stall, caller restarts
    Eigen::Vector2d y;
    y(0) = (-rhs(0) * jjt(1, 1) + rhs(1) * jjt(0, 1)) / det;
    y(1) = (rhs(0) * jjt(1, 0) - rhs(1) * jjt(0, 0)) / det;
    const Eigen::VectorXd step_coeffs = du * y(0) + dv * y(1);
    const Eigen::VectorXd step = frame_combination(frame, step_coeffs);

    bool accepted = false;
    double scale = 1.0;
    for (int back = 0; back < 8; ++back, scale *= 0.5) {
      ManifoldPoint candidate;
      try {
        candidate = retract(p.spec, p.ambient + scale * step);
      } catch (const RetractFailed&) {
        continue;
      }
      const double cand_res = std::abs(f(candidate) - target);
      if (cand_res < res) {
        p = candidate;
        res = cand_res;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  return {p, res, res <= opts.eps_fib};
}

}  // namespace

FibrePoint find_fibre_point(const ScalarField& f, Complex target,
                            const ManifoldPoint& seed, Rng& rng,
                            const FibreOptions& opts) {
  GaussNewtonResult best = gauss_newton_to_fibre(f, target, seed, opts);
  if (best.converged) return {best.point, best.residual, target};
  for (int restart = 0; restart < opts.max_restarts; ++restart) {
    const ManifoldPoint fresh = random_point(f.spec(), rng);
    const GaussNewtonResult attempt =
        gauss_newton_to_fibre(f, target, fresh, opts);
    if (attempt.converged) return {attempt.point, attempt.residual, target};
    if (attempt.residual < best.residual) best = attempt;
  }
  throw FibreNotFound("no fibre point of '" + f.label() +
                          "' found; best residual " +
                          std::to_string(best.residual),
                      best.residual);
}

FibreSample sample_fibre(const ScalarField& f, Complex target, int count,
                         Rng& rng, const FibreOptions& opts) {
  if (count < 1) throw DegenerateInput("sample_fibre: count must be >= 1");
  FibreSample sample;
  const int retry_budget = 10 * count;
  int draws = 0;
  std::uint64_t stream = 0;
  while (static_cast<int>(sample.points.size()) < count) {
    Rng child = rng.split(stream++);
    const ManifoldPoint seed = random_point(f.spec(), child);
    const FibrePoint fp = find_fibre_point(f, target, seed, child, opts);
    ++draws;
    bool duplicate = false;
    for (const auto& prev : sample.points)
      if (point_distance(f.spec(), prev.point.ambient, fp.point.ambient) <
          1e-6) {
        duplicate = true;
        break;
      }
    if (duplicate && draws < retry_budget) continue;
    if (duplicate) ++sample.duplicates;
    sample.points.push_back(fp);
  }
  return sample;
}

Eigen::MatrixXd fibre_jacobian(const ScalarField& f, const ManifoldPoint& p,
                               const CalculusOptions& opts) {
  const Eigen::VectorXcd coeffs = gradient(f, p, opts);
  Eigen::MatrixXd jac(2, coeffs.size());
  jac.row(0) = coeffs.real();
  jac.row(1) = coeffs.imag();
  return jac;
}

namespace {

double min_singular_value(const Eigen::MatrixXd& jac) {
  const Eigen::VectorXd du = jac.row(0);
  const Eigen::VectorXd dv = jac.row(1);
  const auto [lo, hi] = eig_sym2(du.dot(du), du.dot(dv), dv.dot(dv));
  (void)hi;
  return std::sqrt(std::max(lo, 0.0));
}

}  // namespace

RegularityCertificate regularity_certificate(const ScalarField& f,
                                             const std::vector<FibrePoint>& points,
                                             const FibreOptions& opts) {
  RegularityCertificate cert;
  cert.threshold = opts.sigma_min;
  cert.points_tested = static_cast<int>(points.size());
  cert.min_singular_value = std::numeric_limits<double>::infinity();
  for (const auto& fp : points)
    cert.min_singular_value =
        std::min(cert.min_singular_value,
                 min_singular_value(fibre_jacobian(f, fp.point, opts.calculus)));
  if (points.empty()) cert.min_singular_value = 0.0;
  cert.certified = cert.min_singular_value > cert.threshold;
  return cert;
}

std::vector<Eigen::VectorXd> fibre_tangent_frame(const ScalarField& f,
                                                 const FibrePoint& fp,
                                                 const FibreOptions& opts) {
  const TangentFrame frame = tangent_frame(fp.point);
  const int m = static_cast<int>(frame.vectors.size());
  const Eigen::MatrixXd jac = fibre_jacobian(f, fp.point, opts.calculus);
  if (min_singular_value(jac) <= opts.sigma_min)
    throw DegeneratePoint("fibre_tangent_frame: Jacobian below regularity "
                          "threshold at '" + f.label() + "' fibre point");

  // Orthonormalise {grad u, grad v} in coefficient space, then project the
  // canonical directions; Gram-Schmidt in frame order keeps the result
  // deterministic.
  const Eigen::VectorXd du = jac.row(0);
  const Eigen::VectorXd dv = jac.row(1);
  const Eigen::VectorXd n1 = du / du.norm();
  Eigen::VectorXd w = dv - dv.dot(n1) * n1;
  const Eigen::VectorXd n2 = w / w.norm();

  std::vector<Eigen::VectorXd> kernel;
  kernel.reserve(m - 2);
  for (int i = 0; i < m && static_cast<int>(kernel.size()) < m - 2; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
    v(i) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      v -= v.dot(n1) * n1;
      v -= v.dot(n2) * n2;
      for (const auto& k : kernel) v -= v.dot(k) * k;
    }
    const double nrm = v.norm();
    if (nrm > 1e-7) kernel.push_back(v / nrm);
  }
  if (static_cast<int>(kernel.size()) != m - 2)
    throw DegeneratePoint("fibre_tangent_frame: kernel dimension mismatch");

  std::vector<Eigen::VectorXd> ambient;
  ambient.reserve(kernel.size());
  for (const auto& k : kernel) ambient.push_back(frame_combination(frame, k));
  return ambient;
}

ManifoldPoint curve_in_fibre(const ScalarField& f, const FibrePoint& fp,
                             const Eigen::VectorXd& v, double t,
                             const FibreOptions& opts) {
  if (std::abs(t) > 0.1 + 1e-15)
    throw DegenerateInput("curve_in_fibre: |t| must be <= 0.1");
  const ManifoldPoint moved = geodesic(fp.point, v, t);
  const GaussNewtonResult projected =
      gauss_newton_to_fibre(f, fp.target, moved, opts);
  if (!projected.converged)
    throw ProjectionFailed("curve_in_fibre: projection stalled at residual " +
                           std::to_string(projected.residual));
  return projected.point;
}

MeanCurvatureEstimate mean_curvature(const ScalarField& f, const FibrePoint& fp,
                                     double step, const FibreOptions& opts) {
  const TangentFrame frame = tangent_frame(fp.point);
  const int m = static_cast<int>(frame.vectors.size());
  MeanCurvatureEstimate est;
  est.step = step;
  est.vector = Eigen::VectorXd::Zero(fp.point.ambient.size());
  if (m == 2) return est;  // discrete fibre: nothing to average

  const std::vector<Eigen::VectorXd> fibre_frame =
      fibre_tangent_frame(f, fp, opts);
  const Stencil stencil = Stencil::second_derivative(step, 5);
  const auto offsets = stencil.offsets();
  const auto weights = stencil.weights();

  Eigen::VectorXd acc = Eigen::VectorXd::Zero(fp.point.ambient.size());
  for (const auto& dir : fibre_frame) {
    Eigen::VectorXd second = Eigen::VectorXd::Zero(fp.point.ambient.size());
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const Eigen::VectorXd ambient =
          (offsets[i] == 0.0)
              ? fp.point.ambient
              : curve_in_fibre(f, fp, dir, offsets[i], opts).ambient;
      second += weights[i] * ambient;
    }
    est.direction_accelerations.push_back(second.norm());
    acc += second;
  }
  acc /= static_cast<double>(m - 2);

  // Project onto T_pM, then orthogonally to the fibre tangent.
  Eigen::VectorXd h = Eigen::VectorXd::Zero(acc.size());
  for (const auto& x : frame.vectors) h += acc.dot(x) * x;
  for (const auto& w : fibre_frame) h -= h.dot(w) * w;
  est.vector = h;
  est.norm = h.norm();
  return est;
}

MeanCurvatureEstimate mean_curvature(const ScalarField& f, const FibrePoint& fp,
                                     const FibreOptions& opts) {
  return mean_curvature(f, fp, opts.curvature_step, opts);
}

HcFirstOrderResult hc_first_order_check(const ScalarField& f,
                                        const FibrePoint& fp, int directions,
                                        Rng& rng, const FibreOptions& opts) {
  const auto gap_at = [&](const ManifoldPoint& p) {
    const FirstFundamentalData ffd =
        first_fundamental_eigenvalues(f, p, opts.calculus);
    if (ffd.degenerate)
      throw DegeneratePoint("hc_first_order_check: critical point of '" +
                            f.label() + "'");
    return ffd.lam1 * ffd.lam1 - ffd.lam2 * ffd.lam2;
  };

  HcFirstOrderResult out;
  out.point_gap = std::abs(gap_at(fp.point));

  const TangentFrame frame = tangent_frame(fp.point);
  const int m = static_cast<int>(frame.vectors.size());
  for (int k = 0; k < directions; ++k) {
    Eigen::VectorXd coeffs(m);
    for (int i = 0; i < m; ++i) coeffs(i) = rng.gaussian();
    coeffs.normalize();
    const Eigen::VectorXd dir = frame_combination(frame, coeffs);
    const Complex deriv = diff_along_curve(
        [&](double t) { return geodesic(fp.point, dir, t).ambient; },
        [&](const Eigen::VectorXd& a) {
          return Complex(gap_at({fp.point.spec, a}), 0.0);
        },
        opts.calculus.d1);
    out.max_derivative_gap =
        std::max(out.max_derivative_gap, std::abs(deriv.real()));
  }
  return out;
}

double bg_identity_check(const CatalogEntry& entry, const FibrePoint& fp,
                         const FibreOptions& opts) {
  const ScalarField& f = entry.field;
  const TangentFrame frame = tangent_frame(fp.point);
  const int m = static_cast<int>(frame.vectors.size());
  const Complex tau = tension_in_frame(f, frame, opts.calculus);
  const MeanCurvatureEstimate mc = mean_curvature(f, fp, opts);
  const Eigen::VectorXcd coeffs = gradient_in_frame(f, frame, opts.calculus);
  Complex df_of_h(0.0, 0.0);
  for (int i = 0; i < m; ++i)
    df_of_h += coeffs(i) * mc.vector.dot(frame.vectors[i]);
  return std::abs(tau + static_cast<double>(m - 2) * df_of_h);
}

}  // namespace minfib
