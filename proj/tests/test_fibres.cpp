#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "minfib/fibre.hpp"

using namespace minfib;

namespace {

const Complex kI(0.0, 1.0);

Eigen::VectorXcd cvec(std::initializer_list<Complex> entries) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const Complex& e : entries) v(i++) = e;
  return v;
}

CatalogEntry so4_pair_field() {
  // x_11 + i x_12 as a trace family member on SO(4).
  Eigen::VectorXcd p = Eigen::VectorXcd::Zero(4);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(4);
  p(0) = 1.0;
  a(0) = 1.0;
  a(1) = kI;
  return so_trace_family(4, p, a);
}

}  // namespace

TEST_CASE("find_fibre_point reaches the zero fibre of phi_1") {
  const CatalogEntry phi = sphere_basic(2, 1);
  Rng rng(1);
  const ManifoldPoint seed = random_point(phi.field.spec(), rng);
  const FibrePoint fp = find_fibre_point(phi.field, {0, 0}, seed, rng);
  CHECK(fp.residual <= 1e-10);
  CHECK(std::abs(phi.field(fp.point)) <= 1e-10);
  CHECK(phi.field.spec().defining_residual(fp.point.ambient) <= 1e-10);
}

TEST_CASE("find_fibre_point converges from a seeded neighbourhood") {
  const CatalogEntry quad = sphere_quadratic(Eigen::MatrixXcd::Identity(2, 2));
  // Hand witness (1, i)/sqrt(2); seed slightly off it.
  Eigen::VectorXd near(4);
  const double c = 1.0 / std::sqrt(2.0);
  near << c + 0.05, 0.01, -0.02, c - 0.03;
  Rng rng(2);
  const ManifoldPoint seed = retract(quad.field.spec(), near);
  const FibrePoint fp = find_fibre_point(quad.field, {0, 0}, seed, rng);
  CHECK(fp.residual <= 1e-10);
  Eigen::VectorXd witness(4);
  witness << c, 0, 0, c;
  CHECK((fp.point.ambient - witness).norm() <= 0.2);
}

TEST_CASE("critical target behaviour of phi_1 over c = 1") {
  // The fibre over 1 is the single critical point (1, 0); either the search
  // fails outright or it lands on a point whose Jacobian is rank deficient.
  const CatalogEntry phi = sphere_basic(2, 1);
  Rng rng(3);
  FibreOptions opts;
  opts.max_restarts = 5;
  bool not_found = false;
  std::vector<FibrePoint> points;
  try {
    const ManifoldPoint seed = random_point(phi.field.spec(), rng);
    points.push_back(find_fibre_point(phi.field, {1, 0}, seed, rng, opts));
  } catch (const FibreNotFound& e) {
    not_found = true;
    CHECK(e.best_residual >= 0.0);
  }
  if (!not_found) {
    const RegularityCertificate cert =
        regularity_certificate(phi.field, points, opts);
    CHECK_FALSE(cert.certified);
  }
}

TEST_CASE("sample_fibre draws independent points") {
  const CatalogEntry phi = sphere_basic(2, 1);
  Rng rng(4);
  const FibreSample sample = sample_fibre(phi.field, {0, 0}, 20, rng);
  CHECK(sample.points.size() == 20);
  for (const auto& fp : sample.points) {
    CHECK(std::abs(phi.field(fp.point)) <= 1e-10);
    CHECK(fp.residual <= 1e-10);
  }

  // count = 1 reproduces a single find_fibre_point call on the same stream.
  Rng rng_a(5), rng_b(5);
  const FibreSample one = sample_fibre(phi.field, {0, 0}, 1, rng_a);
  Rng child = rng_b.split(0);
  const ManifoldPoint seed = random_point(phi.field.spec(), child);
  const FibrePoint direct = find_fibre_point(phi.field, {0, 0}, seed, child);
  CHECK((one.points[0].point.ambient - direct.point.ambient).norm() == 0.0);
}

TEST_CASE("sample_fibre reports multiplicities on discrete fibres") {
  // On CP^1 the zero fibre of the diagonal family consists of two points, so
  // repeated draws are unavoidable and recorded.
  const CatalogEntry e = cp_diagonal(1, cvec({Complex(1, 0)}));
  Rng rng(6);
  const FibreSample sample = sample_fibre(e.field, {0, 0}, 6, rng);
  CHECK(sample.points.size() == 6);
  CHECK(sample.duplicates > 0);
}

TEST_CASE("sample_fibre on the unitary minor determinant") {
  const CatalogEntry minor = u_minor(3);
  Rng rng(7);
  const FibreSample sample = sample_fibre(minor.field, {0, 0}, 20, rng);
  for (const auto& fp : sample.points) {
    CHECK(std::abs(minor.field(fp.point)) <= 1e-10);
    CHECK(minor.field.spec().defining_residual(fp.point.ambient) <= 1e-10);
  }
}

TEST_CASE("regularity certificates") {
  // phi_1 on the great circle: grad u and grad v are orthonormal, so the
  // smallest singular value is exactly 1.
  const CatalogEntry phi = sphere_basic(2, 1);
  Rng rng(8);
  const FibreSample sample = sample_fibre(phi.field, {0, 0}, 10, rng);
  const RegularityCertificate cert =
      regularity_certificate(phi.field, sample.points);
  CHECK(cert.certified);
  CHECK(cert.min_singular_value == doctest::Approx(1.0).epsilon(1e-6));

  const CatalogEntry quad = sphere_quadratic(Eigen::MatrixXcd::Identity(2, 2));
  const FibreSample qsample = sample_fibre(quad.field, {0, 0}, 20, rng);
  CHECK(regularity_certificate(quad.field, qsample.points).certified);

  const CatalogEntry spz = sp_z11(2);
  const FibreSample spsample = sample_fibre(spz.field, {0, 0}, 10, rng);
  CHECK(regularity_certificate(spz.field, spsample.points).certified);
}

TEST_CASE("fibre tangent frame spans the kernel") {
  const CatalogEntry phi = sphere_basic(2, 1);
  Rng rng(9);
  const FibrePoint fp = find_fibre_point(
      phi.field, {0, 0}, random_point(phi.field.spec(), rng), rng);
  const auto frame = fibre_tangent_frame(phi.field, fp);
  CHECK(frame.size() == 1);  // codimension 2 in dimension 3

  CalculusOptions calc;
  for (const auto& v : frame) {
    CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
    // Directional derivative of f along kernel directions vanishes.
    const Complex d = diff_along_curve(
        [&](double t) { return geodesic(fp.point, v, t).ambient; },
        [&](const Eigen::VectorXd& a) { return phi.field(a); }, calc.d1);
    CHECK(std::abs(d) <= 1e-8);
  }

  const CatalogEntry so = so4_pair_field();
  const FibrePoint sofp = find_fibre_point(
      so.field, {0, 0}, random_point(so.field.spec(), rng), rng);
  const auto soframe = fibre_tangent_frame(so.field, sofp);
  CHECK(soframe.size() == 4);  // 6 - 2
  const Eigen::VectorXcd coeffs = gradient(so.field, sofp.point);
  const TangentFrame full = tangent_frame(sofp.point);
  Eigen::VectorXd grad_u = Eigen::VectorXd::Zero(sofp.point.ambient.size());
  Eigen::VectorXd grad_v = grad_u;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    grad_u += coeffs(i).real() * full.vectors[i];
    grad_v += coeffs(i).imag() * full.vectors[i];
  }
  for (const auto& v : soframe) {
    CHECK(std::abs(v.dot(grad_u)) <= 1e-8);
    CHECK(std::abs(v.dot(grad_v)) <= 1e-8);
  }
}

TEST_CASE("curve_in_fibre stays on fibre and manifold") {
  const CatalogEntry phi = sphere_basic(2, 1);
  Rng rng(10);
  const FibrePoint fp = find_fibre_point(
      phi.field, {0, 0}, random_point(phi.field.spec(), rng), rng);
  const auto frame = fibre_tangent_frame(phi.field, fp);
  const Eigen::VectorXd& v = frame.front();

  CHECK((curve_in_fibre(phi.field, fp, v, 0.0).ambient - fp.point.ambient)
            .norm() <= 1e-12);

  // The zero fibre is a great circle, so the geodesic already lies in it and
  // the projection is a no-op.
  for (const double t : {-0.02, -0.01, 0.01, 0.02}) {
    const ManifoldPoint moved = curve_in_fibre(phi.field, fp, v, t);
    CHECK((moved.ambient - geodesic(fp.point, v, t).ambient).norm() <= 1e-12);
    CHECK(std::abs(phi.field(moved)) <= 1e-10);
    CHECK(phi.field.spec().defining_residual(moved.ambient) <= 1e-10);
  }

  CHECK_THROWS_AS(curve_in_fibre(phi.field, fp, v, 0.2), DegenerateInput);
}

TEST_CASE("mean curvature of the great circle vanishes") {
  const CatalogEntry phi = sphere_basic(2, 1);
  Rng rng(11);
  const FibrePoint fp = find_fibre_point(
      phi.field, {0, 0}, random_point(phi.field.spec(), rng), rng);
  const MeanCurvatureEstimate mc = mean_curvature(phi.field, fp, 1e-2);
  CHECK(mc.norm <= 1e-6);

  // Halving the step keeps the estimate within the O(h^2) envelope.
  const MeanCurvatureEstimate mc2 = mean_curvature(phi.field, fp, 5e-3);
  CHECK(std::abs(mc.norm - mc2.norm) <= 4.0 * 1e-2 * 1e-2);

  // Orthogonality invariants.
  const auto frame = fibre_tangent_frame(phi.field, fp);
  for (const auto& v : frame) CHECK(std::abs(mc.vector.dot(v)) <= 1e-8);
  CHECK(tangency_residual(fp.point, mc.vector) <= 1e-8);
}

TEST_CASE("mean curvature of a small circle matches the closed form") {
  // The fibre of phi_1 over 0.5 is a latitude circle with geodesic curvature
  // |c| / sqrt(1 - |c|^2).
  const CatalogEntry phi = sphere_basic(2, 1);
  Rng rng(12);
  const FibrePoint fp = find_fibre_point(
      phi.field, {0.5, 0}, random_point(phi.field.spec(), rng), rng);
  const double expected = 0.5 / std::sqrt(0.75);
  const MeanCurvatureEstimate mc = mean_curvature(phi.field, fp, 1e-2);
  CHECK(std::abs(mc.norm - expected) <= 5e-3);
  // O(h^2) convergence envelope between steps h and h/2.
  const MeanCurvatureEstimate mc2 = mean_curvature(phi.field, fp, 2e-2);
  CHECK(std::abs(mc2.norm - mc.norm) <= 4.0 * 2e-2 * 2e-2 * expected);
}

TEST_CASE("zero fibres of catalog families are minimal") {
  Rng rng(13);
  {
    const CatalogEntry so = so4_pair_field();
    const FibreSample sample = sample_fibre(so.field, {0, 0}, 5, rng);
    for (const auto& fp : sample.points)
      CHECK(mean_curvature(so.field, fp).norm <= 1e-3);
  }
  {
    const CatalogEntry minor = u_minor(3);
    const FibreSample sample = sample_fibre(minor.field, {0, 0}, 3, rng);
    for (const auto& fp : sample.points)
      CHECK(mean_curvature(minor.field, fp).norm <= 1e-3);
  }
}

TEST_CASE("mean curvature on a two-dimensional manifold is trivial") {
  // CP^1 has dimension 2: the fibre is discrete and minimal by convention.
  const CatalogEntry e = cp_diagonal(1, cvec({Complex(1, 0)}));
  Rng rng(14);
  const FibrePoint fp = find_fibre_point(
      e.field, {0, 0}, random_point(e.field.spec(), rng), rng);
  const MeanCurvatureEstimate mc = mean_curvature(e.field, fp);
  CHECK(mc.norm == 0.0);
  CHECK(mc.direction_accelerations.empty());
}

TEST_CASE("horizontal conformality up to first order on zero fibres") {
  const CatalogEntry phi = sphere_basic(2, 1);
  Rng rng(15);
  const FibrePoint fp = find_fibre_point(
      phi.field, {0, 0}, random_point(phi.field.spec(), rng), rng);
  const HcFirstOrderResult res = hc_first_order_check(phi.field, fp, 10, rng);
  CHECK(res.point_gap <= 1e-8);
  CHECK(res.max_derivative_gap <= 1e-5);

  // Negative control: at a generic point with phi != 0 the eigenvalue gap is
  // macroscopic.
  int witnesses = 0;
  for (int trial = 0; trial < 50 && witnesses < 5; ++trial) {
    const ManifoldPoint p = random_point(phi.field.spec(), rng);
    if (std::norm(phi.field(p)) < 0.05) continue;
    const FirstFundamentalData ffd = first_fundamental_eigenvalues(phi.field, p);
    if (ffd.degenerate || ffd.gram.trace() < 0.05) continue;
    ++witnesses;
    CHECK(std::abs(ffd.lam1 * ffd.lam1 - ffd.lam2 * ffd.lam2) > 1e-4);
  }
  CHECK(witnesses == 5);
}

TEST_CASE("tension balances the mean curvature term on zero fibres") {
  Rng rng(16);
  {
    const CatalogEntry phi = sphere_basic(2, 1);
    const FibrePoint fp = find_fibre_point(
        phi.field, {0, 0}, random_point(phi.field.spec(), rng), rng);
    CHECK(bg_identity_check(phi, fp) <= 1e-4);
  }
  {
    const CatalogEntry so = so4_pair_field();
    const FibrePoint fp = find_fibre_point(
        so.field, {0, 0}, random_point(so.field.spec(), rng), rng);
    CHECK(bg_identity_check(so, fp) <= 1e-3);
  }
  {
    const CatalogEntry u = u_trace_family(2, cvec({1, 0}), cvec({1, 0}));
    const FibrePoint fp = find_fibre_point(
        u.field, {0, 0}, random_point(u.field.spec(), rng), rng);
    CHECK(bg_identity_check(u, fp) <= 1e-3);
  }
}

TEST_CASE("fibre options are honoured") {
  const CatalogEntry phi = sphere_basic(2, 1);
  Rng rng(17);
  FibreOptions opts;
  opts.eps_fib = 1e-12;
  const FibrePoint fp = find_fibre_point(
      phi.field, {0, 0}, random_point(phi.field.spec(), rng), rng, opts);
  CHECK(fp.residual <= 1e-12);
}
