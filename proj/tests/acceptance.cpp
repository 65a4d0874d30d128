// Acceptance suite: drives every stated verification target end to end and
// prints one pass/fail line per criterion. Exit code = number of failures.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "minfib/runner.hpp"

using namespace minfib;
namespace fs = std::filesystem;

namespace {

const Complex kI(0.0, 1.0);
int failures = 0;

void report(int idx, const std::string& what, bool pass,
            const std::string& detail) {
  std::cout << "criterion " << idx << " (" << what << "): "
            << (pass ? "PASS" : "FAIL") << " - " << detail << "\n";
  if (!pass) ++failures;
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific << v;
  return ss.str();
}

Eigen::VectorXcd cvec(std::initializer_list<Complex> entries) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (const Complex& e : entries) v(i++) = e;
  return v;
}

Eigen::VectorXcd unit(int n, int k) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  v(k) = 1.0;
  return v;
}

Eigen::MatrixXcd generic_matrix(int n, Rng& rng) {
  Eigen::MatrixXcd a(n, n);
  do {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        a(r, c) = Complex(rng.gaussian(), rng.gaussian());
  } while (std::abs(a.determinant()) <= 1e-10);
  return a;
}

struct FamilyCase {
  std::string name;
  std::vector<CatalogEntry> members;
  EigenData expected;  // the paper's constants, pinned independently
};

std::vector<FamilyCase> eigenfamily_cases() {
  std::vector<FamilyCase> cases;
  auto add = [&](std::string name, std::vector<CatalogEntry> members,
                 Complex lambda, Complex mu) {
    cases.push_back({std::move(name), std::move(members), {lambda, mu}});
  };

  add("sphere_basic S3", {sphere_basic(2, 1), sphere_basic(2, 2)}, {-3, 0},
      {-1, 0});
  add("sphere_basic S5", {sphere_basic(3, 1), sphere_basic(3, 3)}, {-5, 0},
      {-1, 0});
  add("cp_basic CP1", {cp_basic(1, 1, 2, 1)}, {-8, 0}, {-4, 0});
  add("cp_basic CP2", {cp_basic(2, 1, 2, 1), cp_basic(2, 1, 3, 1)}, {-12, 0},
      {-4, 0});
  add("cp_basic CP3", {cp_basic(3, 1, 2, 1), cp_basic(3, 1, 4, 1)}, {-16, 0},
      {-4, 0});
  {
    const auto iso3 = isotropic_basis(3);
    add("so_trace SO(3)",
        {so_trace_family(3, unit(3, 0), iso3[0]),
         so_trace_family(3, unit(3, 0), 2.0 * kI * iso3[0])},
        {-1, 0}, {-0.5, 0});
  }
  {
    const auto iso4 = isotropic_basis(4);
    add("so_trace SO(4)",
        {so_trace_family(4, unit(4, 0), iso4[0]),
         so_trace_family(4, unit(4, 0), iso4[1])},
        {-1.5, 0}, {-0.5, 0});
  }
  add("u_trace U(2)",
      {u_trace_family(2, unit(2, 0), unit(2, 0)),
       u_trace_family(2, unit(2, 0), unit(2, 1))},
      {-2, 0}, {-1, 0});
  add("u_trace U(3)",
      {u_trace_family(3, unit(3, 0), unit(3, 0)),
       u_trace_family(3, unit(3, 0), unit(3, 2))},
      {-3, 0}, {-1, 0});
  add("sp_trace Sp(2)",
      {sp_trace_family(2, unit(2, 0), unit(2, 0), cvec({0, 0})),
       sp_trace_family(2, unit(2, 0), cvec({0, 0}), unit(2, 0))},
      {-2.5, 0}, {-0.5, 0});
  add("homogeneous_poly S3 d2",
      {homogeneous_poly({sphere_basic(2, 1), sphere_basic(2, 2)},
                        {{Complex(1, 0), {2, 0}}, {Complex(0, 1), {1, 1}}},
                        2)},
      {-8, 0}, {-4, 0});
  add("homogeneous_poly U(2) d2",
      {homogeneous_poly({u_trace_family(2, unit(2, 0), unit(2, 0)),
                         u_trace_family(2, unit(2, 0), unit(2, 1))},
                        {{Complex(1, 0), {2, 0}}, {Complex(1, 0), {1, 1}}},
                        2)},
      {-6, 0}, {-4, 0});
  {
    Rng arng(0xA11CE);
    add("sphere_quadratic S3", {sphere_quadratic(generic_matrix(2, arng))},
        {-8, 0}, {-4, 0});
    add("sphere_quadratic S5",
        {sphere_quadratic(Eigen::MatrixXcd::Identity(3, 3))}, {-12, 0},
        {-4, 0});
  }
  add("cp_diagonal CP1", {cp_diagonal(1, cvec({1}))}, {-8, 0}, {-4, 0});
  add("cp_diagonal CP3", {cp_diagonal(2, cvec({1, Complex(1, 1)}))}, {-16, 0},
      {-4, 0});
  add("so2n_degree_d SO(4) d2", {so2n_degree_d(2, cvec({1, 1}), 2)}, {-4, 0},
      {-2, 0});
  add("u_first_row U(2) d2", {u_first_row_degree_d(2, cvec({1, 1}), 2)},
      {-6, 0}, {-4, 0});
  add("u_first_row U(3) d2",
      {u_first_row_degree_d(3, cvec({1, 1, Complex(0, 1)}), 2)}, {-8, 0},
      {-4, 0});
  add("u_minor U(3)", {u_minor(3)}, {-4, 0}, {-2, 0});
  add("sp_z11 Sp(2)", {sp_z11(2)}, {-2.5, 0}, {-0.5, 0});
  return cases;
}

struct FibreCase {
  std::string name;
  CatalogEntry entry;
};

std::vector<FibreCase> fibre_cases() {
  std::vector<FibreCase> cases;
  cases.push_back({"phi_1 on S3", sphere_basic(2, 1)});
  cases.push_back({"phi_1 on S5", sphere_basic(3, 1)});
  cases.push_back({"Phi_A identity on S3",
                   sphere_quadratic(Eigen::MatrixXcd::Identity(2, 2))});
  {
    Rng arng(0xA11CE);
    cases.push_back(
        {"Phi_A generic on S3", sphere_quadratic(generic_matrix(2, arng))});
    cases.push_back(
        {"Phi_A generic on S5", sphere_quadratic(generic_matrix(3, arng))});
  }
  cases.push_back({"Phi_A identity on S5",
                   sphere_quadratic(Eigen::MatrixXcd::Identity(3, 3))});
  cases.push_back({"Phi_a on CP1", cp_diagonal(1, cvec({1}))});
  cases.push_back(
      {"Phi_a on CP3", cp_diagonal(2, cvec({1, Complex(1, 1)}))});
  {
    const auto iso4 = isotropic_basis(4);
    cases.push_back({"x11 + i x12 on SO(4)",
                     so_trace_family(4, unit(4, 0), std::sqrt(2.0) * iso4[0])});
  }
  cases.push_back(
      {"so2n degree 2 on SO(4)", so2n_degree_d(2, cvec({1, 1}), 2)});
  cases.push_back(
      {"z11 on U(3)", u_trace_family(3, unit(3, 0), unit(3, 0))});
  cases.push_back({"minor on U(3)", u_minor(3)});
  cases.push_back({"first row degree 2 on U(2)",
                   u_first_row_degree_d(2, cvec({1, 1}), 2)});
  cases.push_back({"z11 on Sp(2)", sp_z11(2)});
  return cases;
}

// --- criteria ---------------------------------------------------------------

void criterion_1() {
  double worst_t = 0.0, worst_k = 0.0;
  std::string worst_name = "-";
  bool constants_ok = true;
  Rng root(1001);
  for (const auto& fam : eigenfamily_cases()) {
    if (std::abs(fam.members.front().predicted.lambda - fam.expected.lambda) >
            1e-12 ||
        std::abs(fam.members.front().predicted.mu - fam.expected.mu) > 1e-12) {
      constants_ok = false;
      std::cout << "  constant mismatch in " << fam.name << "\n";
    }
    Rng rng = root.split(std::hash<std::string>{}(fam.name));
    for (int k = 0; k < 50; ++k) {
      const ManifoldPoint p =
          random_point(fam.members.front().field.spec(), rng);
      const TangentFrame frame = tangent_frame(p);
      std::vector<Eigen::VectorXcd> grads;
      std::vector<Complex> values;
      for (const auto& e : fam.members) {
        const Complex value = e.field(p);
        const double res = std::abs(tension_in_frame(e.field, frame) -
                                    fam.expected.lambda * value);
        if (res > worst_t) worst_t = res, worst_name = fam.name;
        grads.push_back(gradient_in_frame(e.field, frame));
        values.push_back(value);
      }
      for (std::size_t i = 0; i < grads.size(); ++i)
        for (std::size_t j = i; j < grads.size(); ++j) {
          Complex kappa(0, 0);
          for (Eigen::Index t = 0; t < grads[i].size(); ++t)
            kappa += grads[i](t) * grads[j](t);
          worst_k = std::max(worst_k, std::abs(kappa - fam.expected.mu *
                                                           values[i] *
                                                           values[j]));
        }
    }
  }
  const bool pass = constants_ok && worst_t <= 1e-4 && worst_k <= 1e-4;
  report(1, "eigenfamily constants", pass,
         "max tension residual " + fmt(worst_t) + ", max conformality residual " +
             fmt(worst_k) + " (tol 1e-4, worst family: " + worst_name + ")");
}

void criterion_2() {
  Rng root(1002);
  double worst = 0.0;
  for (const int d : {2, 3}) {
    const double dd = d;
    {
      std::vector<MonomialTerm> terms;
      std::vector<int> e1(2, 0), e2(2, 0);
      e1[0] = d;
      e2[0] = d - 1;
      e2[1] = 1;
      terms.push_back({Complex(1, 0), e1});
      terms.push_back({Complex(0.5, 0.5), e2});
      const CatalogEntry poly = homogeneous_poly(
          {sphere_basic(2, 1), sphere_basic(2, 2)}, terms, d);
      Rng rng = root.split(d);
      const EigenpairEstimate est =
          estimate_eigenpair(poly.field, poly.field.spec(), 40, rng);
      const Complex lam = dd * Complex(-3, 0) + dd * (dd - 1.0) * Complex(-1, 0);
      const Complex mu = dd * dd * Complex(-1, 0);
      worst = std::max(worst, std::abs(est.data.lambda - lam));
      worst = std::max(worst, std::abs(est.data.mu - mu));
    }
    {
      const CatalogEntry row = u_first_row_degree_d(2, cvec({1, 1}), d);
      Rng rng = root.split(100 + d);
      const EigenpairEstimate est =
          estimate_eigenpair(row.field, row.field.spec(), 40, rng);
      const Complex lam = dd * Complex(-2, 0) + dd * (dd - 1.0) * Complex(-1, 0);
      const Complex mu = dd * dd * Complex(-1, 0);
      worst = std::max(worst, std::abs(est.data.lambda - lam));
      worst = std::max(worst, std::abs(est.data.mu - mu));
    }
  }
  report(2, "polynomial eigenfamily theorem", worst <= 1e-4,
         "max fitted-vs-formula deviation " + fmt(worst) +
             " for d in {2,3} on sphere and U(2) (tol 1e-4)");
}

void criterion_3() {
  Rng root(1003);
  double worst = 0.0;
  std::string worst_name = "-";
  for (const auto& fam : eigenfamily_cases()) {
    const CatalogEntry& entry = fam.members.front();
    const double mu = entry.predicted.mu.real();
    Rng rng = root.split(std::hash<std::string>{}(fam.name));
    int used = 0, attempts = 0;
    while (used < 50 && attempts < 500) {
      ++attempts;
      const ManifoldPoint p = random_point(entry.field.spec(), rng);
      const FirstFundamentalData ffd =
          first_fundamental_eigenvalues(entry.field, p);
      if (ffd.degenerate) continue;
      ++used;
      const double grad_sq = ffd.gram.trace();
      const double value_sq = std::norm(entry.field(p));
      const double lo = 0.5 * (grad_sq - std::abs(mu) * value_sq);
      const double hi = 0.5 * (grad_sq + std::abs(mu) * value_sq);
      const double res = std::max(std::abs(ffd.lam1 - lo),
                                  std::abs(ffd.lam2 - hi));
      if (res > worst) worst = res, worst_name = fam.name;
    }
  }
  report(3, "first fundamental form eigenvalue lemma", worst <= 1e-6,
         "max eigenvalue deviation " + fmt(worst) + " over 50 points/family "
         "(tol 1e-6, worst family: " + worst_name + ")");
}

void criterion_4() {
  Rng root(1004);
  double worst_point = 0.0, worst_deriv = 0.0;
  double min_neg = std::numeric_limits<double>::infinity();
  bool enough_witnesses = true;
  for (const auto& fc : fibre_cases()) {
    Rng rng = root.split(std::hash<std::string>{}(fc.name));
    const FibreSample sample =
        sample_fibre(fc.entry.field, {0, 0}, 20, rng);
    for (const auto& fp : sample.points) {
      const HcFirstOrderResult res =
          hc_first_order_check(fc.entry.field, fp, 10, rng);
      worst_point = std::max(worst_point, res.point_gap);
      worst_deriv = std::max(worst_deriv, res.max_derivative_gap);
    }
    // Off-fibre violation at generic points.
    int witnesses = 0, attempts = 0;
    while (witnesses < 10 && attempts < 500) {
      ++attempts;
      const ManifoldPoint p = random_point(fc.entry.field.spec(), rng);
      if (std::norm(fc.entry.field(p)) < 0.01) continue;
      const FirstFundamentalData ffd =
          first_fundamental_eigenvalues(fc.entry.field, p);
      if (ffd.degenerate || ffd.gram.trace() < 0.05) continue;
      ++witnesses;
      min_neg = std::min(min_neg,
                         std::abs(ffd.lam1 * ffd.lam1 - ffd.lam2 * ffd.lam2));
    }
    enough_witnesses = enough_witnesses && witnesses == 10;
  }
  const bool pass = worst_point <= 1e-8 && worst_deriv <= 1e-5 &&
                    enough_witnesses && min_neg > 1e-4;
  report(4, "horizontal conformality up to first order", pass,
         "on-fibre gap " + fmt(worst_point) + " (tol 1e-8), derivative gap " +
             fmt(worst_deriv) + " (tol 1e-5), generic off-fibre gap > " +
             fmt(min_neg));
}

void criterion_5() {
  Rng root(1005);
  double worst = 0.0;
  std::string worst_name = "-";
  for (const auto& fc : fibre_cases()) {
    Rng rng = root.split(std::hash<std::string>{}(fc.name));
    const FibreSample sample = sample_fibre(fc.entry.field, {0, 0}, 20, rng);
    for (const auto& fp : sample.points) {
      const double norm = mean_curvature(fc.entry.field, fp).norm;
      if (norm > worst) worst = norm, worst_name = fc.name;
    }
  }

  // Negative control: the fibre over 0.5 is a round small circle with
  // geodesic curvature 0.5/sqrt(0.75).
  const CatalogEntry phi = sphere_basic(2, 1);
  Rng rng = root.split(999);
  const FibrePoint off = find_fibre_point(
      phi.field, {0.5, 0}, random_point(phi.field.spec(), rng), rng);
  const double neg_norm = mean_curvature(phi.field, off).norm;
  const double expected = 0.5 / std::sqrt(0.75);
  const bool neg_ok = std::abs(neg_norm - expected) <= 5e-3;

  report(5, "minimality of zero fibres", worst <= 1e-3 && neg_ok,
         "max |H| " + fmt(worst) + " over 20 points/family (tol 1e-3, worst: " +
             worst_name + "); off-zero control |H| = " + fmt(neg_norm) +
             " vs 0.577 +/- 5e-3");
}

void criterion_6() {
  Rng root(1006);
  double min_sigma = std::numeric_limits<double>::infinity();
  std::string worst_name = "-";
  bool all_certified = true;
  for (const auto& fc : fibre_cases()) {
    if (!fc.entry.regular_zero_claimed) {
      all_certified = false;
      std::cout << "  " << fc.name << " misses the regularity claim\n";
      continue;
    }
    Rng rng = root.split(std::hash<std::string>{}(fc.name));
    const FibreSample sample = sample_fibre(fc.entry.field, {0, 0}, 20, rng);
    const RegularityCertificate cert =
        regularity_certificate(fc.entry.field, sample.points);
    all_certified = all_certified && cert.certified;
    if (cert.min_singular_value < min_sigma) {
      min_sigma = cert.min_singular_value;
      worst_name = fc.name;
    }
  }

  // Negative control: the critical target c = 1 of phi_1 must not certify.
  const CatalogEntry phi = sphere_basic(2, 1);
  Rng rng = root.split(998);
  bool critical_fails = false;
  double critical_sigma = 0.0;
  try {
    FibreOptions opts;
    opts.max_restarts = 5;
    const FibreSample sample =
        sample_fibre(phi.field, {1.0, 0}, 5, rng, opts);
    const RegularityCertificate cert =
        regularity_certificate(phi.field, sample.points, opts);
    critical_fails = !cert.certified;
    critical_sigma = cert.min_singular_value;
  } catch (const FibreNotFound&) {
    critical_fails = true;  // no certified point cloud either way
  }

  report(6, "regularity certificates", all_certified && critical_fails,
         "min Jacobian singular value " + fmt(min_sigma) +
             " (threshold 1e-3, worst: " + worst_name +
             "); critical target sigma " + fmt(critical_sigma) +
             " correctly fails");
}

void criterion_7() {
  Rng root(1007);
  double worst = 0.0;

  {  // SO(4): the skew-pair rule for all entries and basis elements.
    const int n = 4;
    const ManifoldSpec spec{ManifoldKind::SpecialOrthogonal, n};
    Rng rng = root.split(1);
    for (int trial = 0; trial < 20; ++trial) {
      const ManifoldPoint p = random_point(spec, rng);
      const Eigen::MatrixXd x = to_real_matrix(p.ambient, n);
      for (int j = 1; j <= n; ++j)
        for (int alpha = 1; alpha <= n; ++alpha) {
          const ScalarField f = ScalarField::make_unchecked(
              spec, "x", [n, j, alpha](const Eigen::VectorXd& amb) {
                return Complex(to_real_matrix(amb, n)(j - 1, alpha - 1), 0);
              });
          const Eigen::VectorXcd coeffs = gradient(f, p);
          for (int r = 1; r < n; ++r)
            for (int s = r + 1; s <= n; ++s) {
              const double expected =
                  ((alpha == s ? x(j - 1, r - 1) : 0.0) -
                   (alpha == r ? x(j - 1, s - 1) : 0.0)) /
                  std::sqrt(2.0);
              worst = std::max(worst,
                               std::abs(coeffs(so_frame_index(n, r, s)) -
                                        Complex(expected, 0)));
            }
        }
    }
  }

  {  // U(3): skew, symmetric and diagonal rules.
    const int n = 3;
    const ManifoldSpec spec{ManifoldKind::Unitary, n};
    Rng rng = root.split(2);
    for (int trial = 0; trial < 20; ++trial) {
      const ManifoldPoint p = random_point(spec, rng);
      const Eigen::MatrixXcd z = to_complex_matrix(p.ambient, n, n);
      for (int j = 1; j <= n; ++j)
        for (int alpha = 1; alpha <= n; ++alpha) {
          const ScalarField f = ScalarField::make_unchecked(
              spec, "z", [n, j, alpha](const Eigen::VectorXd& amb) {
                return to_complex_matrix(amb, n, n)(j - 1, alpha - 1);
              });
          const Eigen::VectorXcd coeffs = gradient(f, p);
          for (int r = 1; r < n; ++r)
            for (int s = r + 1; s <= n; ++s) {
              const Complex skew =
                  ((alpha == s ? z(j - 1, r - 1) : Complex(0, 0)) -
                   (alpha == r ? z(j - 1, s - 1) : Complex(0, 0))) /
                  std::sqrt(2.0);
              const Complex sym =
                  kI *
                  ((alpha == s ? z(j - 1, r - 1) : Complex(0, 0)) +
                   (alpha == r ? z(j - 1, s - 1) : Complex(0, 0))) /
                  std::sqrt(2.0);
              worst = std::max(worst, std::abs(coeffs(u_frame_index_skew(
                                                   n, r, s)) -
                                               skew));
              worst = std::max(worst, std::abs(coeffs(u_frame_index_sym(
                                                   n, r, s)) -
                                               sym));
            }
          for (int t = 1; t <= n; ++t) {
            const Complex diag =
                (alpha == t) ? kI * z(j - 1, alpha - 1) : Complex(0, 0);
            worst = std::max(
                worst, std::abs(coeffs(u_frame_index_diag(n, t)) - diag));
          }
        }
    }
  }

  {  // Sp(2): the four displayed rules for z_ja entries.
    const int n = 2;
    const ManifoldSpec spec{ManifoldKind::QuaternionicUnitary, n};
    Rng rng = root.split(3);
    for (int trial = 0; trial < 20; ++trial) {
      const ManifoldPoint p = random_point(spec, rng);
      const Eigen::MatrixXcd q = to_complex_matrix(p.ambient, 2 * n, 2 * n);
      for (int j = 1; j <= n; ++j)
        for (int alpha = 1; alpha <= n; ++alpha) {
          const ScalarField f = ScalarField::make_unchecked(
              spec, "z", [n, j, alpha](const Eigen::VectorXd& amb) {
                return to_complex_matrix(amb, 2 * n, 2 * n)(j - 1, alpha - 1);
              });
          const Eigen::VectorXcd coeffs = gradient(f, p);
          const auto zz = [&](int rr, int cc) { return q(rr - 1, cc - 1); };
          const auto ww = [&](int rr, int cc) {
            return q(rr - 1, n + cc - 1);
          };
          for (int r = 1; r < n; ++r)
            for (int s = r + 1; s <= n; ++s) {
              const Complex xa = 0.5 * kI *
                                 ((s == alpha ? zz(j, r) : Complex(0, 0)) +
                                  (r == alpha ? zz(j, s) : Complex(0, 0)));
              const Complex xb = 0.5 * kI *
                                 ((s == alpha ? ww(j, r) : Complex(0, 0)) +
                                  (r == alpha ? ww(j, s) : Complex(0, 0)));
              worst = std::max(
                  worst, std::abs(coeffs(sp_frame_index(SpBasisFamily::DiagSym,
                                                        n, r, s)) -
                                  xa));
              worst = std::max(
                  worst, std::abs(coeffs(sp_frame_index(SpBasisFamily::OffSymI,
                                                        n, r, s)) -
                                  xb));
            }
          for (int t = 1; t <= n; ++t) {
            const Complex da = (t == alpha)
                                   ? kI / std::sqrt(2.0) * zz(j, alpha)
                                   : Complex(0, 0);
            const Complex dc = (t == alpha)
                                   ? -1.0 / std::sqrt(2.0) * ww(j, alpha)
                                   : Complex(0, 0);
            worst = std::max(
                worst, std::abs(coeffs(sp_frame_index(SpBasisFamily::DiagUnit,
                                                      n, t)) -
                                da));
            worst = std::max(
                worst, std::abs(coeffs(sp_frame_index(SpBasisFamily::OffUnit,
                                                      n, t)) -
                                dc));
          }
        }
    }
  }

  report(7, "derivative formula oracle", worst <= 1e-8,
         "max numeric-vs-closed-form deviation " + fmt(worst) +
             " at 20 Haar points per group (tol 1e-8)");
}

void criterion_8() {
  Rng root(1008);
  double worst = 0.0;

  // Ten catalog pairs spread over two manifolds.
  std::vector<std::pair<ScalarField, ScalarField>> pairs;
  {
    const ScalarField z11 = u_trace_family(3, unit(3, 0), unit(3, 0)).field;
    const ScalarField z12 = u_trace_family(3, unit(3, 0), unit(3, 1)).field;
    const ScalarField z23 = u_trace_family(3, unit(3, 1), unit(3, 2)).field;
    const ScalarField minor = u_minor(3).field;
    const ScalarField row =
        u_first_row_degree_d(3, cvec({1, 1, 1}), 2).field;
    pairs.push_back({z11, z12});
    pairs.push_back({z11, minor});
    pairs.push_back({z12, z23});
    pairs.push_back({minor, row});
    pairs.push_back({z23, row});
  }
  {
    const ScalarField f1 = sphere_basic(2, 1).field;
    const ScalarField f2 = sphere_basic(2, 2).field;
    const ScalarField quad =
        sphere_quadratic(Eigen::MatrixXcd::Identity(2, 2)).field;
    const ScalarField poly =
        homogeneous_poly({sphere_basic(2, 1), sphere_basic(2, 2)},
                         {{Complex(1, 0), {1, 1}}}, 2)
            .field;
    pairs.push_back({f1, f2});
    pairs.push_back({f1, quad});
    pairs.push_back({f2, poly});
    pairs.push_back({quad, poly});
    pairs.push_back({f1, conjugate(f2)});
  }

  for (std::size_t k = 0; k < pairs.size(); ++k) {
    Rng rng = root.split(k);
    for (int t = 0; t < 50; ++t) {
      const ManifoldPoint p = random_point(pairs[k].first.spec(), rng);
      worst = std::max(worst,
                       product_rule_check(pairs[k].first, pairs[k].second, p));
    }
  }
  report(8, "tension product rule", worst <= 1e-4,
         "max residual " + fmt(worst) +
             " over 50 points x 10 catalog pairs (tol 1e-4)");
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_9() {
  const fs::path dir = fs::current_path() / "acceptance_tmp";
  fs::create_directories(dir);
  const std::string cli = MINFIB_CLI_PATH;
  const std::string configs = MINFIB_CONFIG_DIR;
  bool pass = true;
  std::string detail;

  auto run_twice = [&](const std::string& subcmd, const std::string& config,
                       const std::vector<std::string>& artifacts) {
    std::vector<std::string> first;
    for (int round = 0; round < 2; ++round) {
      const std::string cmd = "cd " + dir.string() + " && " + cli + " " +
                              subcmd + " --config " + configs + "/" + config +
                              " --out report_" + subcmd + ".json" +
                              " > /dev/null 2> /dev/null";
      if (std::system(cmd.c_str()) == -1) {
        pass = false;
        return;
      }
      std::vector<std::string> now;
      now.push_back(slurp(dir / ("report_" + subcmd + ".json")));
      for (const auto& a : artifacts) now.push_back(slurp(dir / a));
      if (round == 0) {
        first = now;
      } else {
        for (std::size_t i = 0; i < now.size(); ++i)
          if (now[i].empty() || now[i] != first[i]) {
            pass = false;
            detail += " mismatch in " + subcmd + "/" + config + ";";
          }
      }
    }
  };

  run_twice("verify", "sphere_basic_s3.json", {});
  run_twice("sample-fibre", "fibre_s3_great_circle.json",
            {"fibre_s3.csv", "fibre_s3.json"});
  run_twice("estimate", "estimate_u_minor_u3.json", {});

  report(9, "determinism of reports and exports", pass,
         pass ? "byte-identical reports and exports across repeated seeded runs"
              : detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  std::cout << "acceptance: " << (9 - failures) << "/9 criteria passed\n";
  return failures;
}
