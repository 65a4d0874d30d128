#include "minfib/catalog.hpp"

#include <cmath>

namespace minfib {

namespace {

const Complex kI(0.0, 1.0);

void require_nonzero(const Eigen::VectorXcd& v, const char* what) {
  if (v.norm() == 0.0)
    throw DegenerateInput(std::string(what) + " must be nonzero");
}

}  // namespace

std::string family_name(FamilyId id) {
  switch (id) {
    case FamilyId::SphereBasic: return "sphere_basic";
    case FamilyId::CPBasic: return "cp_basic";
    case FamilyId::SOTrace: return "so_trace";
    case FamilyId::UTrace: return "u_trace";
    case FamilyId::SpTrace: return "sp_trace";
    case FamilyId::HomogeneousPoly: return "homogeneous_poly";
    case FamilyId::SphereQuadraticA: return "sphere_quadratic";
    case FamilyId::CPDiagonal: return "cp_diagonal";
    case FamilyId::SO2nDegreeD: return "so2n_degree_d";
    case FamilyId::UFirstRowDegreeD: return "u_first_row_degree_d";
    case FamilyId::UMinor: return "u_minor";
    case FamilyId::SpZ11: return "sp_z11";
  }
  return "?";
}

CatalogEntry sphere_basic(int n, int j) {
  if (n < 1) throw IndexOutOfRange("sphere_basic: n must be >= 1");
  if (j < 1 || j > n)
    throw IndexOutOfRange("sphere_basic: j must satisfy 1 <= j <= n");
  const ManifoldSpec spec{ManifoldKind::Sphere, n};
  ScalarField f = ScalarField::make(
      spec, "phi_" + std::to_string(j), [j](const Eigen::VectorXd& amb) {
        const Eigen::VectorXcd z = to_complex_vector(amb);
        return z(j - 1) / z.norm();
      });
  return {std::move(f),
          {Complex(-(2.0 * n - 1.0), 0.0), Complex(-1.0, 0.0)},
          true,
          FamilyId::SphereBasic};
}

CatalogEntry cp_basic(int n, int j, int k, int alpha) {
  if (n < 1) throw IndexOutOfRange("cp_basic: n must be >= 1");
  if (!(1 <= j && j <= alpha && alpha < k && k <= n + 1))
    throw IndexOutOfRange("cp_basic: need 1 <= j <= alpha < k <= n+1");
  const ManifoldSpec spec{ManifoldKind::ComplexProjective, n};
  ScalarField f = ScalarField::make(
      spec, "phi_" + std::to_string(j) + std::to_string(k),
      [j, k](const Eigen::VectorXd& amb) {
        const Eigen::VectorXcd z = to_complex_vector(amb);
        return z(j - 1) * std::conj(z(k - 1)) / z.squaredNorm();
      });
  return {std::move(f),
          {Complex(-4.0 * (n + 1.0), 0.0), Complex(-4.0, 0.0)},
          n == 1,
          FamilyId::CPBasic};
}

CatalogEntry so_trace_family(int n, const Eigen::VectorXcd& p,
                             const Eigen::VectorXcd& a) {
  if (n < 2) throw IndexOutOfRange("so_trace_family: n must be >= 2");
  if (p.size() != n || a.size() != n)
    throw IndexOutOfRange("so_trace_family: p and a must have length n");
  require_nonzero(p, "so_trace_family: p");
  const Complex aa = (a.transpose() * a).value();
  if (std::abs(aa) > 1e-12)
    throw NotIsotropic("so_trace_family: a^T a = " + std::to_string(aa.real()) +
                       "+" + std::to_string(aa.imag()) + "i is not 0");
  const ManifoldSpec spec{ManifoldKind::SpecialOrthogonal, n};
  ScalarField f = ScalarField::make(
      spec, "so_trace", [n, p, a](const Eigen::VectorXd& amb) {
        const Eigen::MatrixXd x = to_real_matrix(amb, n);
        return (p.transpose() * x.cast<Complex>() * a).value();
      });
  // The gradient vanishes only where x^T p is proportional to the isotropic
  // vector a, which forces p^T p = 0; so nonzero p^T p makes 0 regular.
  const bool regular = std::abs((p.transpose() * p).value()) > 1e-12;
  return {std::move(f),
          {Complex(-(n - 1.0) / 2.0, 0.0), Complex(-0.5, 0.0)},
          regular,
          FamilyId::SOTrace};
}

CatalogEntry u_trace_family(int n, const Eigen::VectorXcd& p,
                            const Eigen::VectorXcd& a) {
  if (n < 2) throw IndexOutOfRange("u_trace_family: n must be >= 2");
  if (p.size() != n || a.size() != n)
    throw IndexOutOfRange("u_trace_family: p and a must have length n");
  require_nonzero(p, "u_trace_family: p");
  const ManifoldSpec spec{ManifoldKind::Unitary, n};
  ScalarField f = ScalarField::make(
      spec, "u_trace", [n, p, a](const Eigen::VectorXd& amb) {
        return (p.transpose() * to_complex_matrix(amb, n, n) * a).value();
      });
  return {std::move(f),
          {Complex(-static_cast<double>(n), 0.0), Complex(-1.0, 0.0)},
          a.norm() > 0.0,
          FamilyId::UTrace};
}

CatalogEntry sp_trace_family(int n, const Eigen::VectorXcd& p,
                             const Eigen::VectorXcd& a,
                             const Eigen::VectorXcd& b) {
  if (n < 1) throw IndexOutOfRange("sp_trace_family: n must be >= 1");
  if (p.size() != n || a.size() != n || b.size() != n)
    throw IndexOutOfRange("sp_trace_family: p, a, b must have length n");
  require_nonzero(p, "sp_trace_family: p");
  Eigen::VectorXcd c(2 * n);
  c << a, b;
  const ManifoldSpec spec{ManifoldKind::QuaternionicUnitary, n};
  ScalarField f = ScalarField::make(
      spec, "sp_trace", [n, p, c](const Eigen::VectorXd& amb) {
        const Eigen::MatrixXcd q = to_complex_matrix(amb, 2 * n, 2 * n);
        return (p.transpose() * q.topRows(n) * c).value();
      });
  return {std::move(f),
          {Complex(-(2.0 * n + 1.0) / 2.0, 0.0), Complex(-0.5, 0.0)},
          c.norm() > 0.0,
          FamilyId::SpTrace};
}

CatalogEntry homogeneous_poly(const std::vector<CatalogEntry>& entries,
                              const std::vector<MonomialTerm>& terms,
                              int degree) {
  if (entries.empty())
    throw DegenerateInput("homogeneous_poly: need at least one base entry");
  if (degree < 1) throw DegenerateInput("homogeneous_poly: degree must be >= 1");
  const EigenData base = entries.front().predicted;
  for (const auto& e : entries) {
    if (std::abs(e.predicted.lambda - base.lambda) > 1e-12 ||
        std::abs(e.predicted.mu - base.mu) > 1e-12)
      throw MixedFamilies(
          "homogeneous_poly: base entries carry different eigenvalue pairs");
    if (!(e.field.spec() == entries.front().field.spec()))
      throw MixedFamilies(
          "homogeneous_poly: base entries live on different manifolds");
  }
  if (terms.empty()) throw DegenerateInput("homogeneous_poly: no terms");
  for (const auto& t : terms) {
    if (t.exponents.size() != entries.size())
      throw DegenerateInput(
          "homogeneous_poly: exponent tuple length must match entry count");
    int total = 0;
    for (int e : t.exponents) {
      if (e < 0) throw DegenerateInput("homogeneous_poly: negative exponent");
      total += e;
    }
    if (total != degree)
      throw DegenerateInput(
          "homogeneous_poly: term is not homogeneous of the stated degree");
  }

  std::vector<ScalarField> fields;
  fields.reserve(entries.size());
  for (const auto& e : entries) fields.push_back(e.field);
  ScalarField f = ScalarField::make_unchecked(
      fields.front().spec(), "poly_d" + std::to_string(degree),
      [fields, terms](const Eigen::VectorXd& amb) {
        Complex acc(0.0, 0.0);
        std::vector<Complex> values(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i)
          values[i] = fields[i](amb);
        for (const auto& t : terms) {
          Complex mono = t.coeff;
          for (std::size_t i = 0; i < values.size(); ++i)
            for (int e = 0; e < t.exponents[i]; ++e) mono *= values[i];
          acc += mono;
        }
        return acc;
      });
  const double d = degree;
  return {std::move(f),
          {d * base.lambda + d * (d - 1.0) * base.mu, d * d * base.mu},
          false,
          FamilyId::HomogeneousPoly};
}

CatalogEntry sphere_quadratic(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw IndexOutOfRange("sphere_quadratic: matrix must be square");
  const int n = static_cast<int>(a.rows());
  if (std::abs(a.determinant()) <= 1e-10)
    throw SingularMatrix("sphere_quadratic: |det A| must exceed 1e-10");
  const ManifoldSpec spec{ManifoldKind::Sphere, n};
  ScalarField f = ScalarField::make(
      spec, "Phi_A", [a](const Eigen::VectorXd& amb) {
        const Eigen::VectorXcd z = to_complex_vector(amb);
        // sum_{k != l} A_{kl} z_k z_l + (1/2) sum_k A_{kk} z_k^2
        Complex quad = (z.transpose() * a * z).value();
        for (Eigen::Index k = 0; k < z.size(); ++k)
          quad -= 0.5 * a(k, k) * z(k) * z(k);
        return quad / z.squaredNorm();
      });
  return {std::move(f),
          {Complex(-4.0 * n, 0.0), Complex(-4.0, 0.0)},
          true,
          FamilyId::SphereQuadraticA};
}

CatalogEntry cp_diagonal(int n, const Eigen::VectorXcd& a) {
  if (n < 1) throw IndexOutOfRange("cp_diagonal: n must be >= 1");
  if (a.size() != n)
    throw IndexOutOfRange("cp_diagonal: coefficient vector must have length n");
  for (Eigen::Index k = 0; k < a.size(); ++k)
    if (std::abs(a(k)) == 0.0)
      throw ZeroCoefficient("cp_diagonal: coefficient " + std::to_string(k + 1) +
                            " vanishes");
  const ManifoldSpec spec{ManifoldKind::ComplexProjective, 2 * n - 1};
  ScalarField f = ScalarField::make(
      spec, "Phi_a", [n, a](const Eigen::VectorXd& amb) {
        const Eigen::VectorXcd z = to_complex_vector(amb);
        Complex acc(0.0, 0.0);
        for (int k = 0; k < n; ++k)
          acc += a(k) * z(k) * std::conj(z(n + k));
        return acc / z.squaredNorm();
      });
  return {std::move(f),
          {Complex(-8.0 * n, 0.0), Complex(-4.0, 0.0)},
          true,
          FamilyId::CPDiagonal};
}

CatalogEntry so2n_degree_d(int n, const Eigen::VectorXcd& a, int d) {
  if (n < 1) throw IndexOutOfRange("so2n_degree_d: n must be >= 1");
  if (a.size() != n)
    throw IndexOutOfRange("so2n_degree_d: coefficient vector must have length n");
  if (d < 1) throw DegenerateInput("so2n_degree_d: degree must be >= 1");
  for (Eigen::Index k = 0; k < a.size(); ++k)
    if (std::abs(a(k)) == 0.0)
      throw ZeroCoefficient("so2n_degree_d: coefficient " +
                            std::to_string(k + 1) + " vanishes");
  const ManifoldSpec spec{ManifoldKind::SpecialOrthogonal, 2 * n};
  ScalarField f = ScalarField::make(
      spec, "so_row_d" + std::to_string(d),
      [n, a, d](const Eigen::VectorXd& amb) {
        const Eigen::MatrixXd x = to_real_matrix(amb, 2 * n);
        Complex acc(0.0, 0.0);
        for (int k = 0; k < n; ++k) {
          const Complex w(x(0, 2 * k), x(0, 2 * k + 1));
          Complex mono = a(k);
          for (int e = 0; e < d; ++e) mono *= w;
          acc += mono;
        }
        return acc;
      });
  const double dd = d;
  const Complex lambda0(-(2.0 * n - 1.0) / 2.0, 0.0);
  const Complex mu0(-0.5, 0.0);
  return {std::move(f),
          {dd * lambda0 + dd * (dd - 1.0) * mu0, dd * dd * mu0},
          true,
          FamilyId::SO2nDegreeD};
}

CatalogEntry u_first_row_degree_d(int n, const Eigen::VectorXcd& a, int d) {
  if (n < 2) throw IndexOutOfRange("u_first_row_degree_d: n must be >= 2");
  if (a.size() != n)
    throw IndexOutOfRange(
        "u_first_row_degree_d: coefficient vector must have length n");
  if (d < 1)
    throw DegenerateInput("u_first_row_degree_d: degree must be >= 1");
  for (Eigen::Index k = 0; k < a.size(); ++k)
    if (std::abs(a(k)) == 0.0)
      throw ZeroCoefficient("u_first_row_degree_d: coefficient " +
                            std::to_string(k + 1) + " vanishes");
  const ManifoldSpec spec{ManifoldKind::Unitary, n};
  ScalarField f = ScalarField::make(
      spec, "u_row_d" + std::to_string(d),
      [n, a, d](const Eigen::VectorXd& amb) {
        const Eigen::MatrixXcd z = to_complex_matrix(amb, n, n);
        Complex acc(0.0, 0.0);
        for (int k = 0; k < n; ++k) {
          Complex mono = a(k);
          for (int e = 0; e < d; ++e) mono *= z(0, k);
          acc += mono;
        }
        return acc;
      });
  const double dd = d;
  return {std::move(f),
          {Complex(-dd * n - dd * (dd - 1.0), 0.0), Complex(-dd * dd, 0.0)},
          true,
          FamilyId::UFirstRowDegreeD};
}

CatalogEntry u_minor(int n) {
  if (n < 3) throw IndexOutOfRange("u_minor: n must be >= 3");
  const ManifoldSpec spec{ManifoldKind::Unitary, n};
  ScalarField f = ScalarField::make(
      spec, "minor2", [n](const Eigen::VectorXd& amb) {
        const Eigen::MatrixXcd z = to_complex_matrix(amb, n, n);
        return z(0, 0) * z(1, 1) - z(0, 1) * z(1, 0);
      });
  return {std::move(f),
          {Complex(-2.0 * (n - 1.0), 0.0), Complex(-2.0, 0.0)},
          true,
          FamilyId::UMinor};
}

CatalogEntry sp_z11(int n) {
  if (n < 1) throw IndexOutOfRange("sp_z11: n must be >= 1");
  const ManifoldSpec spec{ManifoldKind::QuaternionicUnitary, n};
  ScalarField f = ScalarField::make(
      spec, "z_11", [n](const Eigen::VectorXd& amb) {
        return to_complex_matrix(amb, 2 * n, 2 * n)(0, 0);
      });
  return {std::move(f),
          {Complex(-(2.0 * n + 1.0) / 2.0, 0.0), Complex(-0.5, 0.0)},
          true,
          FamilyId::SpZ11};
}

std::vector<Eigen::VectorXcd> isotropic_basis(int n) {
  if (n < 2) throw IndexOutOfRange("isotropic_basis: n must be >= 2");
  std::vector<Eigen::VectorXcd> basis;
  const double c = 1.0 / std::sqrt(2.0);
  for (int k = 0; 2 * k + 1 < n; ++k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v(2 * k) = c;
    v(2 * k + 1) = c * kI;
    basis.push_back(v);
  }
  return basis;
}

}  // namespace minfib
