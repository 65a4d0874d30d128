#pragma once

#include <Eigen/Dense>
#include <complex>

namespace minfib {

using Complex = std::complex<double>;

// Every ambient object is stored as a flat real vector. Complex data is laid
// out re-before-im per entry; matrices are row-major. Under this flattening
// the manifold metric of all five supported manifolds is the plain Euclidean
// dot product.

inline Eigen::VectorXcd to_complex_vector(const Eigen::VectorXd& flat) {
  Eigen::VectorXcd z(flat.size() / 2);
  for (Eigen::Index k = 0; k < z.size(); ++k)
    z(k) = Complex(flat(2 * k), flat(2 * k + 1));
  return z;
}

inline Eigen::VectorXd from_complex_vector(const Eigen::VectorXcd& z) {
  Eigen::VectorXd flat(2 * z.size());
  for (Eigen::Index k = 0; k < z.size(); ++k) {
    flat(2 * k) = z(k).real();
    flat(2 * k + 1) = z(k).imag();
  }
  return flat;
}

inline Eigen::MatrixXcd to_complex_matrix(const Eigen::VectorXd& flat,
                                          Eigen::Index rows,
                                          Eigen::Index cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Eigen::Index k = 2 * (r * cols + c);
      m(r, c) = Complex(flat(k), flat(k + 1));
    }
  return m;
}

inline Eigen::VectorXd from_complex_matrix(const Eigen::MatrixXcd& m) {
  Eigen::VectorXd flat(2 * m.rows() * m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Eigen::Index k = 2 * (r * m.cols() + c);
      flat(k) = m(r, c).real();
      flat(k + 1) = m(r, c).imag();
    }
  return flat;
}

inline Eigen::MatrixXd to_real_matrix(const Eigen::VectorXd& flat,
                                      Eigen::Index n) {
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = flat(r * n + c);
  return m;
}

inline Eigen::VectorXd from_real_matrix(const Eigen::MatrixXd& m) {
  Eigen::VectorXd flat(m.rows() * m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) flat(r * m.cols() + c) = m(r, c);
  return flat;
}

}  // namespace minfib
