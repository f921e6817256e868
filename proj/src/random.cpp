#include "werner/random.hpp"

#include <cmath>

namespace werner {

Eigen::VectorXcd complex_gaussian(Eigen::Index size, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[i] = {re, im};
  }
  return v;
}

Eigen::MatrixXcd haar_unitary(int d, Rng& rng) {
  Eigen::MatrixXcd z(d, d);
  for (int c = 0; c < d; ++c) z.col(c) = complex_gaussian(d, rng);

  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int c = 0; c < d; ++c) {
    const std::complex<double> rc = r(c, c);
    const double mag = std::abs(rc);
    if (mag > 0.0) q.col(c) *= rc / mag;
  }
  return q;
}

Eigen::VectorXcd random_unit_vector(Eigen::Index size, Rng& rng) {
  Eigen::VectorXcd v = complex_gaussian(size, rng);
  return v / v.norm();
}

}  // namespace werner
