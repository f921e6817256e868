#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace werner {

using Rng = std::mt19937_64;

/// Complex vector with i.i.d. standard complex Gaussian entries.
Eigen::VectorXcd complex_gaussian(Eigen::Index size, Rng& rng);

/// Haar-distributed d x d unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal folded back into Q.
Eigen::MatrixXcd haar_unitary(int d, Rng& rng);

/// Uniformly random unit vector in C^size.
Eigen::VectorXcd random_unit_vector(Eigen::Index size, Rng& rng);

}  // namespace werner
