#pragma once

#include "homiso/forms.hpp"
#include "homiso/types.hpp"

namespace homiso {

/// Standard normal entries; complex entries have E|z|^2 = 1.
Vector random_vector(Index d, Field field, Rng& rng);
Vector random_unit_vector(Index d, Field field, Rng& rng);

/// d x k matrix with orthonormal columns, Haar-ish via QR of a Gaussian matrix.
Matrix random_frame(Index d, Index k, Field field, Rng& rng);

/// Every monomial of the given degree with a standard normal coefficient.
DenseForm random_dense_form(unsigned degree, Index dim, Field field, Rng& rng);

/// Complex symmetric G^T D G with D having exactly `kernel_dim` zero entries.
Matrix planted_complex_quadratic(Index d, Index kernel_dim, Rng& rng);

}  // namespace homiso
