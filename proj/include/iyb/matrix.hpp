#pragma once

// Small dense matrices acting on finite abelian groups
// Z/m_1 + ... + Z/m_r (column vectors, y = A x, y_i taken mod m_i).
//
// A matrix is a well-defined endomorphism exactly when m_i divides
// A_ij * m_j for all i, j; module code checks that before using one.

#include <vector>

#include "iyb/arith.hpp"

namespace iyb {

using Vec = std::vector<u64>;
using Matrix = std::vector<Vec>;  // row-major

Matrix identity_matrix(std::size_t r);
/// Reduces row i modulo m_i.
Matrix reduce_matrix(Matrix a, const std::vector<u64>& moduli);
Vec apply_matrix(const Matrix& a, const Vec& x, const std::vector<u64>& moduli);
/// a * b (apply b first).
Matrix multiply_matrices(const Matrix& a, const Matrix& b, const std::vector<u64>& moduli);
/// True when a induces an endomorphism of the group with these invariants.
bool respects_invariants(const Matrix& a, const std::vector<u64>& moduli);

Vec add_vectors(const Vec& a, const Vec& b, const std::vector<u64>& moduli);
Vec sub_vectors(const Vec& a, const Vec& b, const std::vector<u64>& moduli);
Vec neg_vector(const Vec& a, const std::vector<u64>& moduli);

/// Mixed-radix index of a reduced vector, and back.
u64 encode_vector(const Vec& x, const std::vector<u64>& moduli);
Vec decode_vector(u64 code, const std::vector<u64>& moduli);

}  // namespace iyb
