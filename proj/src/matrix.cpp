#include "iyb/matrix.hpp"

#include <stdexcept>

namespace iyb {

Matrix identity_matrix(std::size_t r) {
  Matrix a(r, Vec(r, 0));
  for (std::size_t i = 0; i < r; ++i) a[i][i] = 1;
  return a;
}

Matrix reduce_matrix(Matrix a, const std::vector<u64>& moduli) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (auto& x : a[i]) x %= moduli[i];
  return a;
}

Vec apply_matrix(const Matrix& a, const Vec& x, const std::vector<u64>& moduli) {
  const std::size_t r = moduli.size();
  Vec y(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    u64 m = moduli[i], acc = 0;
    const Vec& row = a[i];
    for (std::size_t j = 0; j < r; ++j)
      if (row[j] != 0 && x[j] != 0) acc = addmod(acc, mulmod(row[j] % m, x[j] % m, m), m);
    y[i] = acc;
  }
  return y;
}

Matrix multiply_matrices(const Matrix& a, const Matrix& b, const std::vector<u64>& moduli) {
  const std::size_t r = moduli.size();
  Matrix c(r, Vec(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    u64 m = moduli[i];
    for (std::size_t k = 0; k < r; ++k) {
      u64 aik = a[i][k] % m;
      if (aik == 0) continue;
      for (std::size_t j = 0; j < r; ++j) c[i][j] = addmod(c[i][j], mulmod(aik, b[k][j] % m, m), m);
    }
  }
  return c;
}

bool respects_invariants(const Matrix& a, const std::vector<u64>& moduli) {
  const std::size_t r = moduli.size();
  if (a.size() != r) return false;
  for (std::size_t i = 0; i < r; ++i) {
    if (a[i].size() != r) return false;
    for (std::size_t j = 0; j < r; ++j)
      if (mulmod(a[i][j] % moduli[i], moduli[j] % moduli[i], moduli[i]) != 0) return false;
  }
  return true;
}

Vec add_vectors(const Vec& a, const Vec& b, const std::vector<u64>& moduli) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = addmod(a[i], b[i], moduli[i]);
  return c;
}

Vec sub_vectors(const Vec& a, const Vec& b, const std::vector<u64>& moduli) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = submod(a[i], b[i], moduli[i]);
  return c;
}

Vec neg_vector(const Vec& a, const std::vector<u64>& moduli) {
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = negmod(a[i], moduli[i]);
  return c;
}

u64 encode_vector(const Vec& x, const std::vector<u64>& moduli) {
  u64 code = 0;
  for (std::size_t i = moduli.size(); i-- > 0;) {
    if (x[i] >= moduli[i]) throw std::invalid_argument("encode_vector: coordinate not reduced");
    code = code * moduli[i] + x[i];
  }
  return code;
}

Vec decode_vector(u64 code, const std::vector<u64>& moduli) {
  Vec x(moduli.size());
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    x[i] = code % moduli[i];
    code /= moduli[i];
  }
  return x;
}

}  // namespace iyb
