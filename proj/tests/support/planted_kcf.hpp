#pragma once

// Random pencils with a known Kronecker structure, for property tests.

#include "oversamp/pencil.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <vector>

namespace oversamp::testing {

struct PlantedBlocks {
  std::vector<int> right;                          // L_eps, eps >= 0
  std::vector<int> left;                           // L_eta^T, eta >= 0
  std::vector<std::pair<int, int>> jordan;         // (mu, size), integer mu
  std::vector<int> infinite;                       // N_p, p >= 1

  std::size_t rows() const {
    std::size_t m = 0;
    for (int e : right) m += static_cast<std::size_t>(e);
    for (int e : left) m += static_cast<std::size_t>(e + 1);
    for (auto [mu, k] : jordan) m += static_cast<std::size_t>(k);
    for (int p : infinite) m += static_cast<std::size_t>(p);
    return m;
  }
  std::size_t cols() const {
    std::size_t n = 0;
    for (int e : right) n += static_cast<std::size_t>(e + 1);
    for (int e : left) n += static_cast<std::size_t>(e);
    for (auto [mu, k] : jordan) n += static_cast<std::size_t>(k);
    for (int p : infinite) n += static_cast<std::size_t>(p);
    return n;
  }

  KroneckerStructure expected() const {
    KroneckerStructure k;
    k.rows = rows();
    k.cols = cols();
    k.right_minimal_indices = right;
    k.left_minimal_indices = left;
    k.infinite_blocks = infinite;
    std::map<int, std::vector<int>> finite;
    for (auto [mu, size] : jordan) {
      if (mu == 0) {
        k.zero_jordan_blocks.push_back(size);
      } else {
        finite[mu].push_back(size);
      }
    }
    for (auto& [mu, sizes] : finite) {
      std::sort(sizes.begin(), sizes.end());
      k.finite_nonzero.push_back({Complex(mu, 0.0), sizes});
    }
    std::sort(k.right_minimal_indices.begin(), k.right_minimal_indices.end());
    std::sort(k.left_minimal_indices.begin(), k.left_minimal_indices.end());
    std::sort(k.zero_jordan_blocks.begin(), k.zero_jordan_blocks.end());
    std::sort(k.infinite_blocks.begin(), k.infinite_blocks.end());
    return k;
  }
};

/// Block diagonal canonical pencil A - lambda B.
inline ExactPencil canonical_pencil(const PlantedBlocks& b) {
  RationalMatrix A(b.rows(), b.cols());
  RationalMatrix B(b.rows(), b.cols());
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  // L_eps: eps x (eps+1), rows [lambda 1] shifted along the diagonal.
  for (int e : b.right) {
    for (int i = 0; i < e; ++i) {
      B(r0 + i, c0 + i) = -1;
      A(r0 + i, c0 + i + 1) = 1;
    }
    r0 += static_cast<std::size_t>(e);
    c0 += static_cast<std::size_t>(e + 1);
  }
  for (int e : b.left) {
    for (int i = 0; i < e; ++i) {
      B(r0 + i, c0 + i) = -1;
      A(r0 + i + 1, c0 + i) = 1;
    }
    r0 += static_cast<std::size_t>(e + 1);
    c0 += static_cast<std::size_t>(e);
  }
  for (auto [mu, k] : b.jordan) {
    for (int i = 0; i < k; ++i) {
      A(r0 + i, c0 + i) = mu;
      B(r0 + i, c0 + i) = 1;
      if (i + 1 < k) A(r0 + i, c0 + i + 1) = 1;
    }
    r0 += static_cast<std::size_t>(k);
    c0 += static_cast<std::size_t>(k);
  }
  for (int p : b.infinite) {
    for (int i = 0; i < p; ++i) {
      A(r0 + i, c0 + i) = 1;
      if (i + 1 < p) B(r0 + i, c0 + i + 1) = 1;
    }
    r0 += static_cast<std::size_t>(p);
    c0 += static_cast<std::size_t>(p);
  }
  return ExactPencil(A, B);
}

/// Random integer matrix with determinant +-1: a permuted product of unit
/// lower and unit upper triangular factors with entries in [-1, 1].
inline RationalMatrix random_unimodular(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-1, 1);
  RationalMatrix lo = RationalMatrix::identity(n);
  RationalMatrix up = RationalMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      lo(i, j) = d(rng);
      up(j, i) = d(rng);
    }
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  RationalMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p(i, perm[i]) = 1;
  return p * lo * up;
}

/// U K(lambda) V for random unimodular U, V.
inline ExactPencil disguise(const ExactPencil& k, std::mt19937_64& rng) {
  const RationalMatrix u = random_unimodular(k.rows(), rng);
  const RationalMatrix v = random_unimodular(k.cols(), rng);
  return ExactPencil(u * k.A * v, u * k.B * v);
}

/// Random block list with rows, cols in [1, max_dim]. Nonzero eigenvalues
/// are integers in [-3, 3] with blocks of size at most 2.
inline PlantedBlocks random_blocks(std::mt19937_64& rng, std::size_t max_dim = 8) {
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_int_distribution<int> small(0, 3);
  std::uniform_int_distribution<int> eig(-3, 3);
  for (;;) {
    PlantedBlocks b;
    std::uniform_int_distribution<int> count(1, 4);
    const int blocks = count(rng);
    for (int i = 0; i < blocks; ++i) {
      switch (kind(rng)) {
        case 0: b.right.push_back(small(rng)); break;
        case 1: b.left.push_back(small(rng)); break;
        case 2: b.jordan.emplace_back(0, 1 + small(rng) % 3); break;
        case 3: b.jordan.emplace_back(eig(rng), 1 + small(rng) % 2); break;
        default: b.infinite.push_back(1 + small(rng) % 3); break;
      }
    }
    const std::size_t m = b.rows();
    const std::size_t n = b.cols();
    if (m >= 1 && n >= 1 && m <= max_dim && n <= max_dim) return b;
  }
}

}  // namespace oversamp::testing
