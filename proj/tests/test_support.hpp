#pragma once

// Seeded generators and independent oracles shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "nearctl/linalg.hpp"
#include "nearctl/structure.hpp"

namespace nearctl::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double random_sign(Rng& rng) { return uniform_int(rng, 0, 1) ? 1.0 : -1.0; }

struct BlockSpec {
  double eigenvalue;
  int size;
};

inline Matrix jordan_matrix(const std::vector<BlockSpec>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += b.size;
  Matrix J = Matrix::Zero(n, n);
  int o = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.size; ++i) {
      J(o + i, o + i) = b.eigenvalue;
      if (i + 1 < b.size) J(o + i, o + i + 1) = 1.0;
    }
    o += b.size;
  }
  return J;
}

// Random well-conditioned similarity (2-norm condition number below 30).
inline Matrix random_similarity(Rng& rng, int n) {
  while (true) {
    Matrix P(n, n);
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) P(i, k) = uniform(rng, -1.0, 1.0);
    }
    const Eigen::JacobiSVD<Matrix> svd(P);
    const Vector s = svd.singularValues();
    if (s(n - 1) > 0 && s(0) / s(n - 1) < 30.0) return P;
  }
}

// Distinct eigenvalues with |l| in [lo, hi] and pairwise gap >= gap.
inline std::vector<double> random_eigenvalues(Rng& rng, int m, double lo = 0.5, double hi = 5.0,
                                              double gap = 0.2) {
  while (true) {
    std::vector<double> l;
    for (int i = 0; i < m; ++i) l.push_back(uniform(rng, lo, hi) * random_sign(rng));
    std::vector<double> s = l;
    std::sort(s.begin(), s.end());
    bool ok = true;
    for (int i = 1; i < m; ++i) ok = ok && s[i] - s[i - 1] >= gap;
    if (ok) return l;
  }
}

// Builds B = P0^{-1} J0 P0 and returns (B, P0).
inline std::pair<Matrix, Matrix> conjugate(Rng& rng, const Matrix& J0) {
  const Matrix P0 = random_similarity(rng, static_cast<int>(J0.rows()));
  return {P0.inverse() * J0 * P0, P0};
}

// Sorted multiset of block sizes per eigenvalue, for structure comparison.
inline std::vector<std::pair<double, int>> block_signature(const std::vector<BlockSpec>& blocks) {
  std::vector<std::pair<double, int>> out;
  for (const auto& b : blocks) out.emplace_back(b.eigenvalue, b.size);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::pair<double, int>> block_signature(const JordanForm& jf) {
  std::vector<std::pair<double, int>> out;
  for (const auto& b : jf.blocks) out.emplace_back(b.eigenvalue, b.size);
  std::sort(out.begin(), out.end());
  return out;
}

// Leibniz expansion: independent of any factorization.
inline double leibniz_det(const Matrix& A) {
  const int n = static_cast<int>(A.rows());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int k = i + 1; k < n; ++k) inversions += perm[i] > perm[k];
    }
    double term = inversions % 2 ? -1.0 : 1.0;
    for (int i = 0; i < n; ++i) term *= A(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// z_k = (-1)^k e_k by explicit subset enumeration.
inline std::vector<double> esym_by_subsets(const std::vector<double>& v) {
  const int d = static_cast<int>(v.size());
  std::vector<double> z(d, 0.0);
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    double p = 1.0;
    int k = 0;
    for (int i = 0; i < d; ++i) {
      if (mask & (1u << i)) {
        p *= v[i];
        ++k;
      }
    }
    z[k - 1] += (k % 2 ? -1.0 : 1.0) * p;
  }
  return z;
}

// prod (I + u_k J) in sequence order, by explicit matrix products.
inline Matrix product_oracle(const Matrix& J, const std::vector<double>& u) {
  const Eigen::Index n = J.rows();
  Matrix M = Matrix::Identity(n, n);
  for (double uk : u) M = (Matrix::Identity(n, n) + uk * J) * M;
  return M;
}

// The same product in long double. For identity loops of clustered spectra
// the double product carries rounding well above 1e-8 whatever the order, so
// the loop property is checked on the exact product of the returned reals.
inline double loop_residual_exact(const Matrix& J, const std::vector<double>& u) {
  using LDMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = J.rows();
  const LDMatrix I = LDMatrix::Identity(n, n);
  LDMatrix M = I;
  for (double uk : u) M = (I + static_cast<long double>(uk) * J.cast<long double>()) * M;
  return static_cast<double>((M - I).norm());
}

// Nearly controllable test for an upper bidiagonal Jordan-type matrix, read
// straight off its diagonal and superdiagonal.
inline bool bidiagonal_nearly_controllable(const Matrix& S) {
  const int e = static_cast<int>(S.rows());
  std::vector<std::pair<double, int>> blocks;
  for (int i = 0; i < e; ++i) {
    if (S(i, i) == 0.0) return false;
    if (i > 0 && S(i - 1, i) != 0.0) {
      ++blocks.back().second;
    } else {
      blocks.emplace_back(S(i, i), 1);
    }
  }
  for (size_t a = 0; a < blocks.size(); ++a) {
    if (blocks[a].second > 2) return false;
    for (size_t b = a + 1; b < blocks.size(); ++b) {
      if (blocks[a].first == blocks[b].first) return false;
    }
  }
  return true;
}

// Brute-force admissibility: the coordinate subspace must be J-invariant and
// the main submatrix must itself be nearly controllable.
inline bool brute_force_admissible(const Matrix& J, const std::vector<int>& indices) {
  std::vector<int> rows;
  for (int i : indices) rows.push_back(i - 1);
  for (int c : rows) {
    for (int r = 0; r < J.rows(); ++r) {
      if (J(r, c) != 0.0 && std::find(rows.begin(), rows.end(), r) == rows.end()) return false;
    }
  }
  return bidiagonal_nearly_controllable(principal_submatrix(J, rows));
}

// Distinct nonzero eigenvalues, blocks of size <= 2, total size <= n_max.
inline std::vector<BlockSpec> random_steerable_blocks(Rng& rng, int n_max) {
  const int n = uniform_int(rng, 1, n_max);
  const int m = uniform_int(rng, (n + 1) / 2, n);
  const std::vector<double> lams = random_eigenvalues(rng, m);
  std::vector<BlockSpec> blocks;
  for (double l : lams) blocks.push_back({l, 1});
  for (int extra = n - m; extra > 0; --extra) {
    while (true) {
      auto& b = blocks[uniform_int(rng, 0, m - 1)];
      if (b.size == 1) {
        b.size = 2;
        break;
      }
    }
  }
  return blocks;
}

// m <= 4 distinct eigenvalues with blocks of size <= 2; when `noncyclic` some
// eigenvalue also gets a second, not larger, block.
inline std::vector<BlockSpec> random_loop_blocks(Rng& rng, bool noncyclic) {
  const int m = uniform_int(rng, 1, 4);
  const std::vector<double> lams = random_eigenvalues(rng, m);
  const int dup = uniform_int(rng, 0, m - 1);
  std::vector<BlockSpec> blocks;
  for (int i = 0; i < m; ++i) {
    blocks.push_back({lams[i], uniform_int(rng, 1, 2)});
    if (noncyclic && (i == dup || uniform_int(rng, 0, 3) == 0)) {
      blocks.push_back({lams[i], uniform_int(rng, 1, blocks.back().size)});
    }
  }
  return blocks;
}

// Every coordinate with magnitude in [lo, hi] and a random sign.
inline Vector random_state(Rng& rng, int n, double lo = 0.2, double hi = 2.0) {
  Vector x(n);
  for (int i = 0; i < n; ++i) x(i) = uniform(rng, lo, hi) * random_sign(rng);
  return x;
}

inline double relative_error(const Vector& got, const Vector& want) {
  return (got - want).norm() / std::max(1e-300, want.norm());
}

}  // namespace nearctl::testing
