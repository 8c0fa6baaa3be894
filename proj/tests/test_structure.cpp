#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "nearctl/error.hpp"
#include "nearctl/structure.hpp"
#include "test_support.hpp"

namespace nearctl {
namespace {

using testing::BlockSpec;
using testing::Rng;

Matrix worked3x3_B() {
  Matrix B(3, 3);
  B << 2, 1, -5, 0, 2, -4, 0, 0, -2;
  return B;
}

Matrix worked4x4_B() {
  return testing::jordan_matrix({{2, 3}, {-3, 1}});
}

JordanForm canonical(const Matrix& J) {
  return jordan_from_pinned(J, J, Matrix::Identity(J.rows(), J.cols()));
}

TEST(NearControllabilityTest, Worked3x3) {
  const auto report = check_near_controllability(worked3x3_B());
  EXPECT_EQ(report.verdict, Verdict::kNearlyControllable);
  EXPECT_TRUE(report.reasons.empty());
  EXPECT_EQ(report.index_h, 3);
  ASSERT_TRUE(report.hypersurface);
  EXPECT_EQ(report.hypersurface->coordinates, (std::vector<int>{2, 3}));
  EXPECT_EQ(report.hypersurface->j_condition, "xi_2 * xi_3 = 0");
  EXPECT_EQ(report.hypersurface->original_condition, "det[x, Bx, B^2x] = 0");
  ASSERT_TRUE(report.jordan);
  EXPECT_EQ(report.jordan->m, 2);
  EXPECT_EQ(report.jordan->r, 1);
}

TEST(NearControllabilityTest, Worked4x4HasLongBlock) {
  const auto report = check_near_controllability(worked4x4_B());
  EXPECT_EQ(report.verdict, Verdict::kNotNearlyControllable);
  EXPECT_EQ(report.reasons, std::vector<Reason>{Reason::kJordanBlockDimGt2});
  EXPECT_EQ(report.index_h, 3);
  EXPECT_FALSE(report.hypersurface);
  EXPECT_EQ(to_string(report.reasons[0]), "jordan_block_dim_gt_2");
}

TEST(NearControllabilityTest, RepeatedDiagonalIsNoncyclic) {
  const auto report = check_near_controllability(Matrix::Identity(2, 2));
  EXPECT_EQ(report.verdict, Verdict::kNotNearlyControllable);
  EXPECT_EQ(report.reasons, std::vector<Reason>{Reason::kNoncyclic});
  EXPECT_EQ(report.index_h, 1);
}

TEST(NearControllabilityTest, SingularMatrix) {
  Matrix B(2, 2);
  B << 0, 0, 0, 3;
  const auto report = check_near_controllability(B);
  EXPECT_TRUE(report.has_reason(Reason::kSingular));
  EXPECT_EQ(report.index_h, 1);
}

TEST(NearControllabilityTest, AllReasonsTogether) {
  const Matrix J = testing::jordan_matrix({{1, 3}, {1, 1}, {0, 1}});
  const auto report = check_near_controllability(canonical(J));
  EXPECT_EQ(report.reasons,
            (std::vector<Reason>{Reason::kSingular, Reason::kNoncyclic,
                                 Reason::kJordanBlockDimGt2}));
}

TEST(NearControllabilityTest, ComplexSpectrumIsUnsupported) {
  Matrix B(2, 2);
  B << 0, -1, 1, 0;
  const auto report = check_near_controllability(B);
  EXPECT_EQ(report.verdict, Verdict::kUnsupportedComplexSpectrum);
  EXPECT_FALSE(report.jordan);
  EXPECT_EQ(to_string(report.verdict), "unsupported_complex_spectrum");
}

TEST(NearControllabilityTest, NonFiniteIsAnError) {
  Matrix B = Matrix::Identity(2, 2);
  B(0, 1) = std::nan("");
  try {
    check_near_controllability(B);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
}

TEST(NearControllabilityIndexTest, Examples) {
  EXPECT_EQ(near_controllability_index(canonical(testing::jordan_matrix({{1.5, 4}}))), 2);
  EXPECT_EQ(near_controllability_index(canonical(testing::jordan_matrix({{2, 2}, {-1, 1}}))), 3);
  // Zero eigenvalues contribute nothing; repeated eigenvalues count once.
  EXPECT_EQ(near_controllability_index(
                canonical(testing::jordan_matrix({{0, 2}, {3, 1}, {3, 1}}))),
            1);
}

TEST(SubspaceTest, Worked4x4) {
  const auto subs = enumerate_subspaces(jordan_decompose(worked4x4_B()));
  ASSERT_EQ(subs.size(), 5u);
  const std::vector<std::vector<int>> want = {{1}, {4}, {1, 2}, {1, 4}, {1, 2, 4}};
  for (size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(subs[i].indices, want[i]);
    EXPECT_EQ(subs[i].dimension, static_cast<int>(want[i].size()));
  }
  EXPECT_EQ(subs[4].removed_set, "xi_2 * xi_4 = 0");
  EXPECT_EQ(subs[4].eigenvalues_used, (std::vector<double>{2, -3}));
  Matrix sub(3, 3);
  sub << 2, 1, 0, 0, 2, 0, 0, 0, -3;
  EXPECT_EQ(subs[4].submatrix, sub);
  EXPECT_EQ(subs[0].removed_set, "xi_1 = 0");
}

TEST(SubspaceTest, SingleLongBlock) {
  const auto subs = enumerate_subspaces(canonical(testing::jordan_matrix({{1.5, 4}})));
  ASSERT_EQ(subs.size(), 2u);
  EXPECT_EQ(subs[0].indices, std::vector<int>{1});
  EXPECT_EQ(subs[1].indices, (std::vector<int>{1, 2}));
}

TEST(SubspaceTest, AllZeroSpectrumHasNoSubspaces) {
  EXPECT_TRUE(enumerate_subspaces(canonical(testing::jordan_matrix({{0, 2}}))).empty());
}

TEST(AdmissibilityTest, Worked4x4) {
  const JordanForm jf = jordan_decompose(worked4x4_B());
  EXPECT_TRUE(is_admissible_index_set(jf, {1, 2, 4}).admissible);
  EXPECT_TRUE(is_admissible_index_set(jf, {4}).admissible);
  const auto bad = is_admissible_index_set(jf, {2, 3, 4});
  EXPECT_FALSE(bad.admissible);
  EXPECT_FALSE(bad.reason.empty());
  EXPECT_FALSE(is_admissible_index_set(jf, {1, 2, 3}).admissible);
  EXPECT_FALSE(is_admissible_index_set(jf, {2}).admissible);
  EXPECT_FALSE(is_admissible_index_set(jf, {4, 1}).admissible);
  EXPECT_FALSE(is_admissible_index_set(jf, {0}).admissible);
  EXPECT_FALSE(is_admissible_index_set(jf, {5}).admissible);
  EXPECT_FALSE(is_admissible_index_set(jf, {}).admissible);
}

TEST(AdmissibilityTest, ZeroBlockAndRepeatedEigenvalue) {
  const JordanForm jf = canonical(testing::jordan_matrix({{2, 1}, {2, 1}, {0, 1}}));
  EXPECT_FALSE(is_admissible_index_set(jf, {3}).admissible);
  EXPECT_FALSE(is_admissible_index_set(jf, {1, 2}).admissible);
  EXPECT_TRUE(is_admissible_index_set(jf, {2}).admissible);
}

// Random block structures, including zero and repeated eigenvalues.
std::vector<BlockSpec> random_structure(Rng& rng) {
  const int n = testing::uniform_int(rng, 1, 7);
  const int distinct = testing::uniform_int(rng, 1, std::min(n, 4));
  std::vector<double> lams = testing::random_eigenvalues(rng, distinct);
  if (testing::uniform_int(rng, 0, 4) == 0) lams[0] = 0.0;
  std::vector<BlockSpec> blocks;
  int left = n;
  for (int i = 0; i < distinct; ++i, --left) blocks.push_back({lams[i], 1});
  while (left > 0) {
    const int pick = testing::uniform_int(rng, 0, static_cast<int>(blocks.size()) - 1);
    if (testing::uniform_int(rng, 0, 2) > 0) {
      ++blocks[pick].size;
    } else {
      blocks.insert(blocks.begin() + pick + 1, {blocks[pick].eigenvalue, 1});
    }
    --left;
  }
  return blocks;
}

TEST(SubspaceTest, EnumerationMatchesBruteForce) {
  Rng rng(314);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix J = testing::jordan_matrix(random_structure(rng));
    const JordanForm jf = canonical(J);
    const int n = jf.n();
    std::vector<std::vector<int>> brute;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> idx;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) idx.push_back(i + 1);
      }
      if (testing::brute_force_admissible(J, idx)) brute.push_back(idx);
    }
    const auto subs = enumerate_subspaces(jf);
    std::vector<std::vector<int>> got;
    for (const auto& d : subs) got.push_back(d.indices);
    std::vector<std::vector<int>> sorted_brute = brute;
    std::sort(sorted_brute.begin(), sorted_brute.end());
    std::vector<std::vector<int>> sorted_got = got;
    std::sort(sorted_got.begin(), sorted_got.end());
    ASSERT_EQ(sorted_got, sorted_brute) << "trial " << trial;

    const int h = near_controllability_index(jf);
    int max_dim = 0;
    for (size_t i = 0; i < subs.size(); ++i) {
      const auto& d = subs[i];
      max_dim = std::max(max_dim, d.dimension);
      EXPECT_TRUE(testing::bidiagonal_nearly_controllable(d.submatrix)) << "trial " << trial;
      EXPECT_TRUE(is_admissible_index_set(jf, d.indices).admissible) << "trial " << trial;
      if (i > 0) {
        const auto& p = subs[i - 1];
        EXPECT_TRUE(p.dimension < d.dimension ||
                    (p.dimension == d.dimension && p.indices < d.indices));
      }
    }
    EXPECT_EQ(max_dim, h) << "trial " << trial;

    // Admissibility agrees with brute force on every subset.
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> idx;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) idx.push_back(i + 1);
      }
      EXPECT_EQ(is_admissible_index_set(jf, idx).admissible,
                testing::brute_force_admissible(J, idx))
          << "trial " << trial;
    }
  }
}

TEST(NearControllabilityTest, VerdictIsSimilarityInvariant) {
  Rng rng(271);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<BlockSpec> blocks = random_structure(rng);
    for (auto& b : blocks) {
      if (b.eigenvalue == 0.0) b.eigenvalue = 0.75;  // keep the decomposition well posed
      b.size = std::min(b.size, 3);
    }
    // Merged duplicates may now collide; rebuild through the canonical form.
    const Matrix J0 = testing::jordan_matrix(blocks);
    JordanForm direct;
    try {
      direct = canonical(J0);
    } catch (const Error&) {
      continue;  // non-adjacent repeats after the remap
    }
    const auto [B, P0] = testing::conjugate(rng, J0);
    JordanForm jf;
    ASSERT_NO_THROW(jf = jordan_decompose(B)) << "trial " << trial;
    const auto a = check_near_controllability(direct);
    const auto b = check_near_controllability(jf);
    EXPECT_EQ(a.verdict, b.verdict) << "trial " << trial;
    EXPECT_EQ(a.reasons, b.reasons) << "trial " << trial;
    EXPECT_EQ(a.index_h, b.index_h) << "trial " << trial;
    EXPECT_EQ(enumerate_subspaces(direct).size(), enumerate_subspaces(jf).size());
  }
}

}  // namespace
}  // namespace nearctl
