#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "nearctl/error.hpp"
#include "nearctl/poly.hpp"
#include "test_support.hpp"

namespace nearctl {
namespace {

using testing::Rng;

// mu for the pinned 3x3 worked data (q = 4, aux (1, -4)), computed offline
// with 50-digit arithmetic from C^{-1} d.
const std::vector<double> kWorked3x3Mu = {
    0.00074229464332885437, -0.0051083982912930841, -0.039301197669880333,
    0.06475722927025474,    0.29248854278084612,    -0.3135784707332563};

TEST(PolynomialTest, StripsLeadingZerosAndEvaluates) {
  const Polynomial p({0, 0, 2, -3, 1});
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.coefficient(2), 2);
  EXPECT_EQ(p.coefficient(0), 1);
  EXPECT_EQ(p.coefficient(5), 0);
  EXPECT_DOUBLE_EQ(p(2.0), 3.0);
  EXPECT_TRUE(Polynomial({0, 0}).is_zero());
}

TEST(PolynomialTest, Arithmetic) {
  const Polynomial a({1, 2});
  const Polynomial b({1, -2});
  EXPECT_EQ((a * b).coeffs(), (std::vector<double>{1, 0, -4}));
  EXPECT_EQ((a + b * 2.0).coeffs(), (std::vector<double>{3, -2}));
}

TEST(PolyFromRootsTest, EmptyProductIsOne) {
  EXPECT_EQ(poly_from_roots({}).coeffs(), std::vector<double>{1});
}

TEST(PolyFromRootsTest, Worked3x3Denominator) {
  const std::vector<double> roots = {2, 2, -2, -2, 1, -4};
  // Roots of prod (s - r) expand to s^6 + 3s^5 - 12s^4 - 24s^3 + 48s^2 + 48s - 64.
  EXPECT_EQ(poly_from_roots(roots).coeffs(),
            (std::vector<double>{1, 3, -12, -24, 48, 48, -64}));
  const std::vector<double> oracle = testing::esym_by_subsets(roots);
  const std::vector<double> z = elementary_symmetric(roots);
  for (size_t i = 0; i < z.size(); ++i) EXPECT_DOUBLE_EQ(z[i], oracle[i]);
}

TEST(PolyFromRootsTest, RootAtOrigin) {
  const std::vector<double> roots = {0};
  EXPECT_EQ(poly_from_roots(roots).coeffs(), (std::vector<double>{1, 0}));
}

TEST(ElementarySymmetricTest, SmallCases) {
  const std::vector<double> one = {2.5};
  EXPECT_EQ(elementary_symmetric(one), std::vector<double>{-2.5});
  EXPECT_TRUE(elementary_symmetric({}).empty());
  const std::vector<double> v = {1, 1, 0.5, -2};
  EXPECT_EQ(elementary_symmetric(v), (std::vector<double>{-0.5, -3, 3.5, -1}));
}

TEST(ElementarySymmetricTest, BitIdenticalToPolyFromRootsAndMatchesSubsets) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(testing::uniform_int(rng, 0, 10));
    for (double& x : v) x = testing::uniform(rng, -5, 5);
    const std::vector<double> z = elementary_symmetric(v);
    const std::vector<double> c = poly_from_roots(v).coeffs();
    ASSERT_EQ(c.size(), z.size() + 1);
    for (size_t i = 0; i < z.size(); ++i) EXPECT_EQ(z[i], c[i + 1]);
    const std::vector<double> oracle = testing::esym_by_subsets(v);
    for (size_t i = 0; i < z.size(); ++i) {
      EXPECT_NEAR(z[i], oracle[i], 1e-10 * std::max(1.0, std::abs(oracle[i])));
    }
  }
}

TEST(PolyRootsTest, DifferenceOfSquares) {
  const RootSet rs = poly_roots(Polynomial({1, 0, -1}));
  ASSERT_EQ(rs.roots.size(), 2u);
  EXPECT_TRUE(rs.all_real());
  EXPECT_NEAR(rs.roots[0].real(), -1, 1e-15);
  EXPECT_NEAR(rs.roots[1].real(), 1, 1e-15);
}

TEST(PolyRootsTest, ComplexPairIsNotReal) {
  const RootSet rs = poly_roots(Polynomial({1, 0, 1}));
  EXPECT_FALSE(rs.all_real());
  EXPECT_NEAR(std::abs(rs.roots[0].imag()), 1, 1e-14);
}

TEST(PolyRootsTest, ConstantIsRejected) {
  try {
    poly_roots(Polynomial({3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
  }
}

TEST(PolyRootsTest, Worked3x3ClosedLoopAtGainTen) {
  // s(s+2)^2(s-2)^2(s+1)(s-4) + 10 N(s), N built from mu.
  const std::vector<double> poles = {0, -2, -2, 2, 2, -1, 4};
  const Polynomial den = poly_from_roots(poles);
  std::vector<double> num(7);
  for (int j = 1; j <= 6; ++j) num[j - 1] = ((7 - j) % 2 ? -1.0 : 1.0) * kWorked3x3Mu[j - 1];
  num[6] = 1.0;
  const RootSet rs = poly_roots(den + Polynomial(num) * 10.0);
  ASSERT_TRUE(rs.all_real());
  std::vector<double> v;
  for (const auto& r : rs.roots) v.push_back(1.0 / r.real());
  std::sort(v.begin(), v.end());
  const std::vector<double> want = {-0.76975881760879866, -0.64257355556508226,
                                    -0.45226851670335625, 0.25021811924070126,
                                    0.4388929380159046,   0.61212649636153632,
                                    6.6497848655258387};
  for (size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(v[i], want[i], 1e-12);
  // Published's printed three-digit values.
  const std::vector<double> published = {-0.770, -0.643, -0.452, 0.250, 0.439, 0.612, 6.650};
  for (size_t i = 0; i < published.size(); ++i) EXPECT_NEAR(v[i], published[i], 5e-4);
}

TEST(PolyRootsTest, RoundTripRandomRealRoots) {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> r(testing::uniform_int(rng, 1, 9));
    for (double& x : r) x = testing::uniform(rng, 0.1, 10) * testing::random_sign(rng);
    std::sort(r.begin(), r.end());
    const Polynomial p = poly_from_roots(r);
    const RootSet rs = poly_roots(p);
    ASSERT_EQ(rs.roots.size(), r.size());
    for (size_t i = 0; i < r.size(); ++i) {
      EXPECT_NEAR(rs.roots[i].real(), r[i], 1e-6 * std::abs(r[i])) << "trial " << trial;
      EXPECT_LE(rs.residuals[i], 1e-8 * p.magnitude_at(rs.roots[i]));
    }
  }
}

TEST(PolyRootsTest, WideMagnitudeRange) {
  // Gain-sweep shape: one root near zero, the rest at unit scale.
  const std::vector<double> r = {-4, -1, -1e-7, 0.5, 2, 3};
  const RootSet rs = poly_roots(poly_from_roots(r));
  ASSERT_TRUE(rs.all_real());
  for (size_t i = 0; i < r.size(); ++i) {
    EXPECT_NEAR(rs.roots[i].real(), r[i], 1e-12 * std::max(1.0, std::abs(r[i])));
  }
}

TEST(PolyRootsTest, ExactZeroRootsAreKept) {
  const RootSet rs = poly_roots(Polynomial({1, -3, 0, 0}));
  ASSERT_EQ(rs.roots.size(), 3u);
  EXPECT_EQ(rs.roots[0], std::complex<double>(0, 0));
  EXPECT_EQ(rs.roots[1], std::complex<double>(0, 0));
  EXPECT_NEAR(rs.roots[2].real(), 3, 1e-15);
}

// --- confluent Vandermonde -----------------------------------------------

TEST(ConfluentVandermondeTest, Worked3x3Rows) {
  const std::vector<double> lams = {2, -2};
  const std::vector<double> aux = {1, -4};
  const Matrix C = build_confluent_vandermonde(lams, aux);
  ASSERT_EQ(C.rows(), 6);
  EXPECT_EQ(C.row(0), (Eigen::RowVectorXd(6) << 64, 32, 16, 8, 4, 2).finished());
  EXPECT_EQ(C.row(1), (Eigen::RowVectorXd(6) << 192, 80, 32, 12, 4, 1).finished());
  EXPECT_EQ(C.row(4), (Eigen::RowVectorXd(6) << 1, 1, 1, 1, 1, 1).finished());
  EXPECT_EQ(C.row(5), (Eigen::RowVectorXd(6) << 4096, -1024, 256, -64, 16, -4).finished());
}

TEST(ConfluentVandermondeTest, SingleEigenvalue) {
  const std::vector<double> lams = {1};
  const std::vector<double> aux = {0.5, -2};
  const Matrix C = build_confluent_vandermonde(lams, aux);
  Matrix want(4, 4);
  want << 1, 1, 1, 1, 4, 3, 2, 1, 0.0625, 0.125, 0.25, 0.5, 16, -8, 4, -2;
  EXPECT_EQ(C, want);
}

TEST(ConfluentVandermondeTest, DegenerateNodes) {
  const std::vector<double> repeated = {2, -2};
  const std::vector<double> aux_hits = {2, -4};
  const std::vector<double> zero = {0, -4};
  for (const auto* aux : {&aux_hits, &zero}) {
    try {
      build_confluent_vandermonde(repeated, *aux);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kDegenerateNodes);
    }
  }
}

TEST(ConfluentSystemTest, Worked3x3Nodes) {
  const std::vector<double> lams = {2, -2};
  const std::vector<double> aux = {1, -4};
  const Vector z = confluent_solve(build_confluent_vandermonde(lams, aux), confluent_rhs(lams, aux));
  const std::vector<double> want = {3, -12, -24, 48, 48, -64};
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(z(i), want[i], 1e-9 * std::abs(want[i]));
  const Vector closed = confluent_closed_form(lams, aux);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(closed(i), want[i]);
}

TEST(ConfluentSystemTest, SingleEigenvalue) {
  const std::vector<double> lams = {1};
  const std::vector<double> aux = {0.5, -2};
  const Vector z = confluent_dense_solution(lams, aux);
  const std::vector<double> want = testing::esym_by_subsets({1, 1, 0.5, -2});
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(z(i), want[i], 1e-12);
}

TEST(ConfluentSystemTest, RoundTripRandomRightHandSide) {
  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = testing::uniform_int(rng, 1, 3);
    const std::vector<double> lams = testing::random_eigenvalues(rng, m);
    double lo = 1e9, hi = 0;
    for (double l : lams) {
      lo = std::min(lo, std::abs(l));
      hi = std::max(hi, std::abs(l));
    }
    const std::vector<double> aux = {lo / 2, -2 * hi};
    const Matrix C = build_confluent_vandermonde(lams, aux);
    Vector z0(C.rows());
    for (Eigen::Index i = 0; i < z0.size(); ++i) z0(i) = testing::uniform(rng, -1, 1);
    const Vector d = C * z0;
    const Vector z = confluent_solve(C, d);
    // Backward stable, and forward error within the conditioning of C.
    EXPECT_LE((C * z - d).norm(), 1e-13 * C.norm() * z.norm()) << "trial " << trial;
    const Eigen::JacobiSVD<Matrix> svd(C);
    const double cond = svd.singularValues()(0) / svd.singularValues()(C.rows() - 1);
    EXPECT_LE((z - z0).norm(), std::max(1e-12, 1e-14 * cond) * z0.norm()) << "trial " << trial;
  }
}

TEST(ConfluentSystemTest, DenseSolveEqualsClosedForm) {
  Rng rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = testing::uniform_int(rng, 1, 5);
    const std::vector<double> lams = testing::random_eigenvalues(rng, m);
    double lo = 1e9, hi = 0;
    for (double l : lams) {
      lo = std::min(lo, std::abs(l));
      hi = std::max(hi, std::abs(l));
    }
    const std::vector<double> aux = {lo / 2, -2 * hi};
    const Vector dense = confluent_dense_solution(lams, aux);
    const Vector closed = confluent_closed_form(lams, aux);
    EXPECT_LE((dense - closed).norm(), 1e-9 * closed.norm()) << "trial " << trial;
  }
}

}  // namespace
}  // namespace nearctl
