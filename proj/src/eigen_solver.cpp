#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "nearctl/error.hpp"
#include "nearctl/linalg.hpp"

namespace nearctl {
namespace {

double copy_sign(double magnitude, double sign_source) {
  return sign_source >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// Parlett-Reinsch balancing by powers of two; leaves eigenvalues unchanged
// and keeps companion matrices from losing accuracy in the QR sweep.
void balance(Matrix& a) {
  constexpr double kRadix = 2.0;
  constexpr double kRadixSq = kRadix * kRadix;
  const Eigen::Index n = a.rows();
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j != i) {
          c += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / kRadix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= kRadix;
        c *= kRadixSq;
      }
      g = r * kRadix;
      while (c > g) {
        f /= kRadix;
        c /= kRadixSq;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

void reduce_to_hessenberg(Matrix& a) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index len = n - k - 1;
    Vector v = a.col(k).tail(len);
    const double norm = v.norm();
    if (norm == 0.0) continue;
    const double alpha = -copy_sign(norm, v(0));
    v(0) -= alpha;
    const double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;
    // H = I - 2 v v^T applied on both sides.
    a.bottomRows(len) -= 2.0 * v * (v.transpose() * a.bottomRows(len));
    a.rightCols(len) -= 2.0 * (a.rightCols(len) * v) * v.transpose();
    a.col(k).tail(len - 1).setZero();
    a(k + 1, k) = alpha;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix (eigenvalues only).
std::vector<std::complex<double>> hessenberg_qr(Matrix a) {
  const int n = static_cast<int>(a.rows());
  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<std::complex<double>> w(n);

  double anorm = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));
  }

  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l > 0; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= eps * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        w[nn--] = x + t;
        continue;
      }
      double y = a(nn - 1, nn - 1);
      double ww = a(nn, nn - 1) * a(nn - 1, nn);
      if (l == nn - 1) {
        const double p = 0.5 * (y - x);
        const double q = p * p + ww;
        double z = std::sqrt(std::abs(q));
        x += t;
        if (q >= 0.0) {
          z = p + copy_sign(z, p);
          w[nn - 1] = w[nn] = x + z;
          if (z != 0.0) w[nn] = x - ww / z;
        } else {
          w[nn] = std::complex<double>(x + p, -z);
          w[nn - 1] = std::conj(w[nn]);
        }
        nn -= 2;
        continue;
      }

      // Budget and shift cadence follow LAPACK's dhseqr: defective
      // eigenvalues converge only linearly, and a fixed pair of exceptional
      // shifts is not always enough to break the stagnation.
      if (its == 30 * std::max(10, n)) {
        throw Error(ErrorCode::kNoConvergence,
                    "QR iteration did not converge");
      }
      if (its > 0 && its % 10 == 0) {
        // Exceptional shift to break cycles.
        t += x;
        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
        const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
        y = x = 0.75 * s;
        ww = -0.4375 * s * s;
      }
      ++its;

      int m = nn - 2;
      double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
      for (; m >= l; --m) {
        z = a(m, m);
        r = x - z;
        double s = y - z;
        p = (r * s - ww) / a(m + 1, m) + a(m, m + 1);
        q = a(m + 1, m + 1) - z - r - s;
        r = a(m + 2, m + 1);
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
        const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) +
                                        std::abs(a(m + 1, m + 1)));
        if (u <= eps * v) break;
      }
      for (int i = m; i < nn - 1; ++i) {
        a(i + 2, i) = 0.0;
        if (i != m) a(i + 2, i - 1) = 0.0;
      }
      for (int k = m; k < nn; ++k) {
        if (k != m) {
          p = a(k, k - 1);
          q = a(k + 1, k - 1);
          r = (k + 1 != nn) ? a(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x != 0.0) {
            p /= x;
            q /= x;
            r /= x;
          }
        }
        const double s = copy_sign(std::sqrt(p * p + q * q + r * r), p);
        if (s == 0.0) continue;
        if (k == m) {
          if (l != m) a(k, k - 1) = -a(k, k - 1);
        } else {
          a(k, k - 1) = -s * x;
        }
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;
        for (int j = k; j <= nn; ++j) {
          p = a(k, j) + q * a(k + 1, j);
          if (k + 1 != nn) {
            p += r * a(k + 2, j);
            a(k + 2, j) -= p * z;
          }
          a(k + 1, j) -= p * y;
          a(k, j) -= p * x;
        }
        const int mmin = nn < k + 3 ? nn : k + 3;
        for (int i = l; i <= mmin; ++i) {
          p = x * a(i, k) + y * a(i, k + 1);
          if (k + 1 != nn) {
            p += z * a(i, k + 2);
            a(i, k + 2) -= p * r;
          }
          a(i, k + 1) -= p * q;
          a(i, k) -= p;
        }
      }
    } while (l + 1 < nn);
  }
  return w;
}

}  // namespace

std::vector<std::complex<double>> hessenberg_qr_eigenvalues(const Matrix& A) {
  if (A.rows() != A.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix must be square");
  }
  if (A.rows() == 0) return {};
  Matrix a = A;
  balance(a);
  reduce_to_hessenberg(a);
  return hessenberg_qr(std::move(a));
}

}  // namespace nearctl
