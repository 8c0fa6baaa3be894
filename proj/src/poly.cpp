#include "nearctl/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nearctl/error.hpp"

namespace nearctl {

using LDMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LDVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

Polynomial::Polynomial(std::vector<double> descending) {
  for (double c : descending) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::kNonFinite, "polynomial coefficient is not finite");
    }
  }
  auto first = std::find_if(descending.begin(), descending.end(),
                            [](double c) { return c != 0.0; });
  if (first == descending.end()) {
    coeffs_ = {0.0};
  } else {
    coeffs_.assign(first, descending.end());
  }
}

double Polynomial::coefficient(int k) const {
  const int d = degree();
  if (k < 0 || k > d) return 0.0;
  return coeffs_[d - k];
}

double Polynomial::operator()(double s) const {
  double acc = 0.0;
  for (double c : coeffs_) acc = acc * s + c;
  return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> s) const {
  std::complex<double> acc = 0.0;
  for (double c : coeffs_) acc = acc * s + c;
  return acc;
}

double Polynomial::magnitude_at(std::complex<double> s) const {
  const double r = std::abs(s);
  double acc = 0.0;
  for (double c : coeffs_) acc = acc * r + std::abs(c);
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  const auto& a = coeffs_;
  const auto& b = other.coeffs_;
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  const size_t n = out.size();
  for (size_t i = 0; i < a.size(); ++i) out[n - a.size() + i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[n - b.size() + i] += b[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(double k) const {
  std::vector<double> out = coeffs_;
  for (double& c : out) c *= k;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  std::vector<double> out(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    for (size_t j = 0; j < other.coeffs_.size(); ++j) {
      out[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  return Polynomial(std::move(out));
}

bool RootSet::all_real() const {
  return std::all_of(roots.begin(), roots.end(),
                     [](const auto& z) { return z.imag() == 0.0; });
}

std::vector<double> RootSet::real_parts() const {
  std::vector<double> out;
  out.reserve(roots.size());
  for (const auto& z : roots) out.push_back(z.real());
  return out;
}

namespace {

std::vector<double> expand_roots(std::span<const double> values) {
  std::vector<double> c{1.0};
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "root is not finite");
    c.push_back(0.0);
    for (size_t i = c.size() - 1; i > 0; --i) c[i] -= v * c[i - 1];
  }
  return c;
}

// Initial guesses on circles whose radii come from the upper convex hull of
// (k, log|a_k|) (Bini's Newton-polygon rule). `a` is ascending, a[0] != 0.
std::vector<std::complex<double>> newton_polygon_start(const std::vector<double>& a) {
  const int d = static_cast<int>(a.size()) - 1;
  std::vector<int> pts;
  for (int k = 0; k <= d; ++k) {
    if (a[k] != 0.0) pts.push_back(k);
  }
  auto lg = [&](int k) { return std::log(std::abs(a[k])); };
  std::vector<int> hull;
  for (int k : pts) {
    while (hull.size() >= 2) {
      const int i = hull[hull.size() - 2];
      const int j = hull.back();
      // Drop j if it lies on or below the segment i -> k.
      if ((lg(j) - lg(i)) * (k - i) <= (lg(k) - lg(i)) * (j - i)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(k);
  }
  std::vector<std::complex<double>> z;
  constexpr double kOffset = 0.4;  // keeps guesses off the real axis
  for (size_t h = 0; h + 1 < hull.size(); ++h) {
    const int lo = hull[h];
    const int hi = hull[h + 1];
    const int count = hi - lo;
    const double radius = std::exp((lg(lo) - lg(hi)) / count);
    for (int i = 0; i < count; ++i) {
      const double angle = 2.0 * std::numbers::pi * i / count +
                           2.0 * std::numbers::pi * h / d + kOffset;
      z.push_back(std::polar(radius, angle));
    }
  }
  return z;
}

// Returns false when the iteration cap is hit before every root settles.
bool aberth(const Polynomial& p, std::vector<std::complex<double>>& z) {
  constexpr int kMaxIterations = 500;
  const double eps = std::numeric_limits<double>::epsilon();
  const auto& c = p.coeffs();
  const int d = p.degree();
  std::vector<bool> done(d, false);
  for (int it = 0; it < kMaxIterations; ++it) {
    bool all_done = true;
    for (int i = 0; i < d; ++i) {
      if (done[i]) continue;
      std::complex<double> f = 0.0;
      std::complex<double> df = 0.0;
      for (double ci : c) {
        df = df * z[i] + f;
        f = f * z[i] + ci;
      }
      if (std::abs(f) <= 4.0 * eps * p.magnitude_at(z[i])) {
        done[i] = true;
        continue;
      }
      all_done = false;
      const std::complex<double> ratio = f / df;
      std::complex<double> sum = 0.0;
      for (int j = 0; j < d; ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      const std::complex<double> step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
      z[i] -= step;
      if (std::abs(step) <= eps * std::abs(z[i])) done[i] = true;
    }
    if (all_done) return true;
  }
  return std::all_of(done.begin(), done.end(), [](bool b) { return b; });
}

std::vector<std::complex<double>> companion_roots(const Polynomial& p) {
  const int d = p.degree();
  Matrix C = Matrix::Zero(d, d);
  const auto& c = p.coeffs();
  for (int j = 0; j < d; ++j) C(0, j) = -c[j + 1] / c[0];
  for (int i = 1; i < d; ++i) C(i, i - 1) = 1.0;
  return hessenberg_qr_eigenvalues(C);
}

// A few Newton steps in extended precision on a root judged real.
double polish_real(const Polynomial& p, double x) {
  long double xl = x;
  auto eval = [&](long double s, long double& df) {
    long double f = 0.0L;
    df = 0.0L;
    for (double c : p.coeffs()) {
      df = df * s + f;
      f = f * s + c;
    }
    return f;
  };
  long double df = 0.0L;
  long double best_f = std::abs(eval(xl, df));
  for (int it = 0; it < 8 && best_f > 0.0L; ++it) {
    if (df == 0.0L) break;
    const long double next = xl - eval(xl, df) / df;
    long double dn = 0.0L;
    const long double fn = std::abs(eval(next, dn));
    if (!(fn < best_f)) break;
    xl = next;
    best_f = fn;
    eval(xl, df);
  }
  return static_cast<double>(xl);
}

bool residuals_ok(const Polynomial& p, const std::vector<std::complex<double>>& z) {
  for (const auto& r : z) {
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag())) return false;
    if (std::abs(p(r)) > 1e-8 * p.magnitude_at(r)) return false;
  }
  return true;
}

}  // namespace

Polynomial poly_from_roots(std::span<const double> roots) {
  return Polynomial(expand_roots(roots));
}

std::vector<double> elementary_symmetric(std::span<const double> values) {
  std::vector<double> c = expand_roots(values);
  return {c.begin() + 1, c.end()};
}

RootSet poly_roots(const Polynomial& p, const Tolerances& tol) {
  if (p.degree() < 1) throw Error(ErrorCode::kInvalidInput, "polynomial degree must be >= 1");

  // Exact zero roots come off first so the Newton polygon sees a[0] != 0.
  std::vector<double> c = p.coeffs();
  int zeros = 0;
  while (c.size() > 1 && c.back() == 0.0) {
    c.pop_back();
    ++zeros;
  }
  const double lead = c.front();
  for (double& v : c) v /= lead;
  const Polynomial q(c);

  std::vector<std::complex<double>> z;
  if (q.degree() == 1) {
    z = {-c[1]};
  } else if (q.degree() > 1) {
    std::vector<double> ascending(c.rbegin(), c.rend());
    z = newton_polygon_start(ascending);
    if (!aberth(q, z) || !residuals_ok(q, z)) {
      z = companion_roots(q);
      if (!residuals_ok(q, z)) {
        throw Error(ErrorCode::kNoConvergence,
                    "root finder failed for degree " + std::to_string(q.degree()));
      }
    }
  }
  for (int i = 0; i < zeros; ++i) z.emplace_back(0.0, 0.0);

  // Non-real roots of a real polynomial come in conjugate pairs. A root off
  // the axis with no partner near its conjugate is a real root carrying
  // rounding noise (typical next to clustered roots); it is snapped and
  // polished, and kept only if the polished point is a root.
  auto unpaired = [&z](size_t i) {
    const auto target = std::conj(z[i]);
    for (size_t j = 0; j < z.size(); ++j) {
      if (j != i && std::abs(z[j] - target) < std::abs(z[i].imag())) return false;
    }
    return true;
  };
  RootSet out;
  for (size_t i = 0; i < z.size(); ++i) {
    auto r = z[i];
    if (std::abs(r.imag()) <= tol.real_root_tol * std::max(1.0, std::abs(r))) {
      r = {r.real() == 0.0 ? 0.0 : polish_real(p, r.real()), 0.0};
    } else if (unpaired(i)) {
      const double x = polish_real(p, r.real());
      if (std::abs(p(x)) <= std::max(std::abs(p(r)), 1e-12 * p.magnitude_at(x))) r = {x, 0.0};
    }
    out.roots.push_back(r);
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (const auto& r : out.roots) out.residuals.push_back(std::abs(p(r)));
  return out;
}

namespace {

void check_nodes(std::span<const double> lams, std::span<const double> aux) {
  if (aux.size() != 2) throw Error(ErrorCode::kInvalidInput, "expected two auxiliary nodes");
  std::vector<double> all(lams.begin(), lams.end());
  all.insert(all.end(), aux.begin(), aux.end());
  for (size_t i = 0; i < all.size(); ++i) {
    if (!std::isfinite(all[i])) throw Error(ErrorCode::kNonFinite, "node is not finite");
    if (all[i] == 0.0) throw Error(ErrorCode::kDegenerateNodes, "node at zero");
    for (size_t j = 0; j < i; ++j) {
      if (std::abs(all[i] - all[j]) <= 1e-12 * std::max(std::abs(all[i]), std::abs(all[j]))) {
        throw Error(ErrorCode::kDegenerateNodes,
                    "repeated node " + std::to_string(all[i]));
      }
    }
  }
}

template <typename T>
T ipow(T x, int k) {
  T p = 1;
  for (int i = 0; i < k; ++i) p *= x;
  return p;
}

template <typename T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> confluent(std::span<const double> lams,
                                                           std::span<const double> aux) {
  check_nodes(lams, aux);
  const int D = 2 * static_cast<int>(lams.size()) + 2;
  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> C(D, D);
  int row = 0;
  for (double l : lams) {
    const T x = l;
    for (int j = 0; j < D; ++j) {
      C(row, j) = ipow(x, D - j);
      C(row + 1, j) = static_cast<T>(D - j) * ipow(x, D - j - 1);
    }
    row += 2;
  }
  for (double a : aux) {
    const T x = a;
    for (int j = 0; j < D; ++j) C(row, j) = ipow(x, D - j);
    ++row;
  }
  return C;
}

LDVector confluent_rhs_ld(std::span<const double> lams, std::span<const double> aux) {
  check_nodes(lams, aux);
  const int D = 2 * static_cast<int>(lams.size()) + 2;
  LDVector d(D);
  int row = 0;
  for (double l : lams) {
    d(row++) = -ipow<long double>(l, D + 1);
    d(row++) = -static_cast<long double>(D + 1) * ipow<long double>(l, D);
  }
  for (double a : aux) d(row++) = -ipow<long double>(a, D + 1);
  return d;
}

Vector lu_solve_ld(const LDMatrix& C, const LDVector& d) {
  if (C.rows() != C.cols() || C.rows() != d.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "confluent system shape mismatch");
  }
  Eigen::PartialPivLU<LDMatrix> lu(C);
  const LDMatrix& U = lu.matrixLU();
  for (Eigen::Index i = 0; i < U.rows(); ++i) {
    if (U(i, i) == 0.0L) throw Error(ErrorCode::kSingular, "confluent matrix is singular");
  }
  const LDVector z = lu.solve(d);
  Vector out = z.cast<double>();
  if (!out.allFinite()) throw Error(ErrorCode::kSingular, "confluent solve overflowed");
  return out;
}

}  // namespace

Matrix build_confluent_vandermonde(std::span<const double> lams,
                                   std::span<const double> aux) {
  return confluent<double>(lams, aux);
}

Vector confluent_rhs(std::span<const double> lams, std::span<const double> aux) {
  return confluent_rhs_ld(lams, aux).cast<double>();
}

Vector confluent_solve(const Matrix& C, const Vector& d) {
  return lu_solve_ld(C.cast<long double>(), d.cast<long double>());
}

Vector solve_confluent(std::span<const double> lams, std::span<const double> aux,
                       const Vector& d) {
  return lu_solve_ld(confluent<long double>(lams, aux), d.cast<long double>());
}

Vector confluent_dense_solution(std::span<const double> lams,
                              std::span<const double> aux) {
  return lu_solve_ld(confluent<long double>(lams, aux), confluent_rhs_ld(lams, aux));
}

Vector confluent_closed_form(std::span<const double> lams, std::span<const double> aux) {
  check_nodes(lams, aux);
  std::vector<double> nodes;
  for (double l : lams) {
    nodes.push_back(l);
    nodes.push_back(l);
  }
  nodes.insert(nodes.end(), aux.begin(), aux.end());
  const std::vector<double> z = elementary_symmetric(nodes);
  return Eigen::Map<const Vector>(z.data(), static_cast<Eigen::Index>(z.size()));
}

}  // namespace nearctl
