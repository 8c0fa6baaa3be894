#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nearctl/linalg.hpp"
#include "nearctl/tolerances.hpp"

namespace nearctl {

// Real polynomial stored with descending coefficients, leading term first.
// Leading zeros are stripped on construction; the zero polynomial is {0}.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> descending);

  const std::vector<double>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  double leading() const { return coeffs_.front(); }
  // Coefficient of s^k (zero beyond the degree).
  double coefficient(int k) const;

  double operator()(double s) const;
  std::complex<double> operator()(std::complex<double> s) const;
  // sum_i |c_i| |s|^(d-i): the natural scale for judging |p(s)|.
  double magnitude_at(std::complex<double> s) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(double k) const;
  Polynomial operator*(const Polynomial& other) const;

 private:
  std::vector<double> coeffs_;
};

struct RootSet {
  // Sorted by real part, then imaginary part. Roots judged real carry an
  // imaginary part of exactly zero.
  std::vector<std::complex<double>> roots;
  std::vector<double> residuals;  // |p(root)|

  bool all_real() const;
  std::vector<double> real_parts() const;
};

// Monic polynomial prod (s - r_i).
Polynomial poly_from_roots(std::span<const double> roots);

// Aberth-Ehrlich simultaneous iteration seeded from the Newton polygon, with
// companion-matrix eigenvalues as the fallback. Throws kNoConvergence if
// neither meets the residual bound, kInvalidInput for degree < 1.
RootSet poly_roots(const Polynomial& p, const Tolerances& tol = {});

// (z_1, ..., z_d) with prod (s - v_i) = s^d + z_1 s^(d-1) + ... + z_d.
std::vector<double> elementary_symmetric(std::span<const double> values);

// Confluent Vandermonde matrix on double nodes lams and simple nodes aux:
// rows (l^D, ..., l) and (D l^(D-1), ..., 1) per lam, then (a^D, ..., a) per
// aux, with D = 2m + 2. Throws kDegenerateNodes for zero or repeated nodes.
Matrix build_confluent_vandermonde(std::span<const double> lams,
                                   std::span<const double> aux);

// Right-hand side (-l^(D+1), -(D+1) l^D, ..., -a^(D+1)) for which the solution
// is the coefficient vector of prod (s - l_i)^2 (s - a_1)(s - a_2).
Vector confluent_rhs(std::span<const double> lams, std::span<const double> aux);

// Dense solve of C z = d by partial-pivot LU in extended precision.
Vector confluent_solve(const Matrix& C, const Vector& d);

// Same solve, but C is assembled directly in extended precision from the
// nodes. Every synthesis path goes through this overload.
Vector solve_confluent(std::span<const double> lams, std::span<const double> aux,
                       const Vector& d);

// Dense solve of the confluent_rhs system with both C and d assembled in
// extended precision.
Vector confluent_dense_solution(std::span<const double> lams, std::span<const double> aux);

// Closed form for the confluent_rhs system: elementary_symmetric over
// {l_1, l_1, ..., l_m, l_m, a_1, a_2}.
Vector confluent_closed_form(std::span<const double> lams, std::span<const double> aux);

}  // namespace nearctl
