#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nearctl/tolerances.hpp"

namespace nearctl {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// One sign (+1 or -1) per distinct eigenvalue, read off the coordinate that
// decides membership of the removed hypersurface.
using SignPattern = std::vector<int>;

struct EigenvalueCluster {
  double value;
  int multiplicity;
};

struct Spectrum {
  std::vector<EigenvalueCluster> eigenvalues;  // ascending by value
  bool all_real = true;
  // Raw (unclustered) eigenvalues, kept for diagnostics.
  std::vector<std::complex<double>> raw;

  int total_multiplicity() const;
};

struct JordanBlock {
  double eigenvalue;
  int size;
  int start_index;  // 1-based row of the block's first entry in J

  int offset() const { return start_index - 1; }
  // 0-based row of the coordinate that must be nonzero off the hypersurface.
  int decisive_row() const { return start_index - 1 + size - 1; }
};

// Real Jordan decomposition P * B * P^{-1} = J.
//
// Blocks are ordered canonically: eigenvalues whose largest block has size at
// least two come first, then the rest, each group by ascending eigenvalue.
// Blocks of one eigenvalue are adjacent and sorted by descending size, so the
// first block of each eigenvalue is its largest ("selected") block.
struct JordanForm {
  Matrix J;
  Matrix P;
  Matrix P_inv;
  std::vector<JordanBlock> blocks;
  int m = 0;  // distinct eigenvalues
  int r = 0;  // distinct eigenvalues whose selected block has size >= 2
  double residual = 0.0;  // ||P B P^{-1} - J||_F

  int n() const { return static_cast<int>(J.rows()); }
  // Distinct eigenvalues in block order.
  std::vector<double> distinct_eigenvalues() const;
  // Blocks with the largest size for each distinct eigenvalue, in order.
  std::vector<JordanBlock> selected_blocks() const;
  int largest_block() const;
  bool is_cyclic() const;
  // One block per eigenvalue and no block larger than two.
  bool has_steerable_shape() const;
};

// Complex eigenvalues of a general real matrix: balancing, Householder
// reduction to Hessenberg form and Francis double-shift QR.
std::vector<std::complex<double>> hessenberg_qr_eigenvalues(const Matrix& A);

void require_finite(const Matrix& A, const char* what);
void require_finite(const Vector& x, const char* what);

Spectrum eigen_real(const Matrix& B, const Tolerances& tol = {});

JordanForm jordan_decompose(const Matrix& B, const Tolerances& tol = {});

// Builds a JordanForm from a caller-supplied (J, P) pair after checking that
// J is a Jordan matrix and P B P^{-1} = J within tolerance.
JordanForm jordan_from_pinned(const Matrix& B, const Matrix& J, const Matrix& P,
                              const Tolerances& tol = {});

// det[x, Bx, ..., B^{n-1}x].
double krylov_det(const Matrix& B, const Vector& x);

// Signs of the decisive coordinates of x (in J coordinates). Throws
// kOnHypersurface when one of them vanishes relative to ||x||_inf.
SignPattern orthant_signature(const Vector& x, const JordanForm& jf,
                              const Tolerances& tol = {});

// Principal q-th root of a matrix with the block structure of jf whose blocks
// are [a b; 0 a] or [a] with a > 0.
Matrix matrix_fractional_root(const Matrix& T, int q, const JordanForm& jf);

// Main submatrix on the given 0-based rows/columns.
Matrix principal_submatrix(const Matrix& A, std::span<const int> rows);

}  // namespace nearctl
