#include "nearctl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "nearctl/error.hpp"

namespace nearctl {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kComplexSpectrum: return "ComplexSpectrum";
    case ErrorCode::kIllConditioned: return "IllConditioned";
    case ErrorCode::kOnHypersurface: return "OnHypersurface";
    case ErrorCode::kNonPositiveDiagonal: return "NonPositiveDiagonal";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kDegenerateNodes: return "DegenerateNodes";
    case ErrorCode::kSingular: return "Singular";
    case ErrorCode::kBigJordanBlock: return "BigJordanBlock";
    case ErrorCode::kZeroEigenvalue: return "ZeroEigenvalue";
    case ErrorCode::kGainSearchFailed: return "GainSearchFailed";
    case ErrorCode::kOrthantMismatch: return "OrthantMismatch";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kConnectFailed: return "ConnectFailed";
    case ErrorCode::kNotNearlyControllable: return "NotNearlyControllable";
    case ErrorCode::kEndpointOnHypersurface: return "EndpointOnHypersurface";
    case ErrorCode::kQExhausted: return "QExhausted";
    case ErrorCode::kSupportMismatch: return "SupportMismatch";
  }
  return "Unknown";
}

void Tolerances::validate() const {
  const bool positive = eig_cluster > 0 && rank_tol > 0 && real_root_tol > 0 &&
                        distinct_tol > 0 && verify_tol > 0;
  if (!positive || !(real_root_tol < distinct_tol) || !(distinct_tol < 1.0)) {
    throw Error(ErrorCode::kInvalidInput,
                "tolerances must be positive with real_root_tol < distinct_tol < 1");
  }
}

int Spectrum::total_multiplicity() const {
  int total = 0;
  for (const auto& c : eigenvalues) total += c.multiplicity;
  return total;
}

std::vector<double> JordanForm::distinct_eigenvalues() const {
  std::vector<double> out;
  for (const auto& b : blocks) {
    if (out.empty() || out.back() != b.eigenvalue) out.push_back(b.eigenvalue);
  }
  return out;
}

std::vector<JordanBlock> JordanForm::selected_blocks() const {
  std::vector<JordanBlock> out;
  for (const auto& b : blocks) {
    if (!out.empty() && out.back().eigenvalue == b.eigenvalue) {
      if (b.size > out.back().size) out.back() = b;
      continue;
    }
    out.push_back(b);
  }
  return out;
}

int JordanForm::largest_block() const {
  int best = 0;
  for (const auto& b : blocks) best = std::max(best, b.size);
  return best;
}

bool JordanForm::is_cyclic() const {
  return static_cast<int>(blocks.size()) == m;
}

bool JordanForm::has_steerable_shape() const {
  return is_cyclic() && largest_block() <= 2;
}

void require_finite(const Matrix& A, const char* what) {
  if (!A.allFinite()) {
    throw Error(ErrorCode::kNonFinite, std::string(what) + " has NaN/Inf entries");
  }
}

void require_finite(const Vector& x, const char* what) {
  if (!x.allFinite()) {
    throw Error(ErrorCode::kNonFinite, std::string(what) + " has NaN/Inf entries");
  }
}

namespace {

void require_square(const Matrix& B) {
  if (B.rows() != B.cols() || B.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix must be square and nonempty");
  }
}

double matrix_scale(const Matrix& B) { return std::max(1.0, B.norm()); }

// Single-linkage merge distance used to propose candidate clusters. Defective
// eigenvalues of a similarity-transformed Jordan block scatter by roughly
// (eps * cond)^(1/k); this radius covers k <= 4 at desk-scale conditioning.
constexpr double kCandidateRadius = 1e-2;

struct Candidate {
  std::vector<int> members;
};

std::complex<double> mean_of(const std::vector<std::complex<double>>& z,
                             const std::vector<int>& idx) {
  std::complex<double> s = 0.0;
  for (int i : idx) s += z[i];
  return s / static_cast<double>(idx.size());
}

double diameter_of(const std::vector<std::complex<double>>& z,
                   const std::vector<int>& idx) {
  double d = 0.0;
  for (size_t a = 0; a < idx.size(); ++a) {
    for (size_t b = a + 1; b < idx.size(); ++b) {
      d = std::max(d, std::abs(z[idx[a]] - z[idx[b]]));
    }
  }
  return d;
}

// Splits idx into the two components left after removing the longest edge of
// its single-linkage spanning tree.
std::pair<std::vector<int>, std::vector<int>> split_longest_edge(
    const std::vector<std::complex<double>>& z, const std::vector<int>& idx) {
  const size_t k = idx.size();
  // Prim's MST over the complete graph.
  std::vector<bool> in_tree(k, false);
  std::vector<double> best(k, INFINITY);
  std::vector<int> parent(k, -1);
  best[0] = 0.0;
  for (size_t step = 0; step < k; ++step) {
    int u = -1;
    for (size_t i = 0; i < k; ++i) {
      if (!in_tree[i] && (u < 0 || best[i] < best[u])) u = static_cast<int>(i);
    }
    in_tree[u] = true;
    for (size_t v = 0; v < k; ++v) {
      const double d = std::abs(z[idx[u]] - z[idx[v]]);
      if (!in_tree[v] && d < best[v]) {
        best[v] = d;
        parent[v] = u;
      }
    }
  }
  size_t cut = 1;
  for (size_t i = 1; i < k; ++i) {
    if (best[i] > best[cut]) cut = i;
  }
  // Component containing `cut` once the edge (cut, parent[cut]) is removed.
  std::vector<std::vector<int>> adj(k);
  for (size_t i = 1; i < k; ++i) {
    if (i == cut) continue;
    adj[i].push_back(parent[i]);
    adj[parent[i]].push_back(static_cast<int>(i));
  }
  std::vector<bool> side(k, false);
  std::vector<int> stack{static_cast<int>(cut)};
  side[cut] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!side[v]) {
        side[v] = true;
        stack.push_back(v);
      }
    }
  }
  std::pair<std::vector<int>, std::vector<int>> out;
  for (size_t i = 0; i < k; ++i) (side[i] ? out.first : out.second).push_back(idx[i]);
  return out;
}

// A group of k computed eigenvalues is accepted as one eigenvalue of algebraic
// multiplicity k when (B - mean I)^k has a k-dimensional numerical nullspace.
bool is_multiple_eigenvalue(const Matrix& B, std::complex<double> mean, int k,
                            double threshold) {
  if (std::abs(mean.imag()) > threshold) return false;
  const Eigen::Index n = B.rows();
  const Matrix N = B - mean.real() * Matrix::Identity(n, n);
  Matrix power = N;
  for (int i = 1; i < k; ++i) power = power * N;
  Eigen::JacobiSVD<Matrix> svd(power);
  const Vector sv = svd.singularValues();
  int nullity = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= threshold * std::pow(std::max(1.0, N.norm()), k - 1)) ++nullity;
  }
  return nullity == k;
}

void cluster_recursive(const Matrix& B, const std::vector<std::complex<double>>& z,
                       const std::vector<int>& idx, const Tolerances& tol,
                       double scale, std::vector<Candidate>& out) {
  if (idx.size() == 1) {
    out.push_back({idx});
    return;
  }
  const std::complex<double> mu = mean_of(z, idx);
  const bool twins = diameter_of(z, idx) <= tol.eig_cluster * std::max(1.0, std::abs(mu));
  if (twins || is_multiple_eigenvalue(B, mu, static_cast<int>(idx.size()),
                                      tol.rank_tol * scale)) {
    out.push_back({idx});
    return;
  }
  auto [a, b] = split_longest_edge(z, idx);
  cluster_recursive(B, z, a, tol, scale, out);
  cluster_recursive(B, z, b, tol, scale, out);
}

}  // namespace

Spectrum eigen_real(const Matrix& B, const Tolerances& tol) {
  require_square(B);
  require_finite(B, "B");
  const double scale = matrix_scale(B);
  Spectrum spec;
  spec.raw = hessenberg_qr_eigenvalues(B);
  const auto& z = spec.raw;
  const int n = static_cast<int>(z.size());

  // Candidate groups: connected components under the candidate radius.
  double max_abs = 1.0;
  for (const auto& v : z) max_abs = std::max(max_abs, std::abs(v));
  const double radius = kCandidateRadius * max_abs;
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int i) {
    while (comp[i] != i) i = comp[i] = comp[comp[i]];
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(z[i] - z[j]) <= radius) comp[find(i)] = find(j);
    }
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> group_of(n, -1);
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    if (group_of[root] < 0) {
      group_of[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[group_of[root]].push_back(i);
  }

  std::vector<Candidate> clusters;
  for (const auto& g : groups) cluster_recursive(B, z, g, tol, scale, clusters);

  for (const auto& c : clusters) {
    const std::complex<double> mu = mean_of(z, c.members);
    if (std::abs(mu.imag()) > tol.rank_tol * scale) spec.all_real = false;
    spec.eigenvalues.push_back({mu.real(), static_cast<int>(c.members.size())});
  }
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(),
            [](const auto& a, const auto& b) { return a.value < b.value; });
  return spec;
}

namespace {

// Orthonormal basis for the nullspace of A, using the `dim` smallest singular
// directions.
Matrix smallest_right_singular_vectors(const Matrix& A, int dim, Vector* sv_out) {
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
  if (sv_out) *sv_out = svd.singularValues();
  const Matrix& V = svd.matrixV();
  return V.rightCols(dim);
}

struct Chain {
  double eigenvalue;
  std::vector<Vector> columns;  // eigenvector first, chain top last
};

// Ambiguity band around the rank threshold: a singular value inside it means
// the rank decision could flip under a tiny perturbation.
constexpr double kAmbiguityFactor = 100.0;

std::vector<Chain> chains_for_eigenvalue(const Matrix& B, double lambda, int alg_mult,
                                         const Tolerances& tol, double scale) {
  const Eigen::Index n = B.rows();
  const Matrix N = B - lambda * Matrix::Identity(n, n);

  // Generalized eigenspace: nullspace of N^a with known dimension a.
  Matrix Na = N;
  for (int i = 1; i < alg_mult; ++i) Na = Na * N;
  Vector sv;
  const Matrix Z = smallest_right_singular_vectors(Na, alg_mult, &sv);
  if (alg_mult < n) {
    const double kept = sv(n - alg_mult);
    const double dropped = sv(n - alg_mult - 1);
    if (!(kept <= 1e-3 * dropped)) {
      throw Error(ErrorCode::kIllConditioned,
                  "generalized eigenspace of eigenvalue " + std::to_string(lambda) +
                      " is not separated from the rest of the spectrum");
    }
  }

  // Restricted nilpotent part and its kernel dimensions d_k = dim ker Nr^k.
  const Matrix Nr = Z.transpose() * N * Z;
  const double threshold = tol.rank_tol * scale;
  std::vector<int> d{0};
  std::vector<Matrix> kernels{Matrix(alg_mult, 0)};
  Matrix power = Matrix::Identity(alg_mult, alg_mult);
  while (d.back() < alg_mult) {
    power = power * Nr;
    Vector psv;
    Eigen::JacobiSVD<Matrix> svd(power, Eigen::ComputeFullV);
    psv = svd.singularValues();
    int nullity = 0;
    for (Eigen::Index i = 0; i < psv.size(); ++i) {
      if (psv(i) <= threshold) {
        ++nullity;
      } else if (psv(i) < kAmbiguityFactor * threshold) {
        throw Error(ErrorCode::kIllConditioned,
                    "ambiguous rank decision for eigenvalue " + std::to_string(lambda));
      }
    }
    for (Eigen::Index i = 0; i < psv.size(); ++i) {
      if (psv(i) <= threshold && psv(i) > threshold / kAmbiguityFactor) {
        throw Error(ErrorCode::kIllConditioned,
                    "ambiguous rank decision for eigenvalue " + std::to_string(lambda));
      }
    }
    const int blocks_at_level = nullity - d.back();
    const int prev_level = static_cast<int>(d.size()) >= 2 ? d.back() - d[d.size() - 2]
                                                           : alg_mult;
    if (blocks_at_level <= 0 || blocks_at_level > prev_level) {
      throw Error(ErrorCode::kIllConditioned,
                  "inconsistent Jordan chain dimensions for eigenvalue " +
                      std::to_string(lambda));
    }
    d.push_back(nullity);
    kernels.push_back(svd.matrixV().rightCols(nullity));
  }
  const int depth = static_cast<int>(d.size()) - 1;

  // Blocks of size >= k: d_k - d_{k-1}.
  auto at_least = [&](int k) { return k > depth ? 0 : d[k] - d[k - 1]; };

  // Top-down chain selection in the reduced coordinates.
  struct ReducedChain {
    Vector top;
    int length;
  };
  std::vector<ReducedChain> reduced;
  for (int k = depth; k >= 1; --k) {
    const int exact = at_least(k) - at_least(k + 1);
    if (exact == 0) continue;
    // Span to avoid: ker Nr^{k-1} plus level-k images of longer chains.
    Matrix avoid(alg_mult, kernels[k - 1].cols() + static_cast<Eigen::Index>(reduced.size()));
    avoid.leftCols(kernels[k - 1].cols()) = kernels[k - 1];
    for (size_t c = 0; c < reduced.size(); ++c) {
      Vector v = reduced[c].top;
      for (int s = 0; s < reduced[c].length - k; ++s) v = Nr * v;
      avoid.col(kernels[k - 1].cols() + static_cast<Eigen::Index>(c)) = v;
    }
    Matrix projected = kernels[k];
    if (avoid.cols() > 0) {
      Eigen::JacobiSVD<Matrix> asvd(avoid, Eigen::ComputeThinU);
      const Vector asv = asvd.singularValues();
      int rank = 0;
      for (Eigen::Index i = 0; i < asv.size(); ++i) {
        if (asv(i) > threshold) ++rank;
      }
      const Matrix U = asvd.matrixU().leftCols(rank);
      projected -= U * (U.transpose() * projected);
    }
    Eigen::JacobiSVD<Matrix> psvd(projected, Eigen::ComputeThinU);
    const Vector psv = psvd.singularValues();
    if (psv.size() < exact || psv(exact - 1) <= kAmbiguityFactor * threshold) {
      throw Error(ErrorCode::kIllConditioned,
                  "could not extend Jordan chains for eigenvalue " + std::to_string(lambda));
    }
    for (int c = 0; c < exact; ++c) reduced.push_back({psvd.matrixU().col(c), k});
  }

  // Lift to the full space; chains are generated with the full N.
  std::vector<Chain> chains;
  for (const auto& rc : reduced) {
    Chain ch{lambda, std::vector<Vector>(rc.length)};
    Vector v = Z * rc.top;
    ch.columns[rc.length - 1] = v;
    for (int s = rc.length - 2; s >= 0; --s) {
      v = N * v;
      ch.columns[s] = v;
    }
    // Balance column norms along the chain, then fix the sign of the
    // eigenvector by its largest entry.
    double log_mean = 0.0;
    for (const auto& c : ch.columns) log_mean += std::log(c.norm());
    const double factor = std::exp(-log_mean / rc.length);
    Eigen::Index arg = 0;
    ch.columns[0].cwiseAbs().maxCoeff(&arg);
    const double sign = ch.columns[0](arg) < 0 ? -1.0 : 1.0;
    for (auto& c : ch.columns) c *= factor * sign;
    chains.push_back(std::move(ch));
  }
  std::stable_sort(chains.begin(), chains.end(), [](const Chain& a, const Chain& b) {
    return a.columns.size() > b.columns.size();
  });
  return chains;
}

void finish_structure(JordanForm& jf) {
  jf.m = 0;
  jf.r = 0;
  for (const auto& b : jf.selected_blocks()) {
    ++jf.m;
    if (b.size >= 2) ++jf.r;
  }
}

Matrix jordan_matrix(const std::vector<JordanBlock>& blocks, Eigen::Index n) {
  Matrix J = Matrix::Zero(n, n);
  for (const auto& b : blocks) {
    for (int i = 0; i < b.size; ++i) {
      J(b.offset() + i, b.offset() + i) = b.eigenvalue;
      if (i + 1 < b.size) J(b.offset() + i, b.offset() + i + 1) = 1.0;
    }
  }
  return J;
}

}  // namespace

JordanForm jordan_decompose(const Matrix& B, const Tolerances& tol) {
  const Spectrum spec = eigen_real(B, tol);
  if (!spec.all_real) {
    throw Error(ErrorCode::kComplexSpectrum,
                "B has complex eigenvalues; only real spectra are supported");
  }
  const double scale = matrix_scale(B);
  const Eigen::Index n = B.rows();

  struct Group {
    double eigenvalue;
    std::vector<Chain> chains;
  };
  std::vector<Group> groups;
  for (const auto& c : spec.eigenvalues) {
    groups.push_back({c.value, chains_for_eigenvalue(B, c.value, c.multiplicity, tol, scale)});
  }
  std::stable_sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
    const bool a_long = a.chains.front().columns.size() >= 2;
    const bool b_long = b.chains.front().columns.size() >= 2;
    if (a_long != b_long) return a_long;
    return a.eigenvalue < b.eigenvalue;
  });

  JordanForm jf;
  jf.P_inv.resize(n, n);
  int col = 0;
  for (const auto& g : groups) {
    for (const auto& ch : g.chains) {
      const int size = static_cast<int>(ch.columns.size());
      jf.blocks.push_back({g.eigenvalue, size, col + 1});
      for (const auto& c : ch.columns) jf.P_inv.col(col++) = c;
    }
  }
  jf.J = jordan_matrix(jf.blocks, n);
  Eigen::FullPivLU<Matrix> lu(jf.P_inv);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::kIllConditioned, "generalized eigenvectors are dependent");
  }
  jf.P = lu.inverse();
  jf.residual = (jf.P * B * jf.P_inv - jf.J).norm();
  finish_structure(jf);
  if (jf.residual > 1e3 * tol.rank_tol * scale) {
    throw Error(ErrorCode::kIllConditioned,
                "Jordan reconstruction residual " + std::to_string(jf.residual) +
                    " is too large");
  }
  return jf;
}

JordanForm jordan_from_pinned(const Matrix& B, const Matrix& J, const Matrix& P,
                              const Tolerances& tol) {
  require_square(B);
  require_finite(B, "B");
  require_finite(J, "J");
  require_finite(P, "P");
  const Eigen::Index n = B.rows();
  if (J.rows() != n || J.cols() != n || P.rows() != n || P.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "pinned J and P must match B");
  }
  const double exact = 1e-12 * matrix_scale(J);
  JordanForm jf;
  for (Eigen::Index i = 0; i < n;) {
    const double lambda = J(i, i);
    Eigen::Index end = i + 1;
    while (end < n && std::abs(J(end - 1, end) - 1.0) <= exact &&
           std::abs(J(end, end) - lambda) <= exact) {
      ++end;
    }
    jf.blocks.push_back({lambda, static_cast<int>(end - i), static_cast<int>(i) + 1});
    i = end;
  }
  const Matrix ideal = jordan_matrix(jf.blocks, n);
  if ((J - ideal).cwiseAbs().maxCoeff() > exact) {
    throw Error(ErrorCode::kInvalidInput, "pinned J is not a Jordan matrix");
  }
  // Equal eigenvalues must occupy adjacent blocks.
  for (size_t a = 0; a < jf.blocks.size(); ++a) {
    for (size_t b = a + 2; b < jf.blocks.size(); ++b) {
      if (jf.blocks[a].eigenvalue == jf.blocks[b].eigenvalue &&
          jf.blocks[a + 1].eigenvalue != jf.blocks[a].eigenvalue) {
        throw Error(ErrorCode::kInvalidInput,
                    "pinned J must keep blocks of one eigenvalue adjacent");
      }
    }
  }
  Eigen::FullPivLU<Matrix> lu(P);
  if (!lu.isInvertible()) throw Error(ErrorCode::kInvalidInput, "pinned P is singular");
  jf.J = ideal;
  jf.P = P;
  jf.P_inv = lu.inverse();
  jf.residual = (jf.P * B * jf.P_inv - jf.J).norm();
  if (jf.residual > tol.rank_tol * matrix_scale(B)) {
    throw Error(ErrorCode::kInvalidInput,
                "pinned (J, P) does not satisfy P B P^-1 = J (residual " +
                    std::to_string(jf.residual) + ")");
  }
  finish_structure(jf);
  return jf;
}

double krylov_det(const Matrix& B, const Vector& x) {
  require_square(B);
  if (x.size() != B.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "x must have length n");
  }
  const Eigen::Index n = B.rows();
  Matrix K(n, n);
  Vector col = x;
  for (Eigen::Index j = 0; j < n; ++j) {
    K.col(j) = col;
    col = B * col;
  }
  return Eigen::PartialPivLU<Matrix>(K).determinant();
}

SignPattern orthant_signature(const Vector& x, const JordanForm& jf, const Tolerances& tol) {
  if (x.size() != jf.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "state length does not match J");
  }
  if (!jf.has_steerable_shape()) {
    throw Error(ErrorCode::kInvalidInput,
                "orthants are defined only for cyclic J with blocks of size <= 2");
  }
  const double threshold = tol.rank_tol * x.cwiseAbs().maxCoeff();
  SignPattern signs;
  for (const auto& b : jf.blocks) {
    const double v = x(b.decisive_row());
    if (!(std::abs(v) > threshold)) {
      throw Error(ErrorCode::kOnHypersurface,
                  "coordinate " + std::to_string(b.decisive_row() + 1) + " is zero");
    }
    signs.push_back(v > 0 ? 1 : -1);
  }
  return signs;
}

Matrix matrix_fractional_root(const Matrix& T, int q, const JordanForm& jf) {
  if (q < 1) throw Error(ErrorCode::kInvalidInput, "q must be a positive integer");
  const Eigen::Index n = jf.n();
  if (T.rows() != n || T.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "T does not match the Jordan structure");
  }
  require_finite(T, "T");
  Matrix outside = T;
  Matrix R = Matrix::Zero(n, n);
  const double qd = static_cast<double>(q);
  for (const auto& b : jf.blocks) {
    const int o = b.offset();
    if (b.size > 2) {
      throw Error(ErrorCode::kInvalidInput, "blocks larger than 2 are not supported");
    }
    const double a = T(o, o);
    if (!(a > 0.0)) {
      throw Error(ErrorCode::kNonPositiveDiagonal,
                  "diagonal entry " + std::to_string(a) + " is not positive");
    }
    const double root = std::pow(a, 1.0 / qd);
    R(o, o) = root;
    outside(o, o) = 0.0;
    if (b.size == 2) {
      if (std::abs(T(o + 1, o + 1) - a) > 1e-12 * a) {
        throw Error(ErrorCode::kInvalidInput, "2x2 block must have equal diagonal");
      }
      if (!(T(o + 1, o + 1) > 0.0)) {
        throw Error(ErrorCode::kNonPositiveDiagonal, "diagonal entry is not positive");
      }
      R(o + 1, o + 1) = root;
      R(o, o + 1) = T(o, o + 1) / (qd * std::pow(a, (qd - 1.0) / qd));
      outside(o + 1, o + 1) = 0.0;
      outside(o, o + 1) = 0.0;
      outside(o + 1, o) = 0.0;
      if (T(o + 1, o) != 0.0) {
        throw Error(ErrorCode::kInvalidInput, "2x2 block must be upper triangular");
      }
    }
  }
  if (outside.cwiseAbs().maxCoeff() > 0.0) {
    throw Error(ErrorCode::kInvalidInput, "T has entries outside its Jordan blocks");
  }
  return R;
}

Matrix principal_submatrix(const Matrix& A, std::span<const int> rows) {
  const Eigen::Index e = static_cast<Eigen::Index>(rows.size());
  Matrix S(e, e);
  for (Eigen::Index i = 0; i < e; ++i) {
    for (Eigen::Index j = 0; j < e; ++j) S(i, j) = A(rows[i], rows[j]);
  }
  return S;
}

}  // namespace nearctl
