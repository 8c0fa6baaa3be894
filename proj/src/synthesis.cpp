#include "nearctl/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <string>

#include "nearctl/error.hpp"

namespace nearctl {

namespace {

constexpr double kLoopTolerance = 1e-8;

}  // namespace

double LocusProblem::pole_scale() const {
  double s = 0.0;
  for (double p : poles) s = std::max(s, std::abs(p));
  return s > 0.0 ? s : 1.0;
}

AuxPoles choose_aux_poles(std::span<const double> lams) {
  if (lams.empty()) throw Error(ErrorCode::kInvalidInput, "no eigenvalues given");
  double lo = INFINITY;
  double hi = 0.0;
  for (double l : lams) {
    if (l == 0.0) throw Error(ErrorCode::kZeroEigenvalue, "eigenvalue is zero");
    lo = std::min(lo, std::abs(l));
    hi = std::max(hi, std::abs(l));
  }
  return {lo / 2.0, -2.0 * hi};
}

std::vector<AuxPoles> aux_pole_schedule(std::span<const double> lams, int retries) {
  std::vector<AuxPoles> out{choose_aux_poles(lams)};
  for (int k = 0; k < retries; ++k) {
    AuxPoles a = out.back();
    a.lam_m1 /= 2.0;
    out.push_back(a);
  }
  return out;
}

LocusProblem make_locus_problem(std::span<const double> lams, const AuxPoles& aux,
                                const Vector& mu) {
  const int m = static_cast<int>(lams.size());
  const int D = 2 * m + 2;
  LocusProblem lp;
  lp.poles.push_back(0.0);
  for (double l : lams) {
    lp.poles.push_back(-l);
    lp.poles.push_back(-l);
  }
  lp.poles.push_back(-aux.lam_m1);
  lp.poles.push_back(-aux.lam_m2);
  lp.denominator = poly_from_roots(lp.poles);
  if (mu.size() == 0) {
    lp.numerator = Polynomial({1.0});
    return lp;
  }
  if (mu.size() != D) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mu must have " + std::to_string(D) + " entries");
  }
  // Coefficient of s^(D+1-j) is (-1)^(D+1-j) mu_j; constant term 1.
  std::vector<double> num(D + 1, 0.0);
  for (int j = 1; j <= D; ++j) {
    const int power = D + 1 - j;
    num[j - 1] = (power % 2 == 0 ? 1.0 : -1.0) * mu(j - 1);
  }
  num[D] = 1.0;
  lp.numerator = Polynomial(std::move(num));
  return lp;
}

std::vector<double> default_k_grid(const LocusProblem& problem, const SteeringLimits& limits) {
  if (!(limits.k_lo > 0.0) || !(limits.k_hi >= limits.k_lo) || !(limits.k_ratio > 1.0)) {
    throw Error(ErrorCode::kInvalidInput, "invalid gain grid limits");
  }
  // The constant coefficient vanishes (pole at 0); s^1 carries the scale.
  double S = std::abs(problem.denominator.coefficient(1));
  if (S == 0.0) S = 1.0;
  std::vector<double> grid;
  const double hi = limits.k_hi * S * (1.0 + 1e-12);
  for (double K = limits.k_lo * S; K <= hi; K *= limits.k_ratio) grid.push_back(K);
  return grid;
}

namespace {

// Newton on den(s) + K num(s) with the denominator kept in product form and
// everything in long double. The expanded coefficients lose the clustered
// double poles to rounding; the factored form does not, and the controls
// (reciprocals) inherit the root accuracy directly.
double polish_locus_root(const LocusProblem& problem, double K, double x) {
  using LD = long double;
  auto eval = [&](LD z, LD& df) {
    LD d = 1.0L, dd = 0.0L;
    for (double p : problem.poles) {
      dd = dd * (z - p) + d;
      d *= z - p;
    }
    LD nv = 0.0L, nd = 0.0L;
    for (double c : problem.numerator.coeffs()) {
      nd = nd * z + nv;
      nv = nv * z + c;
    }
    df = dd + K * nd;
    return d + K * nv;
  };
  LD z = x, df = 0.0L;
  LD best = std::abs(eval(z, df));
  for (int it = 0; it < 8 && best > 0.0L && df != 0.0L; ++it) {
    const LD next = z - eval(z, df) / df;
    LD dn = 0.0L;
    const LD fn = std::abs(eval(next, dn));
    if (!(fn < best)) break;
    z = next;
    best = fn;
    df = dn;
  }
  return static_cast<double>(z);
}

std::optional<GainResult> try_gain(const LocusProblem& problem, double K, size_t index,
                                   const Tolerances& tol) {
  const Polynomial p = problem.closed_loop(K);
  RootSet rs;
  try {
    rs = poly_roots(p, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kNoConvergence) return std::nullopt;
    throw;
  }
  if (!rs.all_real()) return std::nullopt;
  for (auto& z : rs.roots) z = {polish_locus_root(problem, K, z.real()), 0.0};
  std::sort(rs.roots.begin(), rs.roots.end(),
            [](const auto& a, const auto& b) { return a.real() < b.real(); });
  for (size_t i = 0; i < rs.roots.size(); ++i) rs.residuals[i] = std::abs(p(rs.roots[i]));
  const double floor = tol.distinct_tol * problem.pole_scale();
  const std::vector<double> r = rs.real_parts();  // ascending
  double min_gap = INFINITY;
  for (size_t i = 0; i < r.size(); ++i) {
    if (std::abs(r[i]) < floor) return std::nullopt;
    if (rs.residuals[i] > 1e-8 * p.magnitude_at(r[i])) return std::nullopt;
    if (i > 0) {
      min_gap = std::min(min_gap, r[i] - r[i - 1]);
      if (r[i] - r[i - 1] < floor) return std::nullopt;
    }
  }
  GainResult g;
  g.K = K;
  g.grid_index = index;
  g.min_gap = min_gap;
  for (double x : r) g.controls.values.push_back(1.0 / x);
  std::sort(g.controls.values.begin(), g.controls.values.end());
  g.roots = std::move(rs);
  return g;
}

void trace(const SteeringLimits& limits, const std::string& msg) {
  if (limits.trace) limits.trace(msg);
}

// ||prod (I + u_k J) - I||_F with the product formed in long double: the
// residual of the controls themselves, free of evaluation-order rounding.
double exact_loop_residual(const Matrix& J, std::span<const double> u) {
  using LDMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = J.rows();
  const LDMatrix Jl = J.cast<long double>();
  LDMatrix M = LDMatrix::Identity(n, n);
  for (double uk : u) M = M + static_cast<long double>(uk) * (Jl * M);
  return static_cast<double>((M - LDMatrix::Identity(n, n)).norm());
}

// How far double rounding can move the product. With the product near I,
// d/du_k of it is about (I + u_k J)^{-1} J, so rounding u_k (or the factor)
// by eps moves the product by eps |u_k| ||(I + u_k J)^{-1} J||. Near-double
// roots make factors nearly singular and this large.
double loop_rounding_noise(const Matrix& J, std::span<const double> u) {
  const Eigen::Index n = J.rows();
  const Matrix I = Matrix::Identity(n, n);
  double total = 0.0;
  for (double uk : u) {
    const Eigen::PartialPivLU<Matrix> lu(I + uk * J);
    const Matrix S = lu.solve(J);
    if (!S.allFinite()) return INFINITY;
    total += std::abs(uk) * S.norm();
  }
  return std::numeric_limits<double>::epsilon() * total;
}

void apply_controls(const Matrix& J, Vector& x, std::span<const double> u) {
  for (double uk : u) x += uk * (J * x);
}

}  // namespace

GainResult gain_search_real_roots(const LocusProblem& problem, std::span<const double> grid,
                                  const Tolerances& tol, size_t start) {
  for (size_t i = start; i < grid.size(); ++i) {
    if (auto g = try_gain(problem, grid[i], i, tol)) return std::move(*g);
  }
  throw Error(ErrorCode::kInfeasible, "no gain in the grid gives real, distinct, nonzero roots");
}

IdentityLoop identity_loop(const JordanForm& jf, const Tolerances& tol,
                           const SteeringLimits& limits) {
  for (const auto& b : jf.blocks) {
    if (is_zero_eigenvalue(b.eigenvalue, jf, tol)) {
      throw Error(ErrorCode::kZeroEigenvalue, "B has a zero eigenvalue");
    }
  }
  if (jf.largest_block() > 2) {
    throw Error(ErrorCode::kBigJordanBlock,
                "Jordan block of size " + std::to_string(jf.largest_block()) +
                    " admits no identity loop");
  }
  // For noncyclic J the loop is designed on the selected blocks; smaller
  // blocks of the same eigenvalue see the same scalar factors.
  const std::vector<double> lams = jf.distinct_eigenvalues();
  IdentityLoop out;
  out.noncyclic_fallback = !jf.is_cyclic();
  const Matrix I = Matrix::Identity(jf.n(), jf.n());
  for (const AuxPoles& aux : aux_pole_schedule(lams, limits.aux_retries)) {
    const LocusProblem lp = make_locus_problem(lams, aux);
    const std::vector<double> grid = default_k_grid(lp, limits);
    size_t start = 0;
    while (start < grid.size()) {
      GainResult g;
      try {
        g = gain_search_real_roots(lp, grid, tol, start);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kInfeasible) throw;
        break;
      }
      // Judged on the long-double product: for clustered spectra every
      // feasible gain leaves some factors nearly singular, and a double
      // product then carries rounding far above the controls' own error.
      const double residual = exact_loop_residual(jf.J, g.controls.values);
      const double noise = loop_rounding_noise(jf.J, g.controls.values);
      if (residual <= kLoopTolerance) {
        out.aux = aux;
        out.controls = std::move(g.controls);
        out.K = g.K;
        out.residual = residual;
        return out;
      }
      std::ostringstream os;
      os << "identity loop: K=" << g.K << " rejected, residual " << residual
         << " (double rounding up to " << noise << ")";
      trace(limits, os.str());
      start = g.grid_index + 1;
    }
    trace(limits, "identity loop: no verified gain with lam_m1=" + std::to_string(aux.lam_m1));
  }
  throw Error(ErrorCode::kGainSearchFailed, "no grid gain yields a verified identity loop");
}

TransitionMatrix transition_matrix(const Vector& zeta, const Vector& eta, const JordanForm& jf,
                                   const Tolerances& tol) {
  const SignPattern sz = orthant_signature(zeta, jf, tol);
  const SignPattern se = orthant_signature(eta, jf, tol);
  if (sz != se) {
    throw Error(ErrorCode::kOrthantMismatch, "zeta and eta lie in different orthants");
  }
  const Eigen::Index n = jf.n();
  TransitionMatrix tm{Matrix::Zero(n, n)};
  Matrix& T = tm.T;
  for (const auto& b : jf.blocks) {
    const int o = b.offset();
    if (b.size == 1) {
      T(o, o) = eta(o) / zeta(o);
      continue;
    }
    const double z1 = zeta(o), z2 = zeta(o + 1);
    const double e1 = eta(o), e2 = eta(o + 1);
    T(o, o) = T(o + 1, o + 1) = e2 / z2;
    T(o, o + 1) = e1 / z2 - z1 * e2 / (z2 * z2);
  }
  return tm;
}

Vector mu_coefficients(const Matrix& T_root, const AuxPoles& aux, const JordanForm& jf) {
  if (!jf.has_steerable_shape()) {
    throw Error(ErrorCode::kInvalidInput, "mu needs a cyclic J with blocks of size <= 2");
  }
  if (T_root.rows() != jf.n() || T_root.cols() != jf.n()) {
    throw Error(ErrorCode::kDimensionMismatch, "T_root does not match J");
  }
  const std::vector<double> lams = jf.distinct_eigenvalues();
  Vector d = Vector::Zero(2 * static_cast<Eigen::Index>(lams.size()) + 2);
  Eigen::Index row = 0;
  for (const auto& b : jf.blocks) {
    const int o = b.offset();
    if (b.size == 2) {
      d(row) = T_root(o + 1, o + 1) - 1.0;
      d(row + 1) = T_root(o, o + 1);
    } else {
      d(row) = T_root(o, o) - 1.0;
    }
    row += 2;
  }
  const auto nodes = aux.nodes();
  return solve_confluent(lams, nodes, d);
}

namespace {

// Control grid for the orthant search: the fixed power-of-two ladder, then
// controls that sit between consecutive sign-flip thresholds -1/l.
std::vector<double> connect_candidates(const JordanForm& jf) {
  const std::vector<double> lams = jf.distinct_eigenvalues();
  double big = 0.0;
  for (double l : lams) big = std::max(big, std::abs(l));
  std::vector<double> ladder;
  for (int k = -3; k <= 3; ++k) {
    const double u = std::ldexp(1.0, k) / big;
    ladder.push_back(u);
    ladder.push_back(-u);
  }
  // (I + uJ) flips the decisive sign of eigenvalue l iff 1 + u l < 0.
  std::vector<double> extra;
  for (int sign : {1, -1}) {
    std::vector<double> mags;
    for (double l : lams) {
      if (l * sign > 0) mags.push_back(std::abs(l));
    }
    std::sort(mags.begin(), mags.end());
    if (mags.empty()) continue;
    extra.push_back(-sign * 2.0 / mags.front());
    for (size_t i = 1; i < mags.size(); ++i) {
      extra.push_back(-sign * 2.0 / (mags[i - 1] + mags[i]));
    }
  }
  auto by_magnitude = [](double a, double b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return a > b;
  };
  std::sort(ladder.begin(), ladder.end(), by_magnitude);
  std::sort(extra.begin(), extra.end(), by_magnitude);
  for (double u : extra) {
    if (std::find(ladder.begin(), ladder.end(), u) == ladder.end()) ladder.push_back(u);
  }
  return ladder;
}

std::optional<SignPattern> safe_signature(const Vector& x, const JordanForm& jf,
                                          const Tolerances& tol) {
  try {
    return orthant_signature(x, jf, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kOnHypersurface) return std::nullopt;
    throw;
  }
}

}  // namespace

ConnectResult connect_orthant(const Vector& x, const SignPattern& target, const JordanForm& jf,
                              const Tolerances& tol, const SteeringLimits& limits) {
  const SignPattern start = orthant_signature(x, jf, tol);
  if (start.size() != target.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "target signature has the wrong length");
  }
  if (start == target) return {{}, x};

  // The decisive signs evolve independently of magnitudes, so the search
  // runs over signatures and never revisits one.
  struct Node {
    Vector x;
    std::vector<double> seq;
  };
  const std::vector<double> candidates = connect_candidates(jf);
  std::set<SignPattern> visited{start};
  std::vector<Node> frontier{{x, {}}};
  for (int depth = 1; depth <= limits.max_connect_steps; ++depth) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (double u : candidates) {
        Vector y = node.x + u * (jf.J * node.x);
        const auto sig = safe_signature(y, jf, tol);
        if (!sig || !visited.insert(*sig).second) continue;
        std::vector<double> seq = node.seq;
        seq.push_back(u);
        if (*sig == target) return {{std::move(seq)}, std::move(y)};
        next.push_back({std::move(y), std::move(seq)});
      }
    }
    frontier = std::move(next);
  }
  throw Error(ErrorCode::kConnectFailed,
              "no control prefix of length <= " + std::to_string(limits.max_connect_steps) +
                  " reaches the target orthant");
}

std::vector<Vector> simulate(const Matrix& B, const Vector& x0, std::span<const double> controls) {
  if (B.rows() != B.cols() || x0.size() != B.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "x0 must have length n");
  }
  std::vector<Vector> traj;
  traj.reserve(controls.size() + 1);
  traj.push_back(x0);
  for (double u : controls) {
    const Vector& x = traj.back();
    traj.push_back(x + u * (B * x));
  }
  return traj;
}

std::vector<LocusRow> locus_trace(const LocusProblem& problem, std::span<const double> gains,
                                  const Tolerances& tol) {
  std::vector<LocusRow> rows;
  for (double K : gains) rows.push_back({K, poly_roots(problem.closed_loop(K), tol)});
  return rows;
}

namespace {

using Verifier = std::function<double(const std::vector<double>&)>;

// Steps 2-6 on a steerable Jordan structure; xJ and eJ are J coordinates.
SteeringPlan steer_core(const JordanForm& jf, const Vector& xJ, const Vector& eJ,
                        const Tolerances& tol, const SteeringLimits& limits,
                        const SteeringPins& pins, const Verifier& verify) {
  SignPattern target;
  try {
    orthant_signature(xJ, jf, tol);
    target = orthant_signature(eJ, jf, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kOnHypersurface) throw;
    throw Error(ErrorCode::kEndpointOnHypersurface,
                std::string("endpoint lies on the removed hypersurface (") + e.what() + ")");
  }

  SteeringPlan plan;
  plan.jordan = jf;
  if (pins.prefix) {
    plan.prefix.values = *pins.prefix;
    plan.zeta = xJ;
    apply_controls(jf.J, plan.zeta, plan.prefix.values);
  } else {
    ConnectResult c = connect_orthant(xJ, target, jf, tol, limits);
    plan.prefix = std::move(c.prefix);
    plan.zeta = std::move(c.zeta);
  }
  const TransitionMatrix tm = transition_matrix(plan.zeta, eJ, jf, tol);

  const std::vector<double> lams = jf.distinct_eigenvalues();
  const std::vector<AuxPoles> aux_list =
      pins.aux ? std::vector<AuxPoles>{*pins.aux} : aux_pole_schedule(lams, limits.aux_retries);

  std::vector<int> qs;
  if (pins.q) {
    if (*pins.q < 1) throw Error(ErrorCode::kInvalidInput, "q must be positive");
    qs.push_back(*pins.q);
  } else {
    for (long q = 1; q <= limits.q_max; q *= 2) qs.push_back(static_cast<int>(q));
  }

  for (const AuxPoles& aux : aux_list) {
    for (int q : qs) {
      const Matrix R = matrix_fractional_root(tm.T, q, jf);
      const Vector mu = mu_coefficients(R, aux, jf);
      const LocusProblem lp = make_locus_problem(lams, aux, mu);
      const std::vector<double> grid =
          pins.K ? std::vector<double>{*pins.K} : default_k_grid(lp, limits);

      std::vector<GainResult> candidates;
      if (limits.refine_gain) {
        for (size_t i = 0; i < grid.size(); ++i) {
          if (auto g = try_gain(lp, grid[i], i, tol)) candidates.push_back(std::move(*g));
        }
        std::stable_sort(candidates.begin(), candidates.end(),
                         [](const auto& a, const auto& b) { return a.min_gap > b.min_gap; });
      }
      size_t next = 0;  // position in `candidates` (refined) or grid (first-feasible)
      while (true) {
        GainResult g;
        if (limits.refine_gain) {
          if (next >= candidates.size()) break;
          g = candidates[next++];
        } else {
          try {
            g = gain_search_real_roots(lp, grid, tol, next);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::kInfeasible) throw;
            break;
          }
          next = g.grid_index + 1;
        }
        std::vector<double> full = plan.prefix.values;
        for (int rep = 0; rep < q; ++rep) {
          full.insert(full.end(), g.controls.values.begin(), g.controls.values.end());
        }
        const double residual = verify(full);
        std::ostringstream os;
        os << "lam_m1=" << aux.lam_m1 << " q=" << q << " K=" << g.K << " residual=" << residual;
        trace(limits, os.str());
        if (residual <= tol.verify_tol) {
          plan.aux = aux;
          plan.q = q;
          plan.group = std::move(g.controls);
          plan.K = g.K;
          plan.mu = mu;
          plan.full_sequence.values = std::move(full);
          plan.residual = residual;
          return plan;
        }
      }
      trace(limits, "q=" + std::to_string(q) + " infeasible");
    }
  }
  throw Error(ErrorCode::kQExhausted, "no q up to " +
                                          std::to_string(qs.empty() ? 0 : qs.back()) +
                                          " produced a verified plan");
}

Verifier endpoint_verifier(const Matrix& B, const Vector& xi, const Vector& eta) {
  return [&B, &xi, &eta](const std::vector<double>& u) {
    Vector x = xi;
    for (double uk : u) x += uk * (B * x);
    const double r = (x - eta).norm() / std::max(1.0, eta.norm());
    return std::isfinite(r) ? r : INFINITY;
  };
}

void check_endpoints(const Matrix& B, const Vector& xi, const Vector& eta) {
  require_finite(B, "B");
  require_finite(xi, "xi");
  require_finite(eta, "eta");
  if (B.rows() != B.cols()) throw Error(ErrorCode::kDimensionMismatch, "B must be square");
  if (xi.size() != B.rows() || eta.size() != B.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "xi and eta must have length n");
  }
}

JordanForm resolve_jordan(const Matrix& B, const Tolerances& tol, const SteeringPins& pins) {
  if (pins.jordan) return *pins.jordan;
  try {
    return jordan_decompose(B, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kComplexSpectrum) throw;
    throw Error(ErrorCode::kNotNearlyControllable,
                "B has complex eigenvalues (unsupported spectrum)");
  }
}

}  // namespace

SteeringPlan steer(const Matrix& B, const Vector& xi, const Vector& eta, const Tolerances& tol,
                   const SteeringLimits& limits, const SteeringPins& pins) {
  tol.validate();
  check_endpoints(B, xi, eta);
  const JordanForm jf = resolve_jordan(B, tol, pins);
  const NearControllabilityReport report = check_near_controllability(jf, tol);
  if (!report.nearly_controllable()) {
    std::string why;
    for (Reason r : report.reasons) {
      if (!why.empty()) why += ", ";
      why += to_string(r);
    }
    throw Error(ErrorCode::kNotNearlyControllable, "B is not nearly controllable (" + why + ")");
  }
  SteeringPlan plan = steer_core(jf, jf.P * xi, jf.P * eta, tol, limits, pins,
                                 endpoint_verifier(B, xi, eta));
  plan.xi = xi;
  plan.eta = eta;
  return plan;
}

SteeringPlan steer_in_subspace(const Matrix& B, const SubspaceDescriptor& desc,
                               const Vector& xi, const Vector& eta, const Tolerances& tol,
                               const SteeringLimits& limits, const SteeringPins& pins) {
  tol.validate();
  check_endpoints(B, xi, eta);
  const JordanForm jf = resolve_jordan(B, tol, pins);
  const Admissibility adm = is_admissible_index_set(jf, desc.indices, tol);
  if (!adm.admissible) {
    throw Error(ErrorCode::kInvalidInput, "descriptor is not admissible: " + adm.reason);
  }
  const Vector xJ = jf.P * xi;
  const Vector eJ = jf.P * eta;
  std::vector<int> rows;
  for (int i : desc.indices) rows.push_back(i - 1);
  for (const Vector* v : {&xJ, &eJ}) {
    const double threshold = tol.rank_tol * std::max(1.0, v->cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < v->size(); ++i) {
      const bool inside = std::find(rows.begin(), rows.end(), i) != rows.end();
      if (!inside && std::abs((*v)(i)) > threshold) {
        throw Error(ErrorCode::kSupportMismatch,
                    "endpoint has J-coordinate " + std::to_string(i + 1) +
                        " outside the subspace");
      }
    }
  }
  const Matrix Jsub = principal_submatrix(jf.J, rows);
  const Eigen::Index e = Jsub.rows();
  const JordanForm sub = jordan_from_pinned(Jsub, Jsub, Matrix::Identity(e, e), tol);
  Vector xs(e), es(e);
  for (Eigen::Index k = 0; k < e; ++k) {
    xs(k) = xJ(rows[k]);
    es(k) = eJ(rows[k]);
  }
  SteeringPins sub_pins = pins;
  sub_pins.jordan.reset();
  SteeringPlan plan =
      steer_core(sub, xs, es, tol, limits, sub_pins, endpoint_verifier(B, xi, eta));
  Vector zeta = Vector::Zero(jf.n());
  for (Eigen::Index k = 0; k < e; ++k) zeta(rows[k]) = plan.zeta(k);
  plan.zeta = zeta;
  plan.jordan = jf;
  plan.xi = xi;
  plan.eta = eta;
  plan.subspace_indices = desc.indices;
  return plan;
}

}  // namespace nearctl
