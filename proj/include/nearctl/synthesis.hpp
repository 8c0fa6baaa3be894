#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nearctl/linalg.hpp"
#include "nearctl/poly.hpp"
#include "nearctl/structure.hpp"
#include "nearctl/tolerances.hpp"

namespace nearctl {

struct ControlSequence {
  std::vector<double> values;

  size_t length() const { return values.size(); }
};

// The two extra poles of the identity-loop polynomial: 0 < |lam_m1| < min|l|
// and max|l| < -lam_m2.
struct AuxPoles {
  double lam_m1 = 0.0;
  double lam_m2 = 0.0;

  std::array<double, 2> nodes() const { return {lam_m1, lam_m2}; }
};

// Open-loop G(s) = numerator / denominator; closed-loop characteristic
// polynomial denominator + K * numerator.
struct LocusProblem {
  Polynomial denominator;  // s * prod (s + l_i)^2 * (s + lam_m1)(s + lam_m2)
  Polynomial numerator;    // 1, or the mu-polynomial with constant term 1
  std::vector<double> poles;  // roots of the denominator
  double K = 0.0;

  Polynomial closed_loop(double gain) const { return denominator + numerator * gain; }
  // Largest pole magnitude; the reference scale for root separation tests.
  double pole_scale() const;
};

struct TransitionMatrix {
  Matrix T;
};

struct SteeringLimits {
  int q_max = 1 << 16;
  int max_connect_steps = 4;
  double k_lo = 1e-8;  // grid spans [k_lo * S, k_hi * S]
  double k_hi = 1e6;
  double k_ratio = 2.0;
  // Among feasible grid gains prefer the one with the widest root spacing.
  bool refine_gain = false;
  // When the default auxiliary poles admit no verified gain, retry with
  // lam_m1 halved up to this many times (tightly clustered spectra).
  int aux_retries = 8;
  std::function<void(std::string_view)> trace;
};

// Overrides that pin individual choices of the pipeline.
struct SteeringPins {
  std::optional<JordanForm> jordan;
  std::optional<std::vector<double>> prefix;
  std::optional<AuxPoles> aux;
  std::optional<int> q;
  std::optional<double> K;
};

struct GainResult {
  double K = 0.0;
  size_t grid_index = 0;
  ControlSequence controls;  // reciprocals of the roots, ascending
  RootSet roots;
  double min_gap = 0.0;  // smallest pairwise root distance
};

struct IdentityLoop {
  ControlSequence controls;
  AuxPoles aux;
  double K = 0.0;
  double residual = 0.0;  // ||prod (I + u_k J) - I||_F on the full J, in long double
  bool noncyclic_fallback = false;
};

struct ConnectResult {
  ControlSequence prefix;
  Vector zeta;
};

struct SteeringPlan {
  ControlSequence prefix;
  int q = 0;
  ControlSequence group;
  AuxPoles aux;
  double K = 0.0;
  ControlSequence full_sequence;
  Vector xi;
  Vector eta;
  Vector zeta;  // J coordinates after the prefix
  Vector mu;
  JordanForm jordan;
  double residual = 0.0;  // ||x_final - eta|| / max(1, ||eta||)
  std::vector<int> subspace_indices;  // empty for whole-space steering
};

AuxPoles choose_aux_poles(std::span<const double> lams);

// choose_aux_poles first, then lam_m1 halved `retries` times.
std::vector<AuxPoles> aux_pole_schedule(std::span<const double> lams, int retries);

// Numerator is 1 when mu is empty.
LocusProblem make_locus_problem(std::span<const double> lams, const AuxPoles& aux,
                                const Vector& mu = Vector());

std::vector<double> default_k_grid(const LocusProblem& problem,
                                   const SteeringLimits& limits = {});

// First grid gain at or after `start` whose closed-loop roots are all real,
// bounded away from zero and pairwise distinct. Throws kInfeasible otherwise.
GainResult gain_search_real_roots(const LocusProblem& problem, std::span<const double> grid,
                                  const Tolerances& tol = {}, size_t start = 0);

// 2m+3 controls with prod (I + u_k J) = I. Noncyclic J is handled through its
// largest cyclic main submatrix.
IdentityLoop identity_loop(const JordanForm& jf, const Tolerances& tol = {},
                           const SteeringLimits& limits = {});

TransitionMatrix transition_matrix(const Vector& zeta, const Vector& eta, const JordanForm& jf,
                                   const Tolerances& tol = {});

// mu = C^{-1} d for the block-wise right-hand side built from T_root.
Vector mu_coefficients(const Matrix& T_root, const AuxPoles& aux, const JordanForm& jf);

// Bounded breadth-first search for a control prefix that moves x (J
// coordinates) into the orthant with signature `target`.
ConnectResult connect_orthant(const Vector& x, const SignPattern& target, const JordanForm& jf,
                              const Tolerances& tol = {}, const SteeringLimits& limits = {});

SteeringPlan steer(const Matrix& B, const Vector& xi, const Vector& eta,
                   const Tolerances& tol = {}, const SteeringLimits& limits = {},
                   const SteeringPins& pins = {});

// Steers inside the coordinate subspace `desc` (J coordinates); xi and eta
// are given in original coordinates and verified on the full system.
SteeringPlan steer_in_subspace(const Matrix& B, const SubspaceDescriptor& desc,
                               const Vector& xi, const Vector& eta,
                               const Tolerances& tol = {}, const SteeringLimits& limits = {},
                               const SteeringPins& pins = {});

// trajectory[0] = x0, trajectory[k+1] = (I + u_k B) trajectory[k].
std::vector<Vector> simulate(const Matrix& B, const Vector& x0,
                             std::span<const double> controls);

struct LocusRow {
  double K = 0.0;
  RootSet roots;
};

std::vector<LocusRow> locus_trace(const LocusProblem& problem, std::span<const double> gains,
                                  const Tolerances& tol = {});

}  // namespace nearctl
