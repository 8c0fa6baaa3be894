#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nearctl/linalg.hpp"
#include "nearctl/tolerances.hpp"

namespace nearctl {

enum class Verdict {
  kNearlyControllable,
  kNotNearlyControllable,
  kUnsupportedComplexSpectrum,
};

enum class Reason {
  kSingular,
  kNoncyclic,
  kJordanBlockDimGt2,
};

std::string_view to_string(Verdict v);
std::string_view to_string(Reason r);

// The removed set: in J coordinates the product of the decisive coordinates
// vanishes; in original coordinates the Krylov determinant vanishes.
struct Hypersurface {
  std::vector<int> coordinates;  // 1-based J-coordinate positions
  std::string j_condition;
  std::string original_condition;
};

struct NearControllabilityReport {
  Verdict verdict = Verdict::kNotNearlyControllable;
  std::vector<Reason> reasons;
  int index_h = 0;
  std::optional<Hypersurface> hypersurface;  // set iff nearly controllable
  std::optional<JordanForm> jordan;          // absent for complex spectra

  bool nearly_controllable() const { return verdict == Verdict::kNearlyControllable; }
  bool has_reason(Reason r) const;
};

struct SubspaceDescriptor {
  std::vector<int> indices;  // strictly increasing, 1-based J coordinates
  int dimension = 0;
  std::vector<double> eigenvalues_used;
  std::string removed_set;
  Matrix submatrix;  // main submatrix of J on `indices`
};

struct Admissibility {
  bool admissible = false;
  std::string reason;  // empty when admissible
};

// Zero test used for the singularity reason and for excluding zero
// eigenvalues from subspaces and the index.
bool is_zero_eigenvalue(double lambda, const JordanForm& jf, const Tolerances& tol = {});

NearControllabilityReport check_near_controllability(const Matrix& B,
                                                     const Tolerances& tol = {});
NearControllabilityReport check_near_controllability(const JordanForm& jf,
                                                     const Tolerances& tol = {});

// Sum over distinct nonzero eigenvalues of min(2, largest block).
int near_controllability_index(const JordanForm& jf, const Tolerances& tol = {});

std::vector<SubspaceDescriptor> enumerate_subspaces(const JordanForm& jf,
                                                    const Tolerances& tol = {});

Admissibility is_admissible_index_set(const JordanForm& jf, const std::vector<int>& indices,
                                      const Tolerances& tol = {});

}  // namespace nearctl
