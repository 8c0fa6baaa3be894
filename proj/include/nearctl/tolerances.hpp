#pragma once

namespace nearctl {

// Numerical thresholds shared by every module. All values are relative.
struct Tolerances {
  double eig_cluster = 1e-6;    // eigenvalue gap below which values merge
  double rank_tol = 1e-8;       // singular-value threshold, scaled by ||B||
  double real_root_tol = 1e-9;  // |Im z| / max(1, |z|) treated as real
  double distinct_tol = 1e-6;   // min root magnitude / pairwise gap
  double verify_tol = 1e-6;     // endpoint error / max(1, ||eta||)

  // Throws Error(kInvalidInput) unless all positive and
  // real_root_tol < distinct_tol < 1.
  void validate() const;
};

}  // namespace nearctl
