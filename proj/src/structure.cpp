#include "nearctl/structure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nearctl/error.hpp"

namespace nearctl {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kNearlyControllable: return "nearly_controllable";
    case Verdict::kNotNearlyControllable: return "not_nearly_controllable";
    case Verdict::kUnsupportedComplexSpectrum: return "unsupported_complex_spectrum";
  }
  return "unknown";
}

std::string_view to_string(Reason r) {
  switch (r) {
    case Reason::kSingular: return "singular";
    case Reason::kNoncyclic: return "noncyclic";
    case Reason::kJordanBlockDimGt2: return "jordan_block_dim_gt_2";
  }
  return "unknown";
}

bool NearControllabilityReport::has_reason(Reason r) const {
  return std::find(reasons.begin(), reasons.end(), r) != reasons.end();
}

bool is_zero_eigenvalue(double lambda, const JordanForm& jf, const Tolerances& tol) {
  double scale = 1.0;
  for (const auto& b : jf.blocks) scale = std::max(scale, std::abs(b.eigenvalue));
  return std::abs(lambda) <= tol.rank_tol * scale;
}

namespace {

std::string product_condition(const std::vector<int>& coords, const char* symbol) {
  std::ostringstream os;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) os << " * ";
    os << symbol << '_' << coords[i];
  }
  os << " = 0";
  return os.str();
}

std::string krylov_condition(int n) {
  std::ostringstream os;
  os << "det[x";
  if (n >= 2) os << ", Bx";
  if (n == 3) os << ", B^2x";
  if (n >= 4) os << ", ..., B^" << (n - 1) << "x";
  os << "] = 0";
  return os.str();
}

}  // namespace

NearControllabilityReport check_near_controllability(const JordanForm& jf,
                                                     const Tolerances& tol) {
  NearControllabilityReport report;
  for (const auto& b : jf.blocks) {
    if (is_zero_eigenvalue(b.eigenvalue, jf, tol)) {
      report.reasons.push_back(Reason::kSingular);
      break;
    }
  }
  if (!jf.is_cyclic()) report.reasons.push_back(Reason::kNoncyclic);
  if (jf.largest_block() > 2) report.reasons.push_back(Reason::kJordanBlockDimGt2);
  report.verdict = report.reasons.empty() ? Verdict::kNearlyControllable
                                          : Verdict::kNotNearlyControllable;
  report.index_h = near_controllability_index(jf, tol);
  if (report.nearly_controllable()) {
    Hypersurface h;
    for (const auto& b : jf.blocks) h.coordinates.push_back(b.decisive_row() + 1);
    h.j_condition = product_condition(h.coordinates, "xi");
    h.original_condition = krylov_condition(jf.n());
    report.hypersurface = std::move(h);
  }
  report.jordan = jf;
  return report;
}

NearControllabilityReport check_near_controllability(const Matrix& B, const Tolerances& tol) {
  require_finite(B, "B");
  try {
    return check_near_controllability(jordan_decompose(B, tol), tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kComplexSpectrum) throw;
  }
  NearControllabilityReport report;
  report.verdict = Verdict::kUnsupportedComplexSpectrum;
  return report;
}

int near_controllability_index(const JordanForm& jf, const Tolerances& tol) {
  int h = 0;
  for (const auto& b : jf.selected_blocks()) {
    if (!is_zero_eigenvalue(b.eigenvalue, jf, tol)) h += std::min(2, b.size);
  }
  return h;
}

std::vector<SubspaceDescriptor> enumerate_subspaces(const JordanForm& jf,
                                                    const Tolerances& tol) {
  // Per nonzero eigenvalue: the admissible contributions (a block's first
  // row, or its first two rows).
  std::vector<std::vector<std::vector<int>>> options;
  std::vector<double> option_eigenvalue;
  for (double lambda : jf.distinct_eigenvalues()) {
    if (is_zero_eigenvalue(lambda, jf, tol)) continue;
    std::vector<std::vector<int>> choices;
    for (const auto& b : jf.blocks) {
      if (b.eigenvalue != lambda) continue;
      choices.push_back({b.start_index});
      if (b.size >= 2) choices.push_back({b.start_index, b.start_index + 1});
    }
    options.push_back(std::move(choices));
    option_eigenvalue.push_back(lambda);
  }

  std::vector<SubspaceDescriptor> out;
  // Mixed-radix counter; digit 0 means "eigenvalue not used".
  std::vector<size_t> digit(options.size(), 0);
  while (true) {
    size_t pos = 0;
    while (pos < digit.size() && ++digit[pos] > options[pos].size()) digit[pos++] = 0;
    if (pos == digit.size()) break;

    SubspaceDescriptor d;
    std::vector<int> coords;
    for (size_t e = 0; e < options.size(); ++e) {
      if (digit[e] == 0) continue;
      const auto& pick = options[e][digit[e] - 1];
      d.indices.insert(d.indices.end(), pick.begin(), pick.end());
      d.eigenvalues_used.push_back(option_eigenvalue[e]);
      coords.push_back(pick.back());
    }
    std::sort(d.indices.begin(), d.indices.end());
    std::sort(coords.begin(), coords.end());
    d.dimension = static_cast<int>(d.indices.size());
    d.removed_set = product_condition(coords, "xi");
    std::vector<int> zero_based;
    for (int i : d.indices) zero_based.push_back(i - 1);
    d.submatrix = principal_submatrix(jf.J, zero_based);
    out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.indices < b.indices;
  });
  return out;
}

Admissibility is_admissible_index_set(const JordanForm& jf, const std::vector<int>& indices,
                                      const Tolerances& tol) {
  auto reject = [](std::string why) { return Admissibility{false, std::move(why)}; };
  if (indices.empty()) return reject("empty index set");
  std::vector<double> used;
  for (size_t k = 0; k < indices.size(); ++k) {
    const int i = indices[k];
    if (i < 1 || i > jf.n()) return reject("index " + std::to_string(i) + " out of range");
    if (k > 0 && indices[k - 1] >= i) return reject("indices must be strictly increasing");
    const JordanBlock* block = nullptr;
    for (const auto& b : jf.blocks) {
      if (i >= b.start_index && i < b.start_index + b.size) block = &b;
    }
    const int row = i - block->start_index;  // 0 = first row of its block
    if (is_zero_eigenvalue(block->eigenvalue, jf, tol)) {
      return reject("index " + std::to_string(i) + " belongs to a zero-eigenvalue block");
    }
    if (row >= 2) {
      return reject("index " + std::to_string(i) + " is row " + std::to_string(row + 1) +
                    " of its Jordan block");
    }
    if (row == 1) {
      if (k == 0 || indices[k - 1] != i - 1) {
        return reject("index " + std::to_string(i) +
                      " is a second row without its block's first row");
      }
      continue;  // eigenvalue already counted with the first row
    }
    if (std::find(used.begin(), used.end(), block->eigenvalue) != used.end()) {
      return reject("two blocks of eigenvalue " + std::to_string(block->eigenvalue));
    }
    used.push_back(block->eigenvalue);
  }
  return {true, {}};
}

}  // namespace nearctl
