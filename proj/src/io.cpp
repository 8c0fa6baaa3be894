#include "nearctl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nearctl/error.hpp"

namespace nearctl {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidInput, what);
}

double number_from_json(const Json& j, const char* what) {
  if (!j.is_number()) invalid(std::string(what) + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, std::string(what) + " is not finite");
  return v;
}

std::vector<double> numbers_from_json(const Json& j, const char* what) {
  if (!j.is_array()) invalid(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(number_from_json(e, what));
  return out;
}

}  // namespace

Matrix matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) invalid(std::string(what) + " must be a nonempty array of rows");
  const size_t n = j.size();
  Matrix A(n, n);
  for (size_t i = 0; i < n; ++i) {
    const std::vector<double> row = numbers_from_json(j[i], what);
    if (row.size() != n) {
      throw Error(ErrorCode::kDimensionMismatch, std::string(what) + " must be square");
    }
    for (size_t k = 0; k < n; ++k) A(i, k) = row[k];
  }
  return A;
}

Vector vector_from_json(const Json& j, const char* what) {
  const std::vector<double> v = numbers_from_json(j, what);
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

SteeringPins ProblemFile::pins() const {
  SteeringPins p;
  p.jordan = pinned;
  p.prefix = options.u0;
  p.aux = options.aux;
  p.q = options.q;
  p.K = options.K;
  return p;
}

SteeringLimits ProblemFile::limits() const {
  SteeringLimits l;
  l.q_max = options.q_max;
  l.max_connect_steps = options.max_connect_steps;
  l.refine_gain = options.refine_gain;
  return l;
}

ProblemFile parse_problem(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) invalid("problem file must be a JSON object");
  if (!root.contains("B")) invalid("problem file has no \"B\"");

  ProblemFile pf;
  pf.B = matrix_from_json(root["B"], "B");
  const Eigen::Index n = pf.B.rows();
  for (const char* key : {"xi", "eta"}) {
    if (!root.contains(key) || root[key].is_null()) continue;
    Vector v = vector_from_json(root[key], key);
    if (v.size() != n) {
      throw Error(ErrorCode::kDimensionMismatch, std::string(key) + " must have length n");
    }
    (std::string(key) == "xi" ? pf.xi : pf.eta) = std::move(v);
  }

  if (root.contains("options")) {
    const Json& o = root["options"];
    if (!o.is_object()) invalid("options must be an object");
    ProblemOptions& opt = pf.options;
    if (o.contains("tolerances")) {
      const Json& t = o["tolerances"];
      if (!t.is_object()) invalid("tolerances must be an object");
      auto read = [&](const char* key, double& field) {
        if (t.contains(key)) field = number_from_json(t[key], key);
      };
      read("eig_cluster", opt.tol.eig_cluster);
      read("rank_tol", opt.tol.rank_tol);
      read("real_root_tol", opt.tol.real_root_tol);
      read("distinct_tol", opt.tol.distinct_tol);
      read("verify_tol", opt.tol.verify_tol);
    }
    opt.tol.validate();
    if (o.contains("aux")) {
      const std::vector<double> a = numbers_from_json(o["aux"], "aux");
      if (a.size() != 2) invalid("aux must hold two values");
      opt.aux = AuxPoles{a[0], a[1]};
    }
    auto positive_int = [&](const char* key) -> std::optional<int> {
      if (!o.contains(key)) return std::nullopt;
      if (!o[key].is_number_integer() || o[key].get<long long>() < 1 ||
          o[key].get<long long>() > (1LL << 30)) {
        invalid(std::string(key) + " must be a positive integer");
      }
      return static_cast<int>(o[key].get<long long>());
    };
    opt.q = positive_int("q");
    if (auto v = positive_int("q_max")) opt.q_max = *v;
    if (auto v = positive_int("max_connect_steps")) opt.max_connect_steps = *v;
    if (o.contains("K")) {
      opt.K = number_from_json(o["K"], "K");
      if (!(*opt.K > 0.0)) invalid("K must be positive");
    }
    if (o.contains("u0")) opt.u0 = numbers_from_json(o["u0"], "u0");
    if (o.contains("seed")) {
      if (!o["seed"].is_number_integer() || o["seed"].get<long long>() < 0) {
        invalid("seed must be a nonnegative integer");
      }
      opt.seed = o["seed"].get<std::uint64_t>();
    }
    if (o.contains("refine_gain")) {
      if (!o["refine_gain"].is_boolean()) invalid("refine_gain must be a boolean");
      opt.refine_gain = o["refine_gain"].get<bool>();
    }
  }

  if (root.contains("jordan")) {
    const Json& jj = root["jordan"];
    if (!jj.is_object() || !jj.contains("J") || !jj.contains("P")) {
      invalid("jordan must be an object with J and P");
    }
    pf.pinned = jordan_from_pinned(pf.B, matrix_from_json(jj["J"], "J"),
                                   matrix_from_json(jj["P"], "P"), pf.options.tol);
  }
  return pf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) invalid("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json to_json(const Matrix& A) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < A.cols(); ++k) row.push_back(A(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Vector& x) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) out.push_back(x(i));
  return out;
}

Json to_json(const JordanForm& jf) {
  Json blocks = Json::array();
  for (const auto& b : jf.blocks) {
    blocks.push_back({{"eigenvalue", b.eigenvalue}, {"size", b.size},
                      {"start_index", b.start_index}});
  }
  return {{"J", to_json(jf.J)}, {"P", to_json(jf.P)},   {"P_inv", to_json(jf.P_inv)},
          {"blocks", blocks},   {"m", jf.m},              {"r", jf.r},
          {"residual", jf.residual}};
}

Json to_json(const NearControllabilityReport& report) {
  Json reasons = Json::array();
  for (Reason r : report.reasons) reasons.push_back(std::string(to_string(r)));
  Json out = {{"verdict", std::string(to_string(report.verdict))},
              {"reasons", reasons},
              {"index_h", report.index_h}};
  if (report.hypersurface) {
    out["hypersurface"] = {{"coordinates", report.hypersurface->coordinates},
                           {"j_condition", report.hypersurface->j_condition},
                           {"original_condition", report.hypersurface->original_condition}};
  } else {
    out["hypersurface"] = nullptr;
  }
  out["jordan"] = report.jordan ? to_json(*report.jordan) : Json(nullptr);
  return out;
}

Json to_json(const SubspaceDescriptor& desc) {
  return {{"indices", desc.indices},
          {"dimension", desc.dimension},
          {"eigenvalues_used", desc.eigenvalues_used},
          {"removed_set", desc.removed_set},
          {"submatrix", to_json(desc.submatrix)}};
}

Json to_json(const SteeringPlan& plan) {
  Json out = {{"prefix", plan.prefix.values},
              {"q", plan.q},
              {"group", plan.group.values},
              {"K", plan.K},
              {"aux", {plan.aux.lam_m1, plan.aux.lam_m2}},
              {"mu", to_json(plan.mu)},
              {"full_sequence", plan.full_sequence.values},
              {"length", plan.full_sequence.length()},
              {"endpoints", {{"xi", to_json(plan.xi)}, {"eta", to_json(plan.eta)}}},
              {"zeta", to_json(plan.zeta)},
              {"residual", plan.residual},
              {"jordan", to_json(plan.jordan)}};
  if (!plan.subspace_indices.empty()) out["subspace"] = plan.subspace_indices;
  return out;
}

Json to_json(const IdentityLoop& loop) {
  return {{"controls", loop.controls.values},
          {"length", loop.controls.length()},
          {"aux", {loop.aux.lam_m1, loop.aux.lam_m2}},
          {"K", loop.K},
          {"residual", loop.residual},
          {"noncyclic_fallback", loop.noncyclic_fallback}};
}

std::vector<double> parse_controls(std::string_view text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (!j.is_discarded()) {
    if (j.is_object() && j.contains("result")) j = j["result"];
    if (j.is_object()) {
      if (j.contains("full_sequence")) return numbers_from_json(j["full_sequence"], "controls");
      if (j.contains("controls")) return numbers_from_json(j["controls"], "controls");
      invalid("controls object has neither \"controls\" nor \"full_sequence\"");
    }
    if (j.is_array()) return numbers_from_json(j, "controls");
    if (j.is_number()) return {number_from_json(j, "controls")};
    invalid("unrecognized controls file");
  }
  // Plain list of numbers separated by whitespace and/or commas.
  std::string s(text);
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  std::istringstream is(s);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      invalid("controls file has a non-numeric token '" + tok + "'");
    }
    if (used != tok.size()) invalid("controls file has a non-numeric token '" + tok + "'");
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "control is not finite");
    out.push_back(v);
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trajectory_csv(const std::vector<Vector>& trajectory) {
  std::ostringstream os;
  const Eigen::Index n = trajectory.empty() ? 0 : trajectory.front().size();
  os << 'k';
  for (Eigen::Index i = 1; i <= n; ++i) os << ",x_" << i;
  os << '\n';
  for (size_t k = 0; k < trajectory.size(); ++k) {
    os << k;
    for (Eigen::Index i = 0; i < n; ++i) os << ',' << format_double(trajectory[k](i));
    os << '\n';
  }
  return os.str();
}

std::string locus_csv(const std::vector<LocusRow>& rows) {
  std::ostringstream os;
  const size_t d = rows.empty() ? 0 : rows.front().roots.roots.size();
  os << 'K';
  for (size_t i = 1; i <= d; ++i) os << ",re_" << i << ",im_" << i;
  os << '\n';
  for (const auto& row : rows) {
    os << format_double(row.K);
    for (const auto& z : row.roots.roots) {
      os << ',' << format_double(z.real()) << ',' << format_double(z.imag());
    }
    os << '\n';
  }
  return os.str();
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace nearctl
