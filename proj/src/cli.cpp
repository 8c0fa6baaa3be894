#include "nearctl/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nearctl/io.hpp"
#include "nearctl/structure.hpp"
#include "nearctl/synthesis.hpp"

namespace nearctl {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
    case ErrorCode::kNonFinite:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kSupportMismatch:
    case ErrorCode::kDegenerateNodes:
      return kExitInvalid;
    default:
      return kExitInfeasible;
  }
}

namespace {

// NEARCTL_LOG: 0/unset = quiet, 1 = summary lines, 2 = per-attempt trace.
int log_level() {
  const char* v = std::getenv("NEARCTL_LOG");
  if (v == nullptr || *v == '\0') return 0;
  const std::string s(v);
  if (s == "debug" || s == "trace") return 2;
  if (s == "info") return 1;
  char* end = nullptr;
  const long level = std::strtol(v, &end, 10);
  return (end != v && *end == '\0') ? static_cast<int>(level) : 1;
}

struct Options {
  std::string input;
  std::string out_path;
  std::string csv_path;
  std::string controls_path;
  std::string subspace;
  double k_min = 1e-3;
  double k_max = 1e3;
  int samples = 61;
  std::optional<std::uint64_t> seed;
};

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err), level_(log_level()) {}

  int run(const std::string& command, const Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    command_ = command;
    opt_ = opt;
    Json result;
    try {
      text_ = read_file(opt.input);
      problem_ = parse_problem(text_);
      if (opt.seed) problem_.options.seed = opt.seed;
      log(1, "loaded " + opt.input + " (n=" + std::to_string(problem_.B.rows()) + ")");
      if (command == "analyze") {
        result = analyze();
      } else if (command == "subspaces") {
        result = subspaces();
      } else if (command == "steer") {
        result = steer_command();
      } else if (command == "identity-loop") {
        result = identity_loop_command();
      } else if (command == "locus") {
        return locus_command();
      } else if (command == "simulate") {
        return simulate_command();
      }
    } catch (const Error& e) {
      return fail(exit_code_for(e.code()), std::string(to_string(e.code())), e.what());
    } catch (const Json::exception& e) {
      return fail(kExitInvalid, "InvalidInput", e.what());
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    Json record = base_record();
    record["status"] = "ok";
    record["result"] = std::move(result);
    record["residuals"] = residuals_;
    record["timing"] = {{"elapsed_ms", ms}};
    emit_json(record);
    return kExitOk;
  }

 private:
  Json base_record() const {
    std::ostringstream digest;
    digest << std::hex << std::setw(16) << std::setfill('0') << fnv1a(text_);
    Json r = {{"command", command_}, {"inputs_digest", digest.str()}};
    r["seed"] = problem_.options.seed ? Json(*problem_.options.seed) : Json(nullptr);
    return r;
  }

  int fail(int code, const std::string& name, const std::string& message) {
    err_ << "nearctl " << command_ << ": " << message << '\n';
    Json record = base_record();
    record["status"] = "error";
    record["error"] = {{"code", name}, {"message", message}, {"exit_code", code}};
    if (command_ != "locus" && command_ != "simulate") emit_json(record);
    return code;
  }

  void log(int level, const std::string& msg) const {
    if (level_ >= level) err_ << "[nearctl] " << msg << '\n';
  }

  void emit_json(const Json& record) {
    const std::string text = record.dump(2) + "\n";
    write_to(opt_.out_path, text);
  }

  void write_to(const std::string& path, const std::string& text) {
    if (path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::kInvalidInput, "cannot write " + path);
    f << text;
  }

  JordanForm jordan() const {
    return problem_.pinned ? *problem_.pinned : jordan_decompose(problem_.B, problem_.options.tol);
  }

  Json analyze() {
    const Tolerances& tol = problem_.options.tol;
    NearControllabilityReport report =
        problem_.pinned ? check_near_controllability(*problem_.pinned, tol)
                        : check_near_controllability(problem_.B, tol);
    Json out = to_json(report);
    Json subs = Json::array();
    if (report.jordan) {
      for (const auto& d : enumerate_subspaces(*report.jordan, tol)) subs.push_back(to_json(d));
      residuals_["jordan"] = report.jordan->residual;
    }
    out["subspaces"] = subs;
    out["subspace_count"] = subs.size();
    log(1, "verdict " + std::string(to_string(report.verdict)) + ", h=" +
               std::to_string(report.index_h));
    return out;
  }

  Json subspaces() {
    const JordanForm jf = jordan();
    Json subs = Json::array();
    for (const auto& d : enumerate_subspaces(jf, problem_.options.tol)) subs.push_back(to_json(d));
    return {{"index_h", near_controllability_index(jf, problem_.options.tol)},
            {"count", subs.size()},
            {"subspaces", subs}};
  }

  SteeringLimits limits() const {
    SteeringLimits l = problem_.limits();
    if (level_ >= 2) l.trace = [this](std::string_view m) { log(2, std::string(m)); };
    return l;
  }

  std::vector<int> parse_subspace() const {
    std::vector<int> idx;
    std::string s = opt_.subspace;
    for (char& c : s) {
      if (c == ',') c = ' ';
    }
    std::istringstream is(s);
    int i = 0;
    while (is >> i) idx.push_back(i);
    if (!is.eof() || idx.empty()) {
      throw Error(ErrorCode::kInvalidInput, "--subspace expects indices like 1,2,4");
    }
    return idx;
  }

  Json steer_command() {
    if (!problem_.xi || !problem_.eta) {
      throw Error(ErrorCode::kInvalidInput, "steer needs xi and eta");
    }
    const Tolerances& tol = problem_.options.tol;
    SteeringPlan plan;
    if (opt_.subspace.empty()) {
      plan = steer(problem_.B, *problem_.xi, *problem_.eta, tol, limits(), problem_.pins());
    } else {
      SubspaceDescriptor desc;
      desc.indices = parse_subspace();
      desc.dimension = static_cast<int>(desc.indices.size());
      plan = steer_in_subspace(problem_.B, desc, *problem_.xi, *problem_.eta, tol, limits(),
                               problem_.pins());
    }
    residuals_["endpoint"] = plan.residual;
    log(1, "plan verified: q=" + std::to_string(plan.q) + ", " +
               std::to_string(plan.full_sequence.length()) + " controls, residual " +
               format_double(plan.residual));
    if (!opt_.csv_path.empty()) {
      write_to(opt_.csv_path,
               trajectory_csv(simulate(problem_.B, *problem_.xi, plan.full_sequence.values)));
    }
    return to_json(plan);
  }

  Json identity_loop_command() {
    const IdentityLoop loop = identity_loop(jordan(), problem_.options.tol, limits());
    residuals_["product"] = loop.residual;
    return to_json(loop);
  }

  // Open-loop G(s) of the steering problem when endpoints are given (pins
  // apply; q defaults to 1), otherwise the identity-loop G(s) with numerator 1.
  LocusProblem locus_problem() const {
    const JordanForm jf = jordan();
    if (!jf.has_steerable_shape()) {
      throw Error(ErrorCode::kNotNearlyControllable,
                  "locus needs a cyclic J with blocks of size <= 2");
    }
    const std::vector<double> lams = jf.distinct_eigenvalues();
    const AuxPoles aux = problem_.options.aux ? *problem_.options.aux : choose_aux_poles(lams);
    if (!problem_.xi || !problem_.eta) return make_locus_problem(lams, aux);

    const Tolerances& tol = problem_.options.tol;
    const Vector xJ = jf.P * *problem_.xi;
    const Vector eJ = jf.P * *problem_.eta;
    Vector zeta = xJ;
    if (problem_.options.u0) {
      for (double u : *problem_.options.u0) zeta += u * (jf.J * zeta);
    } else {
      zeta = connect_orthant(xJ, orthant_signature(eJ, jf, tol), jf, tol, limits()).zeta;
    }
    const TransitionMatrix tm = transition_matrix(zeta, eJ, jf, tol);
    const int q = problem_.options.q.value_or(1);
    const Vector mu = mu_coefficients(matrix_fractional_root(tm.T, q, jf), aux, jf);
    return make_locus_problem(lams, aux, mu);
  }

  int locus_command() {
    if (!(opt_.k_min > 0.0) || !(opt_.k_max >= opt_.k_min) || opt_.samples < 1) {
      throw Error(ErrorCode::kInvalidInput, "need 0 < K-min <= K-max and samples >= 1");
    }
    const LocusProblem lp = locus_problem();
    std::vector<double> gains;
    for (int i = 0; i < opt_.samples; ++i) {
      const double t = opt_.samples == 1 ? 0.0 : static_cast<double>(i) / (opt_.samples - 1);
      gains.push_back(opt_.k_min * std::pow(opt_.k_max / opt_.k_min, t));
    }
    const std::string csv = locus_csv(locus_trace(lp, gains, problem_.options.tol));
    write_to(!opt_.csv_path.empty() ? opt_.csv_path : opt_.out_path, csv);
    return kExitOk;
  }

  int simulate_command() {
    if (!problem_.xi) throw Error(ErrorCode::kInvalidInput, "simulate needs xi as x0");
    std::vector<double> controls;
    if (!opt_.controls_path.empty()) controls = parse_controls(read_file(opt_.controls_path));
    const auto traj = simulate(problem_.B, *problem_.xi, controls);
    if (level_ >= 1 && problem_.eta) {
      const double r = (traj.back() - *problem_.eta).norm() / std::max(1.0, problem_.eta->norm());
      log(1, "endpoint residual vs eta " + format_double(r));
    }
    write_to(!opt_.csv_path.empty() ? opt_.csv_path : opt_.out_path, trajectory_csv(traj));
    return kExitOk;
  }

  std::ostream& out_;
  std::ostream& err_;
  int level_;
  std::string command_;
  Options opt_;
  std::string text_;
  ProblemFile problem_;
  Json residuals_ = Json::object();
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Near-controllability analysis and root-locus steering for x(k+1)=(I+u(k)B)x(k)",
               "nearctl"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", opt.input, "problem file (JSON)")->required();
    sub->add_option("--out", opt.out_path, "write the JSON record here instead of stdout");
    sub->add_option("--seed", opt.seed, "seed recorded in the output record");
  };
  auto* analyze = app.add_subcommand("analyze", "verdict, index and subspaces");
  add_common(analyze);
  auto* steer = app.add_subcommand("steer", "synthesize and verify a steering plan");
  add_common(steer);
  steer->add_option("--csv", opt.csv_path, "write the trajectory CSV here");
  steer->add_option("--subspace", opt.subspace, "steer inside J-coordinate subspace, e.g. 1,2,4");
  auto* subspaces = app.add_subcommand("subspaces", "list nearly-controllable subspaces");
  add_common(subspaces);
  auto* locus = app.add_subcommand("locus", "root-locus table as CSV");
  add_common(locus);
  locus->add_option("--csv", opt.csv_path, "write the CSV here");
  locus->add_option("--K-min", opt.k_min, "smallest gain");
  locus->add_option("--K-max", opt.k_max, "largest gain");
  locus->add_option("--samples", opt.samples, "number of geometric gain samples");
  auto* simulate = app.add_subcommand("simulate", "trajectory CSV from xi under given controls");
  add_common(simulate);
  simulate->add_option("--csv", opt.csv_path, "write the CSV here");
  simulate->add_option("--controls", opt.controls_path, "controls file (JSON or numbers)");
  auto* identity = app.add_subcommand("identity-loop", "controls whose product is the identity");
  add_common(identity);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "nearctl: " << e.what() << '\n';
    return kExitInvalid;
  }
  Runner runner(out, err);
  for (auto* sub : app.get_subcommands()) {
    try {
      return runner.run(sub->get_name(), opt);
    } catch (const Error& e) {
      // Output-file failures raised after the command itself finished.
      err << "nearctl: " << e.what() << '\n';
      return exit_code_for(e.code());
    }
  }
  return kExitInvalid;
}

}  // namespace nearctl
