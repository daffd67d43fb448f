#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mvcap/bounds.hpp"
#include "mvcap/discriminant.hpp"
#include "mvcap/error.hpp"
#include "mvcap/io.hpp"
#include "mvcap/mv_exact.hpp"
#include "mvcap/rational.hpp"
#include "mvcap/scaling.hpp"
#include "mvcap/selftest.hpp"
#include "mvcap/solver.hpp"

namespace {

using mvcap::Error;
using mvcap::ErrorKind;
using OJson = nlohmann::ordered_json;

constexpr int kExitCertified = 0;
constexpr int kExitUncertified = 2;
constexpr int kExitZero = 3;
constexpr int kExitInput = 64;
constexpr int kExitInternal = 70;

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  double epsilon = 1e-4;
  std::string mode = "exact";
  std::uint64_t samples = 100'000;
  std::optional<std::uint64_t> seed;
  std::string normalization = "partial";
  std::string method = "ellipsoid";
  bool exact = false;
  bool rational = false;
  bool timing = false;
  std::optional<int> n;
  std::optional<int> k;
  std::string csv;
  int max_iters = 1000;
};

struct InputFile {
  std::string path;
  std::string text;
  std::string sha1;  // git blob hash
  mvcap::Json doc;
};

std::string git_blob_sha1(const std::string& content) {
  const std::string data = "blob " + std::to_string(content.size()) + '\0' + content;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha1(), nullptr) != 1)
    throw Error(ErrorKind::InvalidArgument, "SHA-1 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

InputFile load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw Error(ErrorKind::InvalidArgument, cfg.command + ": --input is required");
  InputFile in;
  in.path = cfg.input;
  in.text = mvcap::read_text_file(cfg.input);
  in.sha1 = git_blob_sha1(in.text);
  in.doc = mvcap::parse_json_text(in.text, cfg.input);
  return in;
}

// The first 16 hex digits of the input hash, so runs without --seed stay reproducible.
std::uint64_t resolve_seed(const RunConfig& cfg, const InputFile* in) {
  if (cfg.seed) return *cfg.seed;
  return in ? std::stoull(in->sha1.substr(0, 16), nullptr, 16) : 0;
}

OJson vec_json(const mvcap::Vec& v) {
  OJson a = OJson::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

double mv_scale(const RunConfig& cfg, int n) { return cfg.normalization == "classical" ? mvcap::factorial(n) : 1.0; }

mvcap::SolverOptions solver_options(const RunConfig& cfg, std::uint64_t seed) {
  mvcap::SolverOptions o;
  o.epsilon = cfg.epsilon;
  o.oracle = cfg.mode == "mc" ? mvcap::OracleKind::MonteCarlo : mvcap::OracleKind::Exact;
  o.samples = cfg.samples;
  o.seed = seed;
  o.method = cfg.method == "pg" ? mvcap::MinimizerMethod::ProjectedGradient : mvcap::MinimizerMethod::Ellipsoid;
  return o;
}

OJson report_json(const mvcap::CapacityReport& r, double scale) {
  OJson j;
  j["cap_estimate"] = r.cap_estimate;
  j["minimizer_y"] = vec_json(r.minimizer_y);
  j["additive_gap"] = r.additive_gap;
  j["mv_lower"] = r.mv_lower / scale;
  j["mv_upper"] = r.mv_upper / scale;
  j["mv_upper_with_gap"] = r.mv_upper * std::exp(r.additive_gap) / scale;
  j["factors"] = r.factors;
  j["factor_dims"] = r.factor_dims;
  j["oracle_mode"] = r.oracle_mode;
  j["method"] = r.method;
  j["iterations"] = r.iterations;
  j["certified"] = r.certified;
  j["zero_certificate"] = r.zero_certificate;
  j["value_calls"] = r.value_calls;
  j["gradient_calls"] = r.gradient_calls;
  j["radius"] = r.radius;
  j["var_estimate"] = r.var_estimate;
  j["epsilon"] = r.epsilon;
  j["failure_prob_per_call"] = r.failure_prob_per_call;
  j["blocks"] = r.blocks;
  return j;
}

int report_exit(const mvcap::CapacityReport& r) {
  if (r.zero_certificate) return kExitZero;
  return r.certified ? kExitCertified : kExitUncertified;
}

struct Outcome {
  OJson result;
  int exit_code = kExitCertified;
};

Outcome run_capacity(const RunConfig& cfg, const InputFile& in, std::uint64_t seed, bool with_mv) {
  const mvcap::BodyTuple t = mvcap::bodies_from_json(in.doc);
  const auto opt = solver_options(cfg, seed);
  const mvcap::CapacityReport r = with_mv ? mvcap::approx_mixed_volume(t, opt) : mvcap::minimize_capacity(t, opt);
  Outcome o;
  o.result = report_json(r, mv_scale(cfg, t.size()));
  o.result["labels"] = t.labels;
  if (with_mv && cfg.exact) {
    if (cfg.rational) {
      const mvcap::Rational v = mvcap::mixed_volume_polarization(mvcap::rational_bodies_from_json(in.doc)) /
                                mvcap::Rational(static_cast<long long>(std::llround(mv_scale(cfg, t.size()))));
      o.result["exact_mixed_volume"] = mvcap::to_string(v);
      o.result["exact_mixed_volume_value"] = static_cast<double>(v);
    } else {
      o.result["exact_mixed_volume"] = mvcap::mixed_volume_polarization(t).value / mv_scale(cfg, t.size());
    }
  }
  o.exit_code = report_exit(r);
  return o;
}

OJson factors_json(const mvcap::BoundFactors& f) {
  OJson j;
  j["aff_sorted"] = f.aff_sorted;
  j["d"] = f.d;
  j["lambdas"] = f.lambdas;
  j["product"] = f.product;
  j["vdw_factor"] = f.vdw_factor;
  return j;
}

Outcome run_bounds(const RunConfig& cfg, const InputFile* in, std::uint64_t seed) {
  Outcome o;
  if (in) {
    const mvcap::BodyTuple t = mvcap::bodies_from_json(in->doc);
    const mvcap::CapacityReport r = mvcap::minimize_capacity(t, solver_options(cfg, seed));
    std::vector<int> aff;
    for (int i = 0; i < t.size(); ++i) aff.push_back(mvcap::affine_dimension(t[i]));
    const mvcap::LowerBounds lb = mvcap::lower_bounds_report(r.cap_estimate, aff, cfg.k);
    const double scale = mv_scale(cfg, t.size());
    o.result["cap_estimate"] = r.cap_estimate;
    o.result["additive_gap"] = r.additive_gap;
    o.result["factors"] = factors_json(lb.factors);
    o.result["vdw_lower"] = lb.vdw / scale;
    o.result["svg_lower"] = lb.svg / scale;
    if (lb.schrijver) {
      o.result["schrijver_k"] = *lb.schrijver_k;
      o.result["schrijver_lower"] = *lb.schrijver / scale;
    }
    o.exit_code = report_exit(r);
    return o;
  }
  if (!cfg.n) throw Error(ErrorKind::InvalidArgument, "bounds: give --input or --n");
  const int n = *cfg.n;
  const int k = cfg.k.value_or(n);
  if (n < 1 || k < 1 || k > n) throw Error(ErrorKind::InvalidArgument, "bounds: need 1 <= k <= n");
  OJson rows = OJson::array();
  double product = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int d = std::min(i, k);
    const double lam = mvcap::lambda_factor(i, d);
    product *= lam;
    rows.push_back(OJson{{"i", i}, {"d", d}, {"lambda", lam}});
  }
  o.result["n"] = n;
  o.result["k"] = k;
  o.result["table"] = rows;
  o.result["product"] = product;
  o.result["schrijver_factor"] = mvcap::schrijver_factor(n, k);
  o.result["vdw_factor"] = mvcap::factorial(n) / std::pow(static_cast<double>(n), n);
  return o;
}

Outcome run_scale(const RunConfig& cfg, const InputFile& in) {
  const mvcap::BodyTuple t = mvcap::bodies_from_json(in.doc);
  const auto f = mvcap::minkowski_functional(t);
  std::ofstream csv_file;
  if (!cfg.csv.empty()) {
    csv_file.open(cfg.csv);
    if (!csv_file) throw Error(ErrorKind::InvalidArgument, "scale: cannot write " + cfg.csv);
  }
  const mvcap::SinkhornTrajectory tr = mvcap::sinkhorn_iterate(*f, mvcap::Vec::Ones(t.size()), cfg.max_iters, cfg.epsilon,
                                                               cfg.csv.empty() ? nullptr : &csv_file);
  const mvcap::ScalingState& last = tr.states.back();
  Outcome o;
  o.result["converged"] = tr.converged;
  o.result["steps"] = tr.sh_values.size();
  o.result["x"] = vec_json(last.x);
  o.result["f_value"] = last.f_value;
  o.result["gamma"] = vec_json(last.gamma);
  o.result["max_gamma_deviation"] = (last.gamma.array() - 1.0).abs().maxCoeff();
  o.exit_code = tr.converged ? kExitCertified : kExitUncertified;
  return o;
}

Outcome run_decompose(const InputFile& in) {
  const mvcap::BodyTuple t = mvcap::bodies_from_json(in.doc);
  const mvcap::DecompositionResult d = mvcap::decompose(t);
  Outcome o;
  o.result["zero"] = d.zero;
  if (d.zero) o.result["zero_subset"] = d.zero_subset;
  OJson blocks = OJson::array();
  for (const auto& b : d.blocks) blocks.push_back(OJson{{"indices", b.indices}, {"dim", b.basis.cols()}});
  o.result["blocks"] = blocks;
  o.result["certificates"] = d.certificates;
  o.exit_code = d.zero ? kExitZero : kExitCertified;
  return o;
}

mvcap::Mat psd_sqrt(const mvcap::Mat& a) {
  const Eigen::SelfAdjointEigenSolver<mvcap::Mat> es(a);
  return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

Outcome run_discriminant(const RunConfig& cfg, const InputFile& in, std::uint64_t seed) {
  const mvcap::MatrixTuple a = mvcap::matrices_from_json(in.doc);
  const int n = a.size();
  const double scale = mv_scale(cfg, n);
  Outcome o;
  const double d = mvcap::mixed_discriminant_polarization(a);
  o.result["mixed_discriminant"] = d / scale;
  const bool fi = mvcap::fully_indecomposable(a);
  o.result["fully_indecomposable"] = fi;
  if (fi) {
    const mvcap::CapacityReport r = mvcap::det_capacity(a, solver_options(cfg, seed));
    o.result["capacity"] = report_json(r, scale);
    o.exit_code = report_exit(r);
  } else {
    o.result["capacity"] = nullptr;
  }
  // The ellipsoids E_i = A_i^{1/2} B have D(A_i^{1/2} A_i^{1/2}) = D(A).
  const mvcap::ConventionResolution res = mvcap::resolve_barvinok_convention();
  std::vector<mvcap::Mat> factors;
  for (int i = 0; i < n; ++i) factors.push_back(psd_sqrt(a[i]));
  const mvcap::BarvinokBracket br = mvcap::barvinok_bracket(factors, res.chosen);
  OJson conv;
  conv["volume"] = mvcap::to_string(res.chosen.volume);
  conv["discriminant"] = mvcap::to_string(res.chosen.discriminant);
  conv["samples"] = res.samples;
  o.result["ellipsoid_volume_bracket"] = OJson{{"lower", br.lower}, {"upper", br.upper}, {"convention", conv}};
  return o;
}

int run(const RunConfig& cfg, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.command == "selftest") {
    const auto results = mvcap::run_acceptance(std::cout);
    for (const auto& r : results)
      if (!r.passed) return 1;
    return 0;
  }
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw Error(ErrorKind::InvalidArgument, "--epsilon must lie in (0, 1)");
  if (cfg.mode == "mc" && cfg.samples < 1000) throw Error(ErrorKind::InvalidArgument, "--samples must be at least 1000 in mc mode");
  if (cfg.rational && !cfg.exact) throw Error(ErrorKind::InvalidArgument, "--rational requires --exact");

  std::optional<InputFile> in;
  if (cfg.command != "bounds" || !cfg.input.empty()) in = load_input(cfg);
  const std::uint64_t seed = resolve_seed(cfg, in ? &*in : nullptr);

  Outcome out;
  if (cfg.command == "capacity") {
    out = run_capacity(cfg, *in, seed, false);
  } else if (cfg.command == "mixed-volume") {
    out = run_capacity(cfg, *in, seed, true);
  } else if (cfg.command == "bounds") {
    out = run_bounds(cfg, in ? &*in : nullptr, seed);
  } else if (cfg.command == "scale") {
    out = run_scale(cfg, *in);
  } else if (cfg.command == "decompose") {
    out = run_decompose(*in);
  } else {
    out = run_discriminant(cfg, *in, seed);
  }

  OJson report;
  report["command"] = cfg.command;
  if (in) report["input"] = OJson{{"path", in->path}, {"sha1", in->sha1}};
  OJson c;
  c["epsilon"] = cfg.epsilon;
  c["mode"] = cfg.mode;
  c["samples"] = cfg.samples;
  c["seed"] = seed;
  c["seed_source"] = cfg.seed ? "flag" : "input-hash";
  c["normalization"] = cfg.normalization;
  c["method"] = cfg.method;
  report["config"] = c;
  report["result"] = out.result;
  report["exit_code"] = out.exit_code;
  if (cfg.timing)
    report["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string text = report.dump(2) + "\n";
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
      err << "mvcap: cannot write " << cfg.output << "\n";
      return kExitInput;
    }
    f << text;
  }
  return out.exit_code;
}

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::DegenerateBody:
    case ErrorKind::Precondition:
    case ErrorKind::Parse:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed volume approximation through capacity minimization"};
  RunConfig cfg;
  const std::vector<std::string> commands{"capacity", "mixed-volume", "bounds", "scale", "decompose", "discriminant", "selftest"};
  std::string positional;
  app.add_option("cmd", positional, "Command to run")->check(CLI::IsMember(commands));
  app.add_option("--command", cfg.command, "Command to run (alternative to the positional form)")->check(CLI::IsMember(commands));
  app.add_option("-i,--input", cfg.input, "JSON file with bodies or matrices");
  app.add_option("-o,--output", cfg.output, "Report path (default: stdout)");
  app.add_option("--epsilon", cfg.epsilon, "Additive gap on log capacity; tolerance for scale");
  app.add_option("--mode", cfg.mode, "Volume oracle")->check(CLI::IsMember({"exact", "mc"}));
  app.add_flag("--exact", cfg.exact, "Also report the exact mixed volume by polarization");
  app.add_flag("--rational", cfg.rational, "Compute the exact mixed volume in rational arithmetic (boxes and zonotopes)");
  app.add_option("--samples", cfg.samples, "Monte Carlo samples per oracle call");
  app.add_option("--seed", cfg.seed, "Master seed (default: derived from the input hash)");
  app.add_option("--normalization", cfg.normalization, "partial: coefficient of d^n/dx_1..dx_n; classical: divided by n!")
      ->check(CLI::IsMember({"partial", "classical"}));
  app.add_option("--method", cfg.method, "Minimizer")->check(CLI::IsMember({"ellipsoid", "pg"}));
  app.add_option("--n", cfg.n, "Dimension for bounds without an input file");
  app.add_option("--k", cfg.k, "Profile parameter for bounds");
  app.add_option("--csv", cfg.csv, "Trajectory CSV for scale");
  app.add_option("--max-iters", cfg.max_iters, "Step limit for scale");
  app.add_flag("--timing", cfg.timing, "Add wall time to the report (breaks byte-identical output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }
  if (!positional.empty() && !cfg.command.empty() && positional != cfg.command) {
    std::cerr << "mvcap: conflicting commands \"" << positional << "\" and \"" << cfg.command << "\"\n";
    return kExitInput;
  }
  if (cfg.command.empty()) cfg.command = positional;
  if (cfg.command.empty()) {
    std::cerr << "mvcap: no command given\n" << app.help();
    return kExitInput;
  }
  if (cfg.exact) cfg.mode = "exact";

  try {
    return run(cfg, std::cerr);
  } catch (const Error& e) {
    std::cerr << "mvcap: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kExitInput : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "mvcap: " << e.what() << "\n";
    return kExitInternal;
  }
}
