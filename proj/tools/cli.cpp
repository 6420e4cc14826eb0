// Copyright 2026 The qchan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qchan/io.hpp"

namespace qchan::cli {

namespace {

using io::Json;

// Thrown for usage problems that are not library errors (bad paths, bad
// environment values).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

io::ChannelFile load_channel(const std::string& path) {
  return io::channel_from_json(io::read_json_file(path));
}

ChoiMatrix load_cptp_choi(const std::string& path) {
  ChoiMatrix c = load_channel(path).choi();
  require_cptp(c);
  return c;
}

Matrix load_matrix(const std::string& path) {
  const Json j = io::read_json_file(path);
  // Either a bare nested array or a state file {"dim", "matrix"}.
  if (j.is_object()) return io::state_from_json(j);
  return io::matrix_from_json(j);
}

void emit(const Json& doc, const std::optional<std::string>& path, std::ostream& out) {
  if (!path) {
    out << io::dump(doc);
    return;
  }
  std::ofstream file(*path);
  if (!file) throw UsageError("cannot write " + *path);
  file << io::dump(doc);
  Json summary;
  summary["written"] = *path;
  summary["repr"] = doc.at("repr");
  summary["n"] = doc.at("n");
  summary["m"] = doc.at("m");
  out << io::dump(summary);
}

std::string format_scalar(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-')
    throw UsageError("seed must be a non-negative integer, got \"" + text + "\"");
  return static_cast<std::uint64_t>(v);
}

struct ValidateArgs {
  std::string path;
};

struct ConvertArgs {
  std::string path;
  std::string to;
  std::optional<std::string> out;
};

struct ApplyArgs {
  std::string channel;
  std::string state;
};

struct DistanceArgs {
  std::string first;
  std::string second;
  std::string kind = "stiefel";
};

struct OptimizeArgs {
  std::string path;
  int starts = 20;
  std::optional<std::string> seed;
  std::optional<std::string> trace;
  int max_iters = 5000;
  double grad_tol = 1e-8;
  std::string rule = "lbfgs";
};

struct ExamplesArgs {
  std::string name;
  Index n = 2;
  double eps = 0.0;
  double p = 0.0;
  Index k = 2;
  Index l = 2;
  std::string which = "second";
  std::optional<std::string> gate;
  std::optional<std::string> sigma;
  std::string repr = "kraus";
  std::optional<std::string> out;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out, std::ostream& err) {
  const io::ChannelFile f = load_channel(a.path);
  const ValidationReport r = std::holds_alternative<KrausSet>(f.channel)
                                 ? validate(std::get<KrausSet>(f.channel))
                                 : validate(std::get<ChoiMatrix>(f.channel));
  out << io::dump(io::to_json(r));
  if (r.is_cptp) return kOk;
  err << "qchan: " << a.path << " is not CPTP\n";
  return kNotCptp;
}

int cmd_convert(const ConvertArgs& a, std::ostream& out) {
  const io::ChannelFile f = load_channel(a.path);
  const ChoiMatrix c = f.choi();
  require_cptp(c);
  Json doc;
  if (a.to == "choi") doc = io::channel_to_json(c, f.label);
  else if (a.to == "kraus-min") doc = io::channel_to_json(choi_to_minimal_kraus(c), f.label);
  else doc = io::channel_to_json(stiefel_to_kraus(choi_to_stiefel_sqrt(c)), f.label);
  emit(doc, a.out, out);
  return kOk;
}

int cmd_apply(const ApplyArgs& a, std::ostream& out) {
  const ChoiMatrix c = load_cptp_choi(a.channel);
  const Matrix rho = io::state_from_json(io::read_json_file(a.state));
  if (rho.rows() != c.dims().n)
    throw Error(ErrorCode::DimMismatch, "state dimension does not match the channel input");
  const DensityMatrix state(rho);
  out << io::dump(io::state_to_json(hermitian_part(apply_choi(c, state.matrix()))));
  return kOk;
}

int cmd_distance(const DistanceArgs& a, std::ostream& out) {
  const ChoiMatrix c1 = load_cptp_choi(a.first);
  const ChoiMatrix c2 = load_cptp_choi(a.second);
  if (!(c1.dims() == c2.dims()))
    throw Error(ErrorCode::DimMismatch, "channels have different dimensions");
  double d = 0.0;
  if (a.kind == "stiefel") d = channel_distance(c1, c2);
  else if (a.kind == "bures-choi") d = bures_choi_distance(c1, c2);
  else d = (c1.matrix() - c2.matrix()).norm();
  out << format_scalar(d) << "\n";
  return kOk;
}

int cmd_optimize(const OptimizeArgs& a, std::ostream& out, std::ostream& err) {
  const Objective obj = io::objective_from_json(io::read_json_file(a.path));
  OptimizerConfig cfg;
  cfg.max_iters = a.max_iters;
  cfg.grad_tol = a.grad_tol;
  cfg.rule = a.rule == "gradient" ? DescentRule::Gradient : DescentRule::Lbfgs;
  if (a.seed) {
    cfg.seed = parse_seed(*a.seed);
  } else if (const char* env = std::getenv("QCHAN_SEED")) {
    cfg.seed = parse_seed(env);
  }
  cfg.check();

  const LandscapeReport report = multi_start(obj, a.starts, cfg);
  if (a.trace) {
    std::ofstream file(*a.trace);
    if (!file) throw UsageError("cannot write " + *a.trace);
    io::write_trace_csv(report, file);
  }
  out << io::dump(io::to_json(report));
  if (report.converged_runs == 0) {
    err << "qchan: no run converged\n";
    return kNoConvergence;
  }
  return kOk;
}

int cmd_examples(const ExamplesArgs& a, std::ostream& out) {
  KrausSet k = [&] {
    if (a.name == "identity") return identity_channel(a.n);
    if (a.name == "unitary") {
      if (!a.gate) throw Error(ErrorCode::BadParameter, "unitary needs --gate");
      return unitary_channel(load_matrix(*a.gate));
    }
    if (a.name == "erasing") return erasing_channel(a.eps);
    if (a.name == "phase-erasing") return phase_erasing_channel(a.eps);
    if (a.name == "partial-trace")
      return partial_trace_channel(a.k, a.l,
                                   a.which == "first" ? TracedFactor::First : TracedFactor::Second);
    const Matrix sigma = a.sigma ? load_matrix(*a.sigma)
                                 : Matrix(Matrix::Identity(a.n, a.n) / static_cast<double>(a.n));
    return depolarize_to_state(a.n, sigma, a.p);
  }();
  const Json doc = a.repr == "choi" ? io::channel_to_json(kraus_to_choi(k), a.name)
                                    : io::channel_to_json(k, a.name);
  emit(doc, a.out, out);
  return kOk;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::DimMismatch:
    case ErrorCode::BadParameter:
    case ErrorCode::NotHermitian:
    case ErrorCode::NonFinite:
    case ErrorCode::NotUnitary:
    case ErrorCode::NotIsometry:
    case ErrorCode::RankMismatch:
      return kInvalidInput;
    case ErrorCode::NotCPTP:
    case ErrorCode::NotTracePreserving:
      return kNotCptp;
    case ErrorCode::NotPSD:
    case ErrorCode::ManifoldViolation:
    case ErrorCode::SpectrumTooSingular:
    case ErrorCode::LineSearchStall:
      return kInternalFailure;
  }
  return kInternalFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum channels as points of complex Stiefel manifolds", "qchan"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  ValidateArgs va;
  auto* validate_cmd = app.add_subcommand("validate", "Check a channel file for CPTP");
  validate_cmd->add_option("path", va.path, "Channel JSON file")->required();

  ConvertArgs ca;
  auto* convert_cmd = app.add_subcommand("convert", "Convert between representations");
  convert_cmd->add_option("path", ca.path, "Channel JSON file")->required();
  convert_cmd->add_option("--to", ca.to, "Target representation")
      ->required()
      ->check(CLI::IsMember({"choi", "kraus-min", "kraus-sqrt"}));
  convert_cmd->add_option("--out", ca.out, "Output file (default: stdout)");

  ApplyArgs aa;
  auto* apply_cmd = app.add_subcommand("apply", "Apply a channel to a state");
  apply_cmd->add_option("channel", aa.channel, "Channel JSON file")->required();
  apply_cmd->add_option("state", aa.state, "State JSON file")->required();

  DistanceArgs da;
  auto* distance_cmd = app.add_subcommand("distance", "Distance between two channels");
  distance_cmd->add_option("first", da.first, "Channel JSON file")->required();
  distance_cmd->add_option("second", da.second, "Channel JSON file")->required();
  distance_cmd->add_option("--kind", da.kind, "Distance formula")->capture_default_str()
      ->check(CLI::IsMember({"stiefel", "bures-choi", "frobenius-choi"}));

  OptimizeArgs oa;
  auto* optimize_cmd = app.add_subcommand("optimize", "Multi-start landscape scan");
  optimize_cmd->add_option("objective", oa.path, "Objective JSON file")->required();
  optimize_cmd->add_option("--starts", oa.starts, "Number of random starts")->capture_default_str()
      ->check(CLI::PositiveNumber);
  optimize_cmd->add_option("--seed", oa.seed, "Base seed (fallback: QCHAN_SEED, then 0)");
  optimize_cmd->add_option("--trace", oa.trace, "Write per-iteration CSV traces");
  optimize_cmd->add_option("--max-iters", oa.max_iters, "Iteration cap per run")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  optimize_cmd->add_option("--grad-tol", oa.grad_tol, "Gradient-norm stopping tolerance")->capture_default_str()
      ->check(CLI::PositiveNumber);
  optimize_cmd->add_option("--rule", oa.rule, "Descent direction")->capture_default_str()
      ->check(CLI::IsMember({"lbfgs", "gradient"}));

  ExamplesArgs ea;
  auto* examples_cmd = app.add_subcommand("examples", "Emit an example channel");
  examples_cmd->add_option("--name", ea.name, "Channel family")
      ->required()
      ->check(CLI::IsMember(
          {"identity", "unitary", "erasing", "phase-erasing", "partial-trace", "depolarize"}));
  examples_cmd->add_option("--n", ea.n, "Dimension (identity, depolarize)")->capture_default_str();
  examples_cmd->add_option("--eps", ea.eps, "Erasure probability")->capture_default_str();
  examples_cmd->add_option("--p", ea.p, "Depolarizing weight")->capture_default_str();
  examples_cmd->add_option("--k", ea.k, "Kept factor dimension (partial-trace)")->capture_default_str();
  examples_cmd->add_option("--l", ea.l, "Traced factor dimension (partial-trace)")->capture_default_str();
  examples_cmd->add_option("--which", ea.which, "Traced factor")->capture_default_str()
      ->check(CLI::IsMember({"first", "second"}));
  examples_cmd->add_option("--gate", ea.gate, "Matrix JSON file (unitary)");
  examples_cmd->add_option("--sigma", ea.sigma, "Target state JSON file (depolarize)");
  examples_cmd->add_option("--repr", ea.repr, "Output representation")->capture_default_str()
      ->check(CLI::IsMember({"kraus", "choi"}));
  examples_cmd->add_option("--out", ea.out, "Output file (default: stdout)");

  std::vector<const char*> argv{"qchan"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kInvalidInput;
  }

  try {
    if (*validate_cmd) return cmd_validate(va, out, err);
    if (*convert_cmd) return cmd_convert(ca, out);
    if (*apply_cmd) return cmd_apply(aa, out);
    if (*distance_cmd) return cmd_distance(da, out);
    if (*optimize_cmd) return cmd_optimize(oa, out, err);
    if (*examples_cmd) return cmd_examples(ea, out);
  } catch (const Error& e) {
    err << "qchan: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const UsageError& e) {
    err << "qchan: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "qchan: internal error: " << e.what() << "\n";
    return kInternalFailure;
  }
  return kInvalidInput;
}

}  // namespace qchan::cli
