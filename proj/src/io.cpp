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

#include "qchan/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace qchan::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) parse_fail(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

Index positive_int(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    parse_fail(std::string("field \"") + name + "\" must be a positive integer");
  return static_cast<Index>(v.get<long long>());
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) parse_fail(std::string(what) + " must be a number");
  return j.get<double>();
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) parse_fail("complex entry must be [re, im]");
  return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write(std::ostream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << inner << Json(it.key()).dump() << ": ";
        write(out, it.value(), indent + 1);
      }
      out << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      // Arrays of scalars stay on one line; that keeps matrices readable.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) {
        return e.is_primitive() || (e.is_array() && e.size() == 2 && e[0].is_number());
      });
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[";
      if (!flat) out << "\n";
      bool first = true;
      for (const Json& e : j) {
        if (!first) out << (flat ? ", " : ",\n");
        first = false;
        if (!flat) out << inner;
        write(out, e, indent + 1);
      }
      if (!flat) out << "\n" << pad;
      out << "]";
      return;
    }
    case Json::value_t::number_float:
      out << format_double(j.get<double>());
      return;
    default:
      out << j.dump();
  }
}

Json run_to_json(const RunResult& r, std::size_t index) {
  Json j;
  j["run"] = index;
  j["status"] = std::string(to_string(r.status));
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["final_value"] = r.final_value;
  j["final_grad_norm"] = r.final_grad_norm;
  j["max_manifold_residual"] = r.max_manifold_residual;
  return j;
}

}  // namespace

Json matrix_to_json(const Matrix& a) {
  Json rows = Json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < a.cols(); ++k) row.push_back(Json::array({a(i, k).real(), a(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) parse_fail("matrix must be a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) parse_fail("matrix rows must be non-empty arrays");
  Matrix a(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) parse_fail("ragged matrix rows");
    for (std::size_t k = 0; k < cols; ++k)
      a(static_cast<Index>(i), static_cast<Index>(k)) = complex_from_json(j[i][k]);
  }
  if (!all_finite(a)) parse_fail("matrix has non-finite entries");
  return a;
}

const ChannelDims& ChannelFile::dims() const {
  return std::visit([](const auto& c) -> const ChannelDims& { return c.dims(); }, channel);
}

ChoiMatrix ChannelFile::choi() const {
  if (const auto* c = std::get_if<ChoiMatrix>(&channel)) return *c;
  const KrausSet& k = std::get<KrausSet>(channel);
  Matrix x(k.dims().nm(), static_cast<Index>(k.size()));
  for (std::size_t l = 0; l < k.size(); ++l)
    x.col(static_cast<Index>(l)) = reshape_kraus_to_vec(k.operators()[l]);
  return ChoiMatrix(k.dims(), x * x.adjoint());
}

ChannelFile channel_from_json(const Json& j) {
  const ChannelDims dims{positive_int(j, "n"), positive_int(j, "m")};
  const Json& repr = field(j, "repr");
  if (!repr.is_string()) parse_fail("\"repr\" must be a string");
  std::optional<std::string> label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) parse_fail("\"label\" must be a string");
    label = j["label"].get<std::string>();
  }
  const Json& data = field(j, "data");
  const std::string r = repr.get<std::string>();
  if (r == "choi") return {ChoiMatrix(dims, matrix_from_json(data)), label};
  if (r == "kraus") {
    if (!data.is_array() || data.empty()) parse_fail("Kraus data must be a non-empty array");
    std::vector<Matrix> ops;
    for (const Json& op : data) ops.push_back(matrix_from_json(op));
    return {KrausSet(dims, std::move(ops)), label};
  }
  parse_fail("\"repr\" must be \"choi\" or \"kraus\"");
}

Json channel_to_json(const ChoiMatrix& c, const std::optional<std::string>& label) {
  Json j;
  j["n"] = c.dims().n;
  j["m"] = c.dims().m;
  j["repr"] = "choi";
  j["data"] = matrix_to_json(c.matrix());
  if (label) j["label"] = *label;
  return j;
}

Json channel_to_json(const KrausSet& k, const std::optional<std::string>& label) {
  Json j;
  j["n"] = k.dims().n;
  j["m"] = k.dims().m;
  j["repr"] = "kraus";
  Json ops = Json::array();
  for (const Matrix& op : k.operators()) ops.push_back(matrix_to_json(op));
  j["data"] = std::move(ops);
  if (label) j["label"] = *label;
  return j;
}

Json state_to_json(const Matrix& rho) {
  Json j;
  j["dim"] = rho.rows();
  j["matrix"] = matrix_to_json(rho);
  return j;
}

Matrix state_from_json(const Json& j) {
  const Index dim = positive_int(j, "dim");
  Matrix rho = matrix_from_json(field(j, "matrix"));
  if (rho.rows() != dim || rho.cols() != dim)
    throw Error(ErrorCode::DimMismatch, "state matrix does not match \"dim\"");
  return rho;
}

Objective objective_from_json(const Json& j) {
  const Json& kind_field = field(j, "kind");
  if (!kind_field.is_string()) parse_fail("\"kind\" must be a string");
  const std::string kind = kind_field.get<std::string>();

  std::optional<Direction> dir;
  if (j.contains("direction")) {
    const Json& d = j["direction"];
    if (d == "min") dir = Direction::Minimize;
    else if (d == "max") dir = Direction::Maximize;
    else parse_fail("\"direction\" must be \"min\" or \"max\"");
  }
  auto matrix = [&](const char* name) { return matrix_from_json(field(j, name)); };

  if (kind == "expectation")
    return Objective::expectation(Observable(matrix("observable")), DensityMatrix(matrix("rho0")),
                                  dir.value_or(Direction::Maximize));
  if (kind == "free_energy")
    return Objective::free_energy(Observable(matrix("observable")), DensityMatrix(matrix("rho0")),
                                  number(field(j, "beta"), "\"beta\""),
                                  dir.value_or(Direction::Maximize));
  if (kind == "channel_gen")
    return Objective::channel_generation(channel_from_json(field(j, "target")).choi(),
                                         dir.value_or(Direction::Minimize));
  if (kind == "gate_gen")
    return Objective::gate_generation(matrix("gate"), dir.value_or(Direction::Minimize));
  if (kind == "grk") {
    Matrix gate = matrix("gate");
    GrkStates states = grk_default_states(gate.rows());
    if (j.contains("rho1")) states.rho1 = DensityMatrix(matrix("rho1"));
    if (j.contains("rho2")) states.rho2 = DensityMatrix(matrix("rho2"));
    if (j.contains("rho3")) states.rho3 = DensityMatrix(matrix("rho3"));
    return Objective::grk(std::move(gate), std::move(states.rho1), std::move(states.rho2),
                          std::move(states.rho3), dir.value_or(Direction::Minimize));
  }
  parse_fail("unknown objective kind \"" + kind + "\"");
}

Json to_json(const ValidationReport& r) {
  Json j;
  j["min_eigenvalue"] = r.min_eigenvalue;
  j["tp_residual"] = r.tp_residual;
  j["entry_bound_violation"] = r.entry_bound_violation;
  j["hermitian_residual"] = r.hermitian_residual;
  j["is_cptp"] = r.is_cptp;
  return j;
}

Json to_json(const LandscapeReport& r) {
  Json j;
  j["search_space"] = "all channels (full Stiefel manifold, no reachability constraint)";
  j["best_value"] = r.best_value;
  j["worst_converged_value"] =
      r.worst_converged_value ? Json(*r.worst_converged_value) : Json(nullptr);
  j["spread"] = r.spread;
  j["global_oracle"] = r.global_oracle ? Json(*r.global_oracle) : Json(nullptr);
  j["trap_tol"] = r.trap_tol;
  j["trap_suspects"] = r.trap_suspects;
  j["converged_runs"] = r.converged_runs;
  j["failed_runs"] = r.failed_runs;
  Json runs = Json::array();
  for (std::size_t i = 0; i < r.runs.size(); ++i) runs.push_back(run_to_json(r.runs[i], i));
  j["runs"] = std::move(runs);
  return j;
}

void write_trace_csv(const LandscapeReport& r, std::ostream& out) {
  out << "run,iter,value,grad_norm,step\n";
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    const RunResult& run = r.runs[i];
    for (std::size_t t = 0; t < run.value_trace.size(); ++t)
      out << i << ',' << t << ',' << format_double(run.value_trace[t]) << ','
          << format_double(run.grad_trace[t]) << ',' << format_double(run.step_trace[t]) << '\n';
  }
}

std::string dump(const Json& j) {
  std::ostringstream out;
  write(out, j, 0);
  out << "\n";
  return out.str();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

}  // namespace qchan::io
