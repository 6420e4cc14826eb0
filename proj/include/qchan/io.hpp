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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "qchan/optimizer.hpp"

namespace qchan::io {

using Json = nlohmann::json;

/// Complex entries are [re, im] pairs; matrices are row-major nested arrays.
Json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const Json& j);

struct ChannelFile {
  std::variant<ChoiMatrix, KrausSet> channel;
  std::optional<std::string> label;

  const ChannelDims& dims() const;
  /// The Choi matrix, built from the Kraus set when needed (no TP gate).
  ChoiMatrix choi() const;
};

/// {"n": int, "m": int, "repr": "choi"|"kraus", "data": ..., "label"?: str}
ChannelFile channel_from_json(const Json& j);
Json channel_to_json(const ChoiMatrix& c, const std::optional<std::string>& label = {});
Json channel_to_json(const KrausSet& k, const std::optional<std::string>& label = {});

/// {"dim": int, "matrix": ...}
Json state_to_json(const Matrix& rho);
Matrix state_from_json(const Json& j);

/// {"kind": ..., "direction": "min"|"max", parameters...}
Objective objective_from_json(const Json& j);

Json to_json(const ValidationReport& r);
Json to_json(const LandscapeReport& r);

/// Columns: run, iter, value, grad_norm, step.
void write_trace_csv(const LandscapeReport& r, std::ostream& out);

/// Serializes with every double printed to 17 significant digits.
std::string dump(const Json& j);

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

}  // namespace qchan::io
