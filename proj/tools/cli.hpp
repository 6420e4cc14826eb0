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
#include <string>
#include <vector>

#include "qchan/error.hpp"

namespace qchan::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kNotCptp = 2,
  kNoConvergence = 3,
  kInternalFailure = 4,
};

int exit_code_for(ErrorCode code);

/// Runs one command line. args excludes the program name. Exactly one JSON
/// document (or one scalar for `distance`) goes to out; diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qchan::cli
