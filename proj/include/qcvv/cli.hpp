// Copyright 2026 The qcvv authors
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

#include <string>
#include <vector>

namespace qcvv {
namespace cli {

/// Runs the command-line tool on the given arguments (program name
/// excluded) and returns the process exit code: 0 on success, 2 on
/// validation or usage errors, 3 on numerical failures such as
/// non-convergence. The same entry point backs the installed binary and
/// the in-process pipeline tests.
int run(std::vector<std::string> args);

/// argv-style adapter for main().
int run(int argc, char** argv);

}  // namespace cli
}  // namespace qcvv
