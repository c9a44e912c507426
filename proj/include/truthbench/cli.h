// Copyright 2026 The Truthbench Authors.
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


// The truthbench command line: one subcommand per experiment pipeline.
//
// Exit codes: 0 for success (SAT, YES, all checks passed), 1 for a negative
// verdict (PRESUMED_UNSAT, NO, a failed check), 2 for errors.

#ifndef TRUTHBENCH_CLI_H_
#define TRUTHBENCH_CLI_H_

#include <ostream>

namespace truthbench {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitError = 2;

// Environment variable overriding the master seed when --seed is absent.
inline constexpr const char* kSeedEnvVar = "TRUTHBENCH_SEED";

// argv[0] is the program name. Reports go to `out` unless --out names a
// file; diagnostics go to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace truthbench

#endif  // TRUTHBENCH_CLI_H_
