// Copyright 2026 The loqsim authors
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

#ifndef LOQSIM_CLI_HPP
#define LOQSIM_CLI_HPP

#include <string>
#include <vector>

#include "loqsim/tomography.hpp"

namespace loqsim {

// Entry point behind the `loqsim` binary.  Subcommands: truth-table, fringe,
// bell, tomo.  Returns 0 on success, 1 on validation or I/O errors, 2 when a
// reconstruction fails to converge.
int run_cli(int argc, const char* const* argv);

// All numbers in emitted JSON pass through this 12-significant-digit
// round-trip so outputs are stable across runs and platforms.
double round_for_output(double value);

// Coincidence-count table serialization: header `setting_c,setting_t,counts`,
// one row per analyzer pair, counts printed so they round-trip exactly.
std::string write_counts_csv(const std::vector<CountRecord>& records);
std::vector<CountRecord> parse_counts_csv(const std::string& text);

}  // namespace loqsim

#endif  // LOQSIM_CLI_HPP
