// Copyright 2026 The cbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CBELL_TOOLS_CLI_RUN_HPP
#define CBELL_TOOLS_CLI_RUN_HPP

#include <optional>
#include <ostream>
#include <string>

#include "cbell/quad.hpp"
#include "json.hpp"

namespace cbell::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
    std::string command;  ///< chsh | single-particle | bipartite | eigenvalues | wigner | sigma-curve
    std::optional<int> truncation;  ///< 64 for one mode, 32 per mode for two
    quad::IntegrationSpec spec;
    int n_max = 24;
    std::string format;  ///< json | csv; empty picks csv for grids, json otherwise
    std::string out = "-";
    std::string state = "fock1";
    int points = 101;
};

struct Outcome {
    int exit_code = 0;
    nlohmann::json document;  ///< always filled, even for csv output
    std::string csv;          ///< grid commands in csv format only
};

/// Runs one command without touching the filesystem.
Outcome execute(const RunConfig& config);

/// Runs and writes the document (or csv) to config.out, "-" meaning `out`.
/// Returns 0 on success, 1 on usage errors, 2 on non-convergence.
int run(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Parses argv into a config; returns the exit code when parsing stops early
/// (help, usage errors).
std::optional<int> parse(int argc, char** argv, RunConfig& config, std::ostream& log);

}  // namespace cbell::cli

#endif  // CBELL_TOOLS_CLI_RUN_HPP
