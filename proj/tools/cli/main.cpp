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

#include <iostream>

#include "cli/run.hpp"

int main(int argc, char** argv) {
    cbell::cli::RunConfig config;
    if (auto code = cbell::cli::parse(argc, argv, config, std::cerr)) return *code;
    return cbell::cli::run(config, std::cout, std::cerr);
}
