/*
 * Copyright 2026 The GDP Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GDP_CLI_H_
#define GDP_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace gdp {

// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `gdp` tool; `args` excludes the program name.
// Subcommands: simulate, train, finetune, generate, predict, eval, benchmark.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gdp

#endif  // GDP_CLI_H_
