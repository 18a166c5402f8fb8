// Copyright 2026 The optqst Authors
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

#ifndef _OPTQST_CLI_H
#define _OPTQST_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace optqst {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the directory that relative --output paths are resolved against.
inline constexpr const char *kOutputDirEnv = "OPTQST_OUTPUT_DIR";

/// Runs the command line `args` (without the program name). Returns the process exit code:
/// 0 success / all checks pass, 1 verification failure, 2 usage or input error.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

std::string version_string();

}  // namespace optqst

#endif
