// Copyright 2026 The csdiv Authors
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
#include <string_view>
#include <vector>

namespace csdiv::cli {

/// Process exit statuses.
enum ExitStatus : int {
  kExitClean = 0,
  kExitUsage = 1,
  kExitInput = 2,
  kExitViolation = 3,
};

/// Parses a comma-separated list of decimals. Throws ParseError naming the
/// offending entry and the flag it came from.
std::vector<double> parse_decimal_list(std::string_view text,
                                       std::string_view flag);

/// Runs one command line (args excludes the program name). Report documents
/// go to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace csdiv::cli
