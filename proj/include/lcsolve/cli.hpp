// Copyright 2026 The lcsolve Authors
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

#ifndef LCSOLVE_CLI_HPP_
#define LCSOLVE_CLI_HPP_

#include <iosfwd>

namespace lcs {

// Exit codes: 0 success, 1 infeasible with --fail-on-error or an invalid
// decomposition under validate, 2 input errors.
int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lcs

#endif  // LCSOLVE_CLI_HPP_
