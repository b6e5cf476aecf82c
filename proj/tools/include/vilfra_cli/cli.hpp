// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vilfra::cli {

/// Runs one command line (without the program name). Exit status: 0 on
/// success, 1 when validation or construction fails (a JSON diagnostic goes
/// to `err`), 2 on usage errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vilfra::cli
