// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fitcheck::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kDataError = 2 };

/// Runs one `fitcheck` invocation. `args` excludes the program name.
/// Machine output goes to `out`, diagnostics and prompts to `err`;
/// interactive top-k picks are read from `in`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace fitcheck::cli
