// Copyright (C) 2026 The fitcheck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fitcheck {

// Malformed or inconsistent input data. Carries the offending source and,
// when known, the 1-based line number.
class DataError : public std::runtime_error {
public:
    DataError(std::string source, std::size_t line, const std::string& what)
        : std::runtime_error(format(source, line, what)), source_(std::move(source)), line_(line) {}

    explicit DataError(const std::string& what) : std::runtime_error(what) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& source, std::size_t line, const std::string& what) {
        std::string msg = source;
        if (line > 0) {
            msg += ":" + std::to_string(line);
        }
        return msg + ": " + what;
    }

    std::string source_;
    std::size_t line_ = 0;
};

}  // namespace fitcheck
