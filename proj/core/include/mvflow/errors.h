// Copyright 2026 The mvflow Authors
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

#ifndef MVFLOW_ERRORS_H
#define MVFLOW_ERRORS_H

#include <stdexcept>
#include <string>

namespace mvflow {

/// Malformed input: bad indices, widths, non-unitary or non-bijective data.
class ValidationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A request that exceeds a configured size cap (qubit count, ancillas).
class ResourceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Circuit-document syntax or semantic error, always carrying a location.
class ParseError : public ValidationError {
   public:
    ParseError(int line, int column, std::string token, const std::string &message)
        : ValidationError(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                          " (at '" + token + "')"),
          line_(line),
          column_(column),
          token_(std::move(token)) {
    }

    int line() const noexcept {
        return line_;
    }
    int column() const noexcept {
        return column_;
    }
    const std::string &token() const noexcept {
        return token_;
    }

   private:
    int line_;
    int column_;
    std::string token_;
};

}  // namespace mvflow

#endif  // MVFLOW_ERRORS_H
