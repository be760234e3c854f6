/*
 *  Copyright 2026 The wxbench Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wxbench {

enum class ErrorKind {
    NotFound,
    MalformedPng,
    NonBinaryMask,
    SchemaViolation,
    DimMismatch,
    EmptyCorpus,
    EmptyList,
    MissingPrediction,
    MissingMask,
    InvalidArgument,
    Io,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

/// Validation failures map to exit code 2, I/O failures to 3.
bool is_io_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace wxbench
