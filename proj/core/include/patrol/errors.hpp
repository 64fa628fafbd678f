/*
 * Copyright 2026 The patrol Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PATROL_ERRORS_HPP
#define PATROL_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace patrol {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: a file, a game, a strategy that breaks its invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside the domain it is defined on.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Explicit expansion or enumeration would exceed a configured cap.
class SizeLimitError : public Error {
public:
    SizeLimitError(const std::string& what, std::uint64_t count, std::uint64_t limit)
        : Error(what + " (" + std::to_string(count) + " > " + std::to_string(limit) + ")"),
          count_(count), limit_(limit) {}

    std::uint64_t count() const noexcept { return count_; }
    std::uint64_t limit() const noexcept { return limit_; }

private:
    std::uint64_t count_;
    std::uint64_t limit_;
};

/// 64-bit integer arithmetic would overflow.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A strategy needs a move that the environment does not allow.
class EdgeViolationError : public ValidationError {
public:
    EdgeViolationError(std::uint64_t from, std::uint64_t to)
        : ValidationError("strategy requires missing edge (" + std::to_string(from) + ", " +
                          std::to_string(to) + ")"),
          from_(from), to_(to) {}

    std::uint64_t from() const noexcept { return from_; }
    std::uint64_t to() const noexcept { return to_; }

private:
    std::uint64_t from_;
    std::uint64_t to_;
};

class UnboundVariableError : public DomainError {
public:
    explicit UnboundVariableError(const std::string& name)
        : DomainError("unbound variable '" + name + "'"), name_(name) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// The equation solver exhausted its iteration and restart budget.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double best_residual)
        : Error(what), best_residual_(best_residual) {}

    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

}  // namespace patrol

#endif  // PATROL_ERRORS_HPP
