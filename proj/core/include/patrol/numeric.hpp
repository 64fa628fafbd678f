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

#ifndef PATROL_NUMERIC_HPP
#define PATROL_NUMERIC_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "patrol/errors.hpp"

namespace patrol {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const char* what) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError(std::string(what) + " overflows 64 bits");
    return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError(std::string(what) + " overflows 64 bits");
    return r;
}

inline std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b, const char* what) {
    return checked_mul(a / std::gcd(a, b), b, what);
}

/// Nearest double to an exact rational.
inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "a", "a/b", or a plain decimal such as "0.25" exactly.
Rational parse_rational(const std::string& text);

/// The double rounded to `digits` significant decimal digits.
double round_significant(double v, int digits = 10);

}  // namespace patrol

#endif  // PATROL_NUMERIC_HPP
