/*
 * Copyright 2026 The cpl Authors
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

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace cpl {

using Index = std::size_t;

/// Arbitrary-precision rational used by the exact mode. Expression templates
/// are disabled so that `auto` bindings hold values.
using Rational = boost::multiprecision::number<
    boost::multiprecision::cpp_rational_backend,
    boost::multiprecision::et_off>;

/// Parses "7", "-3/4", "0.9", "1.25e-3" exactly.
Rational parse_rational(std::string_view text);

/// Exact rational of the shortest decimal that round-trips to `x`, so that
/// 0.9 becomes 9/10 rather than its binary expansion.
Rational rational_from_double(double x);

/// Integers print bare, fractions as "p/q".
std::string to_string(const Rational& q);

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
  static double abs(double x) { return std::fabs(x); }
  static bool is_finite(double x) { return std::isfinite(x); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static Rational from_double(double x) { return rational_from_double(x); }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static bool is_finite(const Rational&) { return true; }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

}  // namespace cpl
