// Copyright 2026 The hdswap Authors
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

#ifndef HDSWAP_BACKEND_HPP
#define HDSWAP_BACKEND_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

#include "hdswap/amplitude.hpp"

namespace hdswap {

enum class Backend { kExact, kFloat };

using FloatAmplitude = std::complex<double>;

/// Uniform arithmetic surface over the exact ring and complex<double>.
template <class A>
struct AmplitudeTraits;

template <>
struct AmplitudeTraits<Amplitude> {
    using Probability = Rational;
    static constexpr bool kExact = true;

    static Amplitude zero() { return {}; }
    static Amplitude one() { return Amplitude::one(); }
    static Amplitude imag_unit() { return Amplitude::imag_unit(); }
    static Amplitude inv_sqrt2() { return Amplitude::inv_sqrt2(); }
    static Amplitude from_int(std::int64_t n) { return from_integer(n); }
    static Amplitude conj(const Amplitude &a) { return hdswap::conj(a); }
    static bool is_zero(const Amplitude &a) { return a.is_zero(); }
    static bool equal(const Amplitude &a, const Amplitude &b) { return a == b; }
    static Rational norm(const Amplitude &a) { return abs_squared(a); }
    static bool is_zero(const Rational &p) { return p == 0; }
    static bool equal(const Rational &p, const Rational &q) { return p == q; }
    static Rational probability_from_int(std::int64_t n) { return Rational(n); }

    /// sqrt(n) when it lies in the ring; throws otherwise.
    static Amplitude sqrt_of(std::uint64_t n);
    /// 1/sqrt(n) when it lies in the ring; throws otherwise.
    static Amplitude inv_sqrt_of(std::uint64_t n);
};

template <>
struct AmplitudeTraits<FloatAmplitude> {
    using Probability = double;
    static constexpr bool kExact = false;
    static constexpr double kTolerance = 1e-12;

    static FloatAmplitude zero() { return {0.0, 0.0}; }
    static FloatAmplitude one() { return {1.0, 0.0}; }
    static FloatAmplitude imag_unit() { return {0.0, 1.0}; }
    static FloatAmplitude inv_sqrt2() { return {M_SQRT1_2, 0.0}; }
    static FloatAmplitude from_int(std::int64_t n) { return {static_cast<double>(n), 0.0}; }
    static FloatAmplitude conj(const FloatAmplitude &a) { return std::conj(a); }
    static bool is_zero(const FloatAmplitude &a) { return std::abs(a) <= kTolerance; }
    static bool equal(const FloatAmplitude &a, const FloatAmplitude &b) { return std::abs(a - b) <= 1e-9; }
    static double norm(const FloatAmplitude &a) { return std::norm(a); }
    static bool is_zero(double p) { return std::abs(p) <= kTolerance; }
    static bool equal(double p, double q) { return std::abs(p - q) <= 1e-9; }
    static double probability_from_int(std::int64_t n) { return static_cast<double>(n); }
    static FloatAmplitude sqrt_of(std::uint64_t n) { return {std::sqrt(static_cast<double>(n)), 0.0}; }
    static FloatAmplitude inv_sqrt_of(std::uint64_t n) { return {1.0 / std::sqrt(static_cast<double>(n)), 0.0}; }
};

/// Decimal rendering of a probability in either backend.
std::string probability_to_string(const Rational &p);
std::string probability_to_string(double p);

}  // namespace hdswap

#endif  // HDSWAP_BACKEND_HPP
