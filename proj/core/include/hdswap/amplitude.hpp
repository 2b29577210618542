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

#ifndef HDSWAP_AMPLITUDE_HPP
#define HDSWAP_AMPLITUDE_HPP

#include <complex>
#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hdswap {

using BigInt = boost::multiprecision::cpp_int;

/// Reduced fraction num/den with den > 0. All probabilities are Rationals.
using Rational = boost::multiprecision::cpp_rational;

/// Exact complex number (re + i*im) * 2^(-k/2).
///
/// Values are kept canonical: zero is (0, 0, 0), and for k >= 2 the pair
/// (re, im) is never both even. The parity of k is therefore an invariant of
/// every nonzero value; two nonzero amplitudes of different parity have no
/// exact sum in this form and `add` rejects them.
class Amplitude {
   public:
    Amplitude() = default;
    Amplitude(BigInt re, BigInt im, std::uint32_t half_denom = 0);

    static Amplitude one() { return Amplitude(1, 0, 0); }
    static Amplitude imag_unit() { return Amplitude(0, 1, 0); }
    /// 1/sqrt(2).
    static Amplitude inv_sqrt2() { return Amplitude(1, 0, 1); }
    /// i^quarter_turns.
    static Amplitude quarter_turn(int quarter_turns);

    const BigInt &re() const { return re_; }
    const BigInt &im() const { return im_; }
    std::uint32_t half_denom() const { return k_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    Amplitude operator-() const;
    Amplitude &operator+=(const Amplitude &other);
    Amplitude &operator-=(const Amplitude &other);
    Amplitude &operator*=(const Amplitude &other);

    friend Amplitude operator+(Amplitude x, const Amplitude &y) { return x += y; }
    friend Amplitude operator-(Amplitude x, const Amplitude &y) { return x -= y; }
    friend Amplitude operator*(Amplitude x, const Amplitude &y) { return x *= y; }
    friend bool operator==(const Amplitude &, const Amplitude &) = default;

    std::complex<double> to_complex() const;

   private:
    void canonicalize();

    BigInt re_;
    BigInt im_;
    std::uint32_t k_ = 0;
};

Amplitude add(const Amplitude &x, const Amplitude &y);
Amplitude mul(const Amplitude &x, const Amplitude &y);
Amplitude conj(const Amplitude &x);

/// (re^2 + im^2) / 2^k, reduced.
Rational abs_squared(const Amplitude &x);

/// Amplitude equal to the integer n.
Amplitude from_integer(std::int64_t n);

/// "num/den", or "num" when den == 1.
std::string to_string(const Rational &r);
/// Human-readable form, e.g. "(1+1i)/2^(3/2)".
std::string to_string(const Amplitude &a);

/// Parses "num/den" or "num".
Rational parse_rational(const std::string &text);

double to_double(const Rational &r);

}  // namespace hdswap

#endif  // HDSWAP_AMPLITUDE_HPP
