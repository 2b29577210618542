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

#include "hdswap/amplitude.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace hdswap {

Amplitude::Amplitude(BigInt re, BigInt im, std::uint32_t half_denom)
    : re_(std::move(re)), im_(std::move(im)), k_(half_denom) {
    canonicalize();
}

void Amplitude::canonicalize() {
    if (is_zero()) {
        k_ = 0;
        return;
    }
    while (k_ >= 2 && !boost::multiprecision::bit_test(re_, 0) && !boost::multiprecision::bit_test(im_, 0)) {
        re_ >>= 1;
        im_ >>= 1;
        k_ -= 2;
    }
}

Amplitude Amplitude::quarter_turn(int quarter_turns) {
    switch (((quarter_turns % 4) + 4) % 4) {
        case 0:
            return Amplitude(1, 0);
        case 1:
            return Amplitude(0, 1);
        case 2:
            return Amplitude(-1, 0);
        default:
            return Amplitude(0, -1);
    }
}

Amplitude Amplitude::operator-() const {
    Amplitude r = *this;
    r.re_ = -r.re_;
    r.im_ = -r.im_;
    return r;
}

Amplitude &Amplitude::operator+=(const Amplitude &other) {
    if (other.is_zero()) {
        return *this;
    }
    if (is_zero()) {
        *this = other;
        return *this;
    }
    if ((k_ ^ other.k_) & 1u) {
        throw std::domain_error("amplitude sum mixes even and odd powers of 1/sqrt(2): " + to_string(*this) + " + " +
                                to_string(other));
    }
    if (k_ >= other.k_) {
        std::uint32_t shift = (k_ - other.k_) / 2;
        re_ += other.re_ << shift;
        im_ += other.im_ << shift;
    } else {
        std::uint32_t shift = (other.k_ - k_) / 2;
        re_ = (re_ << shift) + other.re_;
        im_ = (im_ << shift) + other.im_;
        k_ = other.k_;
    }
    canonicalize();
    return *this;
}

Amplitude &Amplitude::operator-=(const Amplitude &other) {
    return *this += -other;
}

Amplitude &Amplitude::operator*=(const Amplitude &other) {
    BigInt re = re_ * other.re_ - im_ * other.im_;
    BigInt im = re_ * other.im_ + im_ * other.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    k_ += other.k_;
    canonicalize();
    return *this;
}

std::complex<double> Amplitude::to_complex() const {
    double scale = std::pow(2.0, -static_cast<double>(k_) / 2.0);
    return {re_.convert_to<double>() * scale, im_.convert_to<double>() * scale};
}

Amplitude add(const Amplitude &x, const Amplitude &y) {
    return x + y;
}

Amplitude mul(const Amplitude &x, const Amplitude &y) {
    return x * y;
}

Amplitude conj(const Amplitude &x) {
    return Amplitude(x.re(), -x.im(), x.half_denom());
}

Rational abs_squared(const Amplitude &x) {
    BigInt num = x.re() * x.re() + x.im() * x.im();
    BigInt den = BigInt(1) << x.half_denom();
    return Rational(num, den);
}

Amplitude from_integer(std::int64_t n) {
    return Amplitude(BigInt(n), 0, 0);
}

std::string to_string(const Rational &r) {
    std::ostringstream out;
    out << boost::multiprecision::numerator(r);
    if (boost::multiprecision::denominator(r) != 1) {
        out << "/" << boost::multiprecision::denominator(r);
    }
    return out.str();
}

std::string to_string(const Amplitude &a) {
    std::ostringstream out;
    out << "(" << a.re();
    if (a.im() >= 0) {
        out << "+";
    }
    out << a.im() << "i)";
    if (a.half_denom() != 0) {
        if (a.half_denom() % 2 == 0) {
            out << "/2^" << a.half_denom() / 2;
        } else {
            out << "/2^(" << a.half_denom() << "/2)";
        }
    }
    return out.str();
}

Rational parse_rational(const std::string &text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(BigInt(text));
        }
        BigInt den(text.substr(slash + 1));
        if (den.is_zero()) {
            throw std::invalid_argument("zero denominator in rational: " + text);
        }
        return Rational(BigInt(text.substr(0, slash)), den);
    } catch (const std::runtime_error &) {
        throw std::invalid_argument("not a rational: " + text);
    }
}

double to_double(const Rational &r) {
    return r.convert_to<double>();
}

}  // namespace hdswap
