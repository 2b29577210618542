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

#include "hdswap/backend.hpp"

#include <iomanip>
#include <sstream>

namespace hdswap {

namespace {

// n = 2^twos * odd.
std::uint32_t split_twos(BigInt &odd) {
    std::uint32_t twos = 0;
    while (!odd.is_zero() && !boost::multiprecision::bit_test(odd, 0)) {
        odd >>= 1;
        ++twos;
    }
    return twos;
}

BigInt exact_isqrt(const BigInt &n, bool &ok) {
    BigInt root = boost::multiprecision::sqrt(n);
    ok = root * root == n;
    return root;
}

}  // namespace

Amplitude AmplitudeTraits<Amplitude>::sqrt_of(std::uint64_t n) {
    if (n == 0) {
        return {};
    }
    BigInt odd = n;
    std::uint32_t twos = split_twos(odd);
    bool ok = false;
    BigInt root = exact_isqrt(odd, ok);
    if (!ok) {
        throw std::domain_error("sqrt(" + std::to_string(n) + ") is not an exact amplitude");
    }
    // sqrt(2^twos) = 2^(twos/2) for even twos, 2^((twos+1)/2) * 2^(-1/2) for odd.
    if (twos % 2 == 0) {
        return Amplitude(root << (twos / 2), 0, 0);
    }
    return Amplitude(root << ((twos + 1) / 2), 0, 1);
}

Amplitude AmplitudeTraits<Amplitude>::inv_sqrt_of(std::uint64_t n) {
    if (n == 0) {
        throw std::domain_error("1/sqrt(0)");
    }
    BigInt odd = n;
    std::uint32_t twos = split_twos(odd);
    if (odd != 1) {
        throw std::domain_error("1/sqrt(" + std::to_string(n) + ") is not an exact amplitude");
    }
    return Amplitude(1, 0, twos);
}

std::string probability_to_string(const Rational &p) {
    return to_string(p);
}

std::string probability_to_string(double p) {
    std::ostringstream out;
    out << std::setprecision(17) << p;
    return out.str();
}

}  // namespace hdswap
