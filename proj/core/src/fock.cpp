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

#include "hdswap/fock.hpp"

#include <algorithm>
#include <sstream>

namespace hdswap {

std::string to_string(const ModeCell &cell) {
    return cell.spatial + ":" + std::to_string(cell.internal);
}

OccupationVector::OccupationVector(std::initializer_list<Entry> entries) {
    for (const auto &[cell, n] : entries) {
        add(cell, n);
    }
}

void OccupationVector::add(const ModeCell &cell, int count) {
    if (count < 0) {
        throw std::invalid_argument("negative photon count for " + to_string(cell));
    }
    if (count == 0) {
        return;
    }
    auto it = std::lower_bound(entries_.begin(), entries_.end(), cell,
                               [](const Entry &e, const ModeCell &c) { return e.first < c; });
    if (it != entries_.end() && it->first == cell) {
        it->second += count;
    } else {
        entries_.insert(it, {cell, count});
    }
    total_ += count;
}

int OccupationVector::count(const ModeCell &cell) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), cell,
                               [](const Entry &e, const ModeCell &c) { return e.first < c; });
    return it != entries_.end() && it->first == cell ? it->second : 0;
}

int OccupationVector::spatial_count(const std::string &spatial) const {
    int n = 0;
    for (const auto &[cell, c] : entries_) {
        if (cell.spatial == spatial) {
            n += c;
        }
    }
    return n;
}

std::set<std::string> OccupationVector::spatial_modes() const {
    std::set<std::string> out;
    for (const auto &[cell, c] : entries_) {
        out.insert(cell.spatial);
    }
    return out;
}

OccupationVector OccupationVector::restricted(const std::function<bool(const std::string &)> &keep) const {
    OccupationVector out;
    for (const auto &[cell, c] : entries_) {
        if (keep(cell.spatial)) {
            out.entries_.push_back({cell, c});
            out.total_ += c;
        }
    }
    return out;
}

OccupationVector OccupationVector::merged(const OccupationVector &other) const {
    OccupationVector out = *this;
    for (const auto &[cell, c] : other.entries_) {
        out.add(cell, c);
    }
    return out;
}

std::uint64_t OccupationVector::factorial_weight() const {
    std::uint64_t w = 1;
    for (const auto &[cell, c] : entries_) {
        for (int f = 2; f <= c; ++f) {
            w *= static_cast<std::uint64_t>(f);
        }
    }
    return w;
}

std::string to_string(const OccupationVector &occ) {
    if (occ.empty()) {
        return "|vac>";
    }
    std::ostringstream out;
    bool first = true;
    for (const auto &[cell, c] : occ.entries()) {
        out << (first ? "" : " ") << to_string(cell);
        if (c != 1) {
            out << "^" << c;
        }
        first = false;
    }
    return out.str();
}

namespace {

// sqrt(den/num) of a positive rational when it is an exact amplitude.
bool exact_inverse_root(const Rational &norm_squared, Amplitude &out) {
    BigInt num = boost::multiprecision::numerator(norm_squared);
    BigInt den = boost::multiprecision::denominator(norm_squared);
    std::int64_t a = 0;
    std::int64_t b = 0;
    while (!boost::multiprecision::bit_test(num, 0)) {
        num >>= 1;
        ++a;
    }
    while (!boost::multiprecision::bit_test(den, 0)) {
        den >>= 1;
        ++b;
    }
    if (num != 1) {
        return false;
    }
    BigInt root = boost::multiprecision::sqrt(den);
    if (root * root != den) {
        return false;
    }
    std::int64_t e = b - a;  // value = root * 2^(e/2)
    if (e >= 0) {
        out = e % 2 == 0 ? Amplitude(root << (e / 2), 0, 0) : Amplitude(root << ((e + 1) / 2), 0, 1);
    } else {
        out = Amplitude(root, 0, static_cast<std::uint32_t>(-e));
    }
    return true;
}

}  // namespace

Normalized<Amplitude> normalize(const PureState &s) {
    Rational n2 = s.norm_squared();
    if (n2 == 0) {
        throw std::invalid_argument("cannot normalize the zero state");
    }
    Amplitude factor;
    if (!exact_inverse_root(n2, factor)) {
        return {s, n2, false};
    }
    return {s.scaled(factor), n2, true};
}

Normalized<FloatAmplitude> normalize(const FloatState &s) {
    double n2 = s.norm_squared();
    if (n2 <= AmplitudeTraits<FloatAmplitude>::kTolerance) {
        throw std::invalid_argument("cannot normalize the zero state");
    }
    return {s.scaled(FloatAmplitude(1.0 / std::sqrt(n2), 0.0)), n2, true};
}

FloatState to_float(const PureState &s) {
    FloatState out(s.convention());
    out.declare_modes(s.modes());
    for (const auto &[occ, amp] : s.terms()) {
        out.add_term(occ, amp.to_complex());
    }
    return out;
}

}  // namespace hdswap
