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

#ifndef HDSWAP_OPTICS_HPP
#define HDSWAP_OPTICS_HPP

#include <array>
#include <set>
#include <string>
#include <vector>

#include "hdswap/fock.hpp"

namespace hdswap {

/// 50:50 splitter. A photon entering `in1` transmits to `out1` with amplitude
/// 1/sqrt(2) and reflects to `out2` with amplitude i/sqrt(2); `in2` mirrors
/// this (transmit to `out2`, reflect to `out1`). Internal modes pass through.
struct BeamSplitter {
    std::string in1;
    std::string in2;
    std::string out1;
    std::string out2;

    bool operator==(const BeamSplitter &) const = default;
};

/// Feed-forward network of splitters with terminal roles for its output modes.
struct Circuit {
    std::vector<std::string> modes;
    std::vector<BeamSplitter> elements;
    std::vector<std::string> detected;
    std::vector<std::string> kept;

    /// Throws std::invalid_argument on broken wiring.
    void validate() const;
    /// Modes alive after the last element, sorted.
    std::set<std::string> output_modes() const;
    /// Output pairs of the final splitter on each chain, for flexible heralding.
    std::vector<std::array<std::string, 2>> terminal_pairs() const;

    bool operator==(const Circuit &) const = default;
};

template <class A>
BasicState<A> apply_beam_splitter(const BasicState<A> &s, const BeamSplitter &bs) {
    using Traits = AmplitudeTraits<A>;
    if (s.convention() != Convention::kMonomial) {
        throw std::invalid_argument("apply_beam_splitter needs a MONOMIAL state; convert first");
    }
    if (bs.in1 == bs.in2 || bs.out1 == bs.out2) {
        throw std::invalid_argument("beam splitter needs two distinct inputs and two distinct outputs");
    }
    for (const auto &m : {bs.in1, bs.in2}) {
        if (s.modes().count(m) == 0) {
            throw std::invalid_argument("beam splitter input '" + m + "' is not a mode of the state");
        }
    }
    std::set<std::string> modes = s.modes();
    modes.erase(bs.in1);
    modes.erase(bs.in2);
    for (const auto &m : {bs.out1, bs.out2}) {
        if (!modes.insert(m).second) {
            throw std::invalid_argument("beam splitter output '" + m + "' collides with a live mode");
        }
    }

    const std::array<A, 4> turns = {Traits::one(), Traits::imag_unit(), -Traits::one(), -Traits::imag_unit()};
    std::vector<A> scale = {Traits::one()};

    BasicState<A> out(Convention::kMonomial);
    out.declare_modes(modes);
    struct Photon {
        bool first;
        int internal;
    };
    std::vector<Photon> active;
    for (const auto &[occ, amp] : s.terms()) {
        OccupationVector passive;
        active.clear();
        for (const auto &[cell, n] : occ.entries()) {
            bool first = cell.spatial == bs.in1;
            if (first || cell.spatial == bs.in2) {
                for (int c = 0; c < n; ++c) {
                    active.push_back({first, cell.internal});
                }
            } else {
                passive.add(cell, n);
            }
        }
        const std::size_t n = active.size();
        while (scale.size() <= n) {
            scale.push_back(scale.back() * Traits::inv_sqrt2());
        }
        const A base = amp * scale[n];
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            OccupationVector next = passive;
            int reflections = 0;
            for (std::size_t p = 0; p < n; ++p) {
                bool reflect = (mask >> p) & 1u;
                reflections += reflect;
                const std::string &target = active[p].first == reflect ? bs.out2 : bs.out1;
                next.add(ModeCell{target, active[p].internal});
            }
            out.add_term(next, base * turns[reflections % 4]);
        }
    }
    return out;
}

template <class A>
BasicState<A> apply_circuit(const BasicState<A> &s, const Circuit &c) {
    c.validate();
    BasicState<A> current = s;
    for (const auto &bs : c.elements) {
        current = apply_beam_splitter(current, bs);
    }
    return current;
}

}  // namespace hdswap

#endif  // HDSWAP_OPTICS_HPP
