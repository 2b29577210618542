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

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <numeric>

#include "hdswap/measure.hpp"
#include "hdswap/protocol.hpp"

namespace hdswap {
namespace {

OccupationVector pair_occ(int k, int j, const std::string &m, const std::string &n) { return two_photon(k, j, m, n); }

TEST(Config, Validation) {
    ProtocolConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.dimension = 7;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.dimension = 4;
    cfg.variant = InitialVariant::kA2;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.variant = InitialVariant::kStandard;
    cfg.dimension = 6;
    cfg.symmetric_ancilla = true;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = ProtocolConfig{};
    cfg.ancilla_radians = 0.3;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.backend = Backend::kFloat;
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_DOUBLE_EQ(cfg.phase_radians(), 0.3);
}

TEST(Config, QuarterTurnFolding) {
    ProtocolConfig cfg;
    cfg.ancilla_radians = std::numbers::pi;
    EXPECT_EQ(cfg.exact_quarter_turns(), 2);
    cfg.ancilla_radians = -std::numbers::pi / 2;
    EXPECT_EQ(cfg.exact_quarter_turns(), 3);
    cfg.ancilla_radians.reset();
    cfg.ancilla_quarter_turns = 5;
    EXPECT_EQ(cfg.exact_quarter_turns(), 1);
}

TEST(Config, Parsing) {
    EXPECT_EQ(parse_detector_model("pnr"), DetectorModel::kPnr);
    EXPECT_EQ(parse_herald_assignment("flexible"), HeraldAssignment::kFlexible);
    EXPECT_EQ(parse_initial_variant("A2"), InitialVariant::kA2);
    EXPECT_EQ(parse_backend("float"), Backend::kFloat);
    EXPECT_THROW(parse_detector_model("spad"), std::invalid_argument);
    EXPECT_THROW(parse_backend("gpu"), std::invalid_argument);
    ProtocolConfig d3;
    d3.dimension = 3;
    EXPECT_EQ(d3.effective_variant(), InitialVariant::kA1);
}

TEST(Singlet, DefinitionAndAntisymmetry) {
    PureState s = bell_singlet<Amplitude>(1, 2, "a", "d");
    EXPECT_EQ(s.amplitude(pair_occ(1, 2, "a", "d")), Amplitude::inv_sqrt2());
    EXPECT_EQ(s.amplitude(pair_occ(2, 1, "a", "d")), -Amplitude::inv_sqrt2());
    EXPECT_EQ(inner_product(s, s), Amplitude::one());
    EXPECT_TRUE((bell_singlet<Amplitude>(2, 1, "a", "d") + s).is_zero());
    EXPECT_THROW(bell_singlet<Amplitude>(3, 3, "a", "d"), std::invalid_argument);
    EXPECT_THROW(bell_singlet<Amplitude>(1, 2, "a", "a"), std::invalid_argument);
    EXPECT_EQ(numeric_render(s), "(|1,2⟩−|2,1⟩)/√2");
}

TEST(InitialState, FourDimensional) {
    PureState s = initial_state<Amplitude>(4, "a", "b");
    EXPECT_EQ(s.size(), 4u);
    for (int k = 1; k <= 4; ++k) {
        EXPECT_EQ(s.amplitude(pair_occ(k, k, "a", "b")), Amplitude(1, 0, 2));
    }
    EXPECT_EQ(s.norm_squared(), Rational(1));
}

TEST(InitialState, SixDimensional) {
    PureState s = initial_state<Amplitude>(6, "a", "b");
    EXPECT_EQ(s.size(), 6u);
    EXPECT_EQ(s.norm_squared(), Rational(6));
    FloatState f = initial_state<FloatAmplitude>(6, "a", "b");
    for (const auto &[o, amp] : f.terms()) {
        EXPECT_NEAR(std::abs(amp - 1.0 / std::sqrt(6.0)), 0.0, 1e-15);
    }
    PureState five = initial_state<Amplitude>(5, "a", "b");
    EXPECT_EQ(five.size(), 5u);
}

TEST(InitialState, ThreeDimensionalVariants) {
    PureState a1 = initial_state<Amplitude>(3, "a", "b", InitialVariant::kA1);
    EXPECT_EQ(a1.size(), 3u);
    for (auto [k, j] : {std::pair{1, 2}, {2, 1}, {3, 4}}) {
        EXPECT_EQ(a1.amplitude(pair_occ(k, j, "a", "b")), Amplitude::one());
    }
    PureState a2 = initial_state<Amplitude>(3, "a", "b", InitialVariant::kA2);
    for (auto [k, j] : {std::pair{1, 1}, {2, 2}, {3, 4}}) {
        EXPECT_EQ(a2.amplitude(pair_occ(k, j, "a", "b")), Amplitude::one());
    }
    EXPECT_THROW(initial_state<Amplitude>(2, "a", "b"), std::invalid_argument);
}

TEST(Ancilla, PhaseAndForms) {
    PureState plain = ancilla_state(0, "e", "f");
    EXPECT_EQ(plain.amplitude(pair_occ(1, 2, "e", "f")), Amplitude::inv_sqrt2());
    EXPECT_EQ(plain.amplitude(pair_occ(3, 4, "e", "f")), Amplitude::inv_sqrt2());
    PureState flipped = ancilla_state(2, "e", "f");
    EXPECT_EQ(flipped.amplitude(pair_occ(3, 4, "e", "f")), -Amplitude::inv_sqrt2());
    PureState quarter = ancilla_state(1, "e", "f");
    EXPECT_EQ(quarter.amplitude(pair_occ(3, 4, "e", "f")), Amplitude(0, 1, 1));

    PureState sym = ancilla_state(0, "e", "f", true);
    EXPECT_EQ(sym.size(), 4u);
    EXPECT_EQ(sym.norm_squared(), Rational(1));
    EXPECT_EQ(hyper_render(sym), "(|H(te),V(te)⟩+|V(te),H(te)⟩+|H(tl),V(tl)⟩+|V(tl),H(tl)⟩)/2");

    PureState alt = alternative_ancilla("e", "f");
    EXPECT_EQ(alt.amplitude(pair_occ(1, 4, "e", "f")), Amplitude::inv_sqrt2());
    EXPECT_EQ(alt.amplitude(pair_occ(2, 3, "e", "f")), Amplitude::inv_sqrt2());

    FloatState f = ancilla_state_float(0.7, "e", "f");
    EXPECT_NEAR(std::arg(f.amplitude(pair_occ(3, 4, "e", "f"))), 0.7, 1e-12);

    auto [a1, a2] = ancilla_pair(0, "e1", "f1", "e2", "f2");
    EXPECT_EQ(a1.amplitude(pair_occ(1, 2, "e1", "f1")), Amplitude::inv_sqrt2());
    EXPECT_EQ(a2.amplitude(pair_occ(5, 6, "e2", "f2")), Amplitude::inv_sqrt2());
    EXPECT_EQ(a2.amplitude(pair_occ(3, 4, "e2", "f2")), Amplitude::inv_sqrt2());
}

TEST(Circuits, Shapes) {
    ProtocolConfig cfg;
    Circuit c4 = build_circuit(cfg);
    EXPECT_EQ(c4.elements.size(), 3u);
    EXPECT_EQ(c4.kept, (std::vector<std::string>{"a", "d"}));
    std::vector<std::string> detected = c4.detected;
    std::sort(detected.begin(), detected.end());
    EXPECT_EQ(detected, (std::vector<std::string>{"b''", "c''", "e'", "f'"}));
    EXPECT_EQ(c4.terminal_pairs().size(), 2u);

    cfg.dimension = 3;
    EXPECT_EQ(build_circuit(cfg), c4);

    cfg.dimension = 6;
    Circuit c6 = build_circuit(cfg);
    EXPECT_EQ(c6.elements.size(), 5u);
    EXPECT_EQ(c6.detected.size(), 6u);
    EXPECT_EQ(c6.output_modes().size(), 8u);
    EXPECT_EQ(composite_input(cfg).photon_number(), 8);
}

TEST(Circuits, CompositeInput) {
    ProtocolConfig cfg;
    PureState in = composite_input(cfg);
    EXPECT_EQ(in.size(), 32u);
    EXPECT_EQ(in.norm_squared(), Rational(1));
    EXPECT_EQ(in.photon_number(), 6);
    FloatState fin = composite_input_float(cfg);
    EXPECT_TRUE(to_float(in).same_terms(fin));
}

TEST(Targets, Ranks) {
    PureState t4 = swap_target(4, "a", "d");
    EXPECT_EQ(numeric_render(t4), "(|1,2⟩−|2,1⟩+|3,4⟩−|4,3⟩)/2");
    EXPECT_EQ(numeric_render(swap_target(4, "a", "d", 2)), "(|1,2⟩−|2,1⟩−|3,4⟩+|4,3⟩)/2");
    EXPECT_EQ(numeric_render(swap_target(4, "a", "d", 1)), "(|1,2⟩−|2,1⟩+i|3,4⟩−i|4,3⟩)/2");
    EXPECT_EQ(numeric_render(swap_target(3, "a", "d")), "(|1,2⟩−|2,1⟩+|3,4⟩)/√3");
    EXPECT_EQ(numeric_render(swap_target(6, "a", "d", 1)), "(|1,2⟩−|2,1⟩+i|3,4⟩−i|4,3⟩+|5,6⟩−|6,5⟩)/√6");
    EXPECT_EQ(maximal_entanglement_rank(swap_target(6, "a", "d"), {"a", "d"}), 6);
    EXPECT_EQ(maximal_entanglement_rank(swap_target(5, "a", "d"), {"a", "d"}), 5);
    EXPECT_THROW(swap_target(7, "a", "d"), std::invalid_argument);
}

TEST(Hyper, Dictionary) {
    EXPECT_EQ(hyper_label(TimeBin::kEarly, Polarization::kH), 1);
    EXPECT_EQ(hyper_label(TimeBin::kEarly, Polarization::kV), 2);
    EXPECT_EQ(hyper_label(TimeBin::kLate, Polarization::kH), 3);
    EXPECT_EQ(hyper_label(TimeBin::kLate, Polarization::kV), 4);
    for (int label = 1; label <= 4; ++label) {
        auto [t, p] = hyper_decode(label);
        EXPECT_EQ(hyper_label(t, p), label);
    }
    EXPECT_THROW(hyper_decode(5), std::invalid_argument);
    EXPECT_EQ(hyper_symbol(4), "V(tl)");
}

TEST(Hyper, Rendering) {
    EXPECT_EQ(hyper_render(initial_state<Amplitude>(4, "m", "n")),
              "(|H(te),H(te)⟩+|V(te),V(te)⟩+|H(tl),H(tl)⟩+|V(tl),V(tl)⟩)/2");
    EXPECT_EQ(hyper_render(bell_singlet<Amplitude>(1, 2, "a", "d")), "(|H(te),V(te)⟩−|V(te),H(te)⟩)/√2");
    EXPECT_THROW(hyper_render(initial_state<Amplitude>(6, "a", "b")), std::invalid_argument);
    EXPECT_EQ(numeric_render(PureState()), "0");
}

// Relabels internal modes by perm (1-based values) on every cell.
PureState relabel(const PureState &s, const std::array<int, 6> &perm) {
    PureState out(s.convention());
    out.declare_modes(s.modes());
    for (const auto &[o, amp] : s.terms()) {
        OccupationVector next;
        for (const auto &[cell, n] : o.entries()) {
            next.add(ModeCell{cell.spatial, perm[static_cast<std::size_t>(cell.internal - 1)]}, n);
        }
        out.add_term(next, amp);
    }
    return out;
}

TEST(ProtocolProperty, InitialStateInvariantUnderLabelPermutation) {
    std::array<int, 6> perm = {1, 2, 3, 4, 5, 6};
    do {
        for (int d : {4, 6}) {
            if (d == 4 && (perm[4] != 5 || perm[5] != 6)) {
                continue;
            }
            PureState s = initial_state<Amplitude>(d, "a", "b");
            ASSERT_TRUE(relabel(s, perm).same_terms(s));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(ProtocolProperty, ClassificationCommutesWithRelabeling) {
    ProtocolConfig cfg;
    Circuit circuit = build_circuit(cfg);
    std::array<std::string, 2> pair = {"a", "d"};
    auto class_events = [&](const PureState &input) {
        auto outcomes = enumerate_outcomes(apply_circuit(input, circuit), circuit.detected, cfg.detector);
        std::map<HeraldClass, std::size_t> events;
        for (const auto &row : classify(outcomes, pair, circuit.detected, cfg)) {
            events[row.cls] += 1;
        }
        return events;
    };
    PureState input = composite_input(cfg);
    auto reference = class_events(input);
    std::array<std::array<int, 6>, 4> perms = {{{2, 1, 3, 4, 5, 6}, {3, 4, 1, 2, 5, 6}, {4, 3, 2, 1, 5, 6},
                                                {2, 3, 4, 1, 5, 6}}};
    for (const auto &perm : perms) {
        EXPECT_EQ(class_events(relabel(input, perm)), reference);
    }
}

}  // namespace
}  // namespace hdswap
