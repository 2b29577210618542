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

#include <cmath>
#include <numbers>

#include "hdswap/measure.hpp"

namespace hdswap {
namespace {

const std::array<std::string, 2> kAd = {"a", "d"};

ProtocolConfig config(int d, DetectorModel model = DetectorModel::kThreshold,
                      HeraldAssignment heralds = HeraldAssignment::kFixed) {
    ProtocolConfig cfg;
    cfg.dimension = d;
    cfg.detector = model;
    cfg.heralds = heralds;
    return cfg;
}

const HeraldRow<Amplitude> *find_row(const HeraldReport<Amplitude> &r, const std::string &pattern,
                                     const std::array<std::string, 2> &pair = kAd) {
    DetectionPattern p = parse_pattern(pattern, r.config.detector);
    for (const auto &row : r.rows) {
        if (row.pattern == p && row.kept_pair == pair) {
            return &row;
        }
    }
    return nullptr;
}

TEST(Pattern, ParseAndPrint) {
    DetectionPattern p = parse_pattern("b'':3, e':1,f':4,c'':2", DetectorModel::kPnr);
    EXPECT_EQ(p.outcome.size(), 4u);
    EXPECT_EQ(p.outcome.at(ModeCell{"e'", 1}), 1);
    EXPECT_EQ(to_string(p), "b'':3,c'':2,e':1,f':4");
    EXPECT_EQ(parse_pattern(to_string(p), DetectorModel::kPnr), p);

    DetectionPattern bunched = parse_pattern("b'':1^2,b'':2", DetectorModel::kPnr);
    EXPECT_EQ(bunched.outcome.at(ModeCell{"b''", 1}), 2);
    EXPECT_EQ(to_string(bunched), "b'':1^2,b'':2");
    EXPECT_EQ(parse_pattern("b'':1,b'':1", DetectorModel::kPnr), parse_pattern("b'':1^2", DetectorModel::kPnr));
    DetectionPattern clicks = parse_pattern("b'':1^2,b'':2", DetectorModel::kThreshold);
    EXPECT_EQ(clicks.outcome.at(ModeCell{"b''", 1}), 1);
    EXPECT_EQ(clicks, bunched.collapsed());
}

TEST(Pattern, Malformed) {
    for (const char *bad : {"", "b''", "b'':x", "b'':7", ":1", "b'':1^0", "b'':0"}) {
        EXPECT_THROW(parse_pattern(bad, DetectorModel::kPnr), std::invalid_argument) << bad;
    }
}

TEST(Pattern, CoincidencePredicates) {
    DetectionPattern p = parse_pattern("b'':1,b'':2,e':3", DetectorModel::kPnr);
    EXPECT_TRUE(p.all_click({"b''", "e'"}));
    EXPECT_FALSE(p.all_click({"b''", "e'", "f'"}));
    EXPECT_FALSE(p.singly_occupied({"b''", "e'"}));
    EXPECT_TRUE(p.singly_occupied({"e'"}));
}

TEST(Enumerate, HongOuMandelPair) {
    PureState s = PureState::basis(OccupationVector{{{"b", 1}, 1}, {{"c", 1}, 1}}, Convention::kMonomial);
    PureState out = apply_beam_splitter(s, BeamSplitter{"b", "c", "b'", "c'"});
    auto outcomes = enumerate_outcomes(out, {"b'", "c'"}, DetectorModel::kPnr);
    ASSERT_EQ(outcomes.size(), 2u);
    for (const auto &o : outcomes) {
        EXPECT_EQ(o.probability, Rational(1, 2));
        EXPECT_EQ(o.coefficient_weight, Rational(1, 4));
    }
    auto clicks = enumerate_outcomes(out, {"b'", "c'"}, DetectorModel::kThreshold);
    EXPECT_EQ(clicks.size(), 2u);
}

TEST(Enumerate, Errors) {
    PureState s = initial_state<Amplitude>(4, "a", "b");
    EXPECT_THROW(enumerate_outcomes(s, {}, DetectorModel::kPnr), std::invalid_argument);
    EXPECT_THROW(enumerate_outcomes(s, {"z"}, DetectorModel::kPnr), std::invalid_argument);
    PureState zero(Convention::kMonomial);
    zero.declare_mode("a");
    EXPECT_THROW(enumerate_outcomes(zero, {"a"}, DetectorModel::kPnr), std::invalid_argument);
}

TEST(Enumerate, ThresholdMergesSignaturesIncoherently) {
    ProtocolConfig cfg = config(4);
    Circuit c = build_circuit(cfg);
    PureState out = protocol_output(cfg);
    auto pnr = enumerate_outcomes(out, c.detected, DetectorModel::kPnr);
    auto thr = enumerate_outcomes(out, c.detected, DetectorModel::kThreshold);
    EXPECT_LT(thr.size(), pnr.size());
    std::map<DetectionPattern, Rational> folded;
    for (const auto &o : pnr) {
        folded[o.pattern.collapsed()] += o.probability;
    }
    bool merged = false;
    for (const auto &o : thr) {
        EXPECT_EQ(folded.at(o.pattern), o.probability);
        Rational sum = 0;
        for (const auto &comp : o.components) {
            sum += comp.probability;
            EXPECT_EQ(comp.signature.collapsed(), o.pattern);
        }
        EXPECT_EQ(sum, o.probability);
        merged = merged || o.components.size() > 1;
    }
    EXPECT_TRUE(merged);
}

TEST(Enumerate, CompletenessAcrossConfigurations) {
    std::vector<ProtocolConfig> configs;
    for (auto model : {DetectorModel::kThreshold, DetectorModel::kPnr}) {
        for (int turns = 0; turns < 4; ++turns) {
            ProtocolConfig cfg = config(4, model);
            cfg.ancilla_quarter_turns = turns;
            configs.push_back(cfg);
        }
        ProtocolConfig sym = config(4, model);
        sym.symmetric_ancilla = true;
        configs.push_back(sym);
        for (auto v : {InitialVariant::kA1, InitialVariant::kA2}) {
            ProtocolConfig d3 = config(3, model);
            d3.variant = v;
            configs.push_back(d3);
        }
    }
    for (const auto &cfg : configs) {
        Circuit c = build_circuit(cfg);
        PureState out = protocol_output(cfg);
        EXPECT_EQ(out.norm_squared(), composite_input(cfg).norm_squared());
        Rational total = 0;
        for (const auto &o : enumerate_outcomes(out, c.detected, cfg.detector)) {
            EXPECT_GT(o.probability, 0);
            total += o.probability;
        }
        EXPECT_EQ(total, Rational(1)) << "d=" << cfg.dimension << " " << to_string(cfg.detector);
    }
}

TEST(Heralds, FourDimensionalPattern) {
    auto report = run_protocol(config(4));
    const auto *row = find_row(report, "b'':3,e':1,f':4,c'':2");
    ASSERT_NE(row, nullptr);
    EXPECT_EQ(row->probability, Rational(1, 512));
    EXPECT_EQ(row->cls, HeraldClass::kSwap4D);
    EXPECT_EQ(row->fidelity, Rational(1));
    ASSERT_TRUE(row->heralded);
    EXPECT_EQ(fidelity(*row->heralded, swap_target(4, "a", "d")), Rational(1));
    EXPECT_EQ(numeric_render(row->heralded->scaled(-Amplitude::one())), "(|1,2⟩−|2,1⟩+|3,4⟩−|4,3⟩)/2");
}

TEST(Heralds, TwoDimensionalPattern) {
    auto report = run_protocol(config(4));
    const auto *row = find_row(report, "b'':2,e':1,f':1,c'':2");
    ASSERT_NE(row, nullptr);
    EXPECT_EQ(row->cls, HeraldClass::kSwap2D);
    EXPECT_EQ(fidelity(*row->heralded, bell_singlet<Amplitude>(1, 2, "a", "d")), Rational(1));
    EXPECT_EQ(numeric_render(*row->heralded), "(|1,2⟩−|2,1⟩)/√2");
}

TEST(Heralds, ForbiddenPatternIsAbsent) {
    auto report = run_protocol(config(4));
    EXPECT_EQ(find_row(report, "b'':1,e':1,f':1,c'':1"), nullptr);
}

TEST(Heralds, FourPatternsOnFixedOutputs) {
    auto report = run_protocol(config(4));
    std::set<std::string> found;
    for (const auto &row : report.rows) {
        if (row.cls == HeraldClass::kSwap4D) {
            EXPECT_EQ(row.probability, Rational(1, 512));
            found.insert(to_string(row.pattern));
        }
    }
    std::set<std::string> expected;
    for (const char *p : {"b'':3,e':1,f':4,c'':2", "b'':3,e':1,f':2,c'':4", "b'':1,e':3,f':4,c'':2",
                          "b'':1,e':3,f':2,c'':4"}) {
        expected.insert(to_string(parse_pattern(p, DetectorModel::kThreshold)));
    }
    EXPECT_EQ(found, expected);
    EXPECT_EQ(report.aggregates.at(HeraldClass::kSwap4D).probability, Rational(4, 512));
    EXPECT_EQ(report.aggregates.at(HeraldClass::kSwap2D).events, 48u);
    EXPECT_EQ(report.aggregates.at(HeraldClass::kSwap2D).probability, Rational(48, 1024));
}

TEST(Heralds, ThresholdSuccessRowsHaveUnitFidelity) {
    for (auto heralds : {HeraldAssignment::kFixed, HeraldAssignment::kFlexible}) {
        auto report = run_protocol(config(4, DetectorModel::kThreshold, heralds));
        for (const auto &row : report.rows) {
            if (row.cls != HeraldClass::kOther) {
                EXPECT_EQ(row.fidelity, Rational(1)) << to_string(row.pattern);
                EXPECT_TRUE(row.coincidence);
            }
        }
    }
}

TEST(Heralds, FlexibleOutputsAddEightPatterns) {
    auto report = run_protocol(config(4, DetectorModel::kThreshold, HeraldAssignment::kFlexible));
    std::map<std::array<std::string, 2>, int> per_pair;
    for (const auto &row : report.rows) {
        if (row.cls == HeraldClass::kSwap4D) {
            per_pair[row.kept_pair] += 1;
            EXPECT_EQ(row.herald_probability, Rational(1, 512));
        }
    }
    EXPECT_EQ(per_pair.size(), 3u);
    EXPECT_EQ(per_pair.at(kAd), 4);
    EXPECT_EQ(report.aggregates.at(HeraldClass::kSwap4D).events, 12u);
    EXPECT_EQ(report.aggregates.at(HeraldClass::kSwap4D).probability, Rational(12, 512));
}

TEST(Heralds, AggregatesEqualRowSums) {
    for (auto model : {DetectorModel::kThreshold, DetectorModel::kPnr}) {
        auto report = run_protocol(config(4, model, HeraldAssignment::kFlexible));
        std::map<HeraldClass, Rational> sums;
        std::map<HeraldClass, std::size_t> counts;
        for (const auto &row : report.rows) {
            sums[row.cls] += row.herald_probability;
            counts[row.cls] += 1;
        }
        for (const auto &[cls, agg] : report.aggregates) {
            EXPECT_EQ(agg.probability, sums[cls]);
            EXPECT_EQ(agg.events, counts[cls]);
        }
        EXPECT_EQ(report.total_probability, Rational(1));
    }
}

TEST(Heralds, PnrCounts) {
    auto report = run_protocol(config(4, DetectorModel::kPnr));
    const auto &four = report.aggregates.at(HeraldClass::kSwap4D);
    EXPECT_EQ(four.events, 16u);
    EXPECT_EQ(four.coefficient_weight, Rational(16, 512));
    const auto &two = report.aggregates.at(HeraldClass::kSwap2D);
    EXPECT_EQ(two.events, 552u);
    EXPECT_EQ(two.coefficient_weight, Rational(552, 1024));
    EXPECT_GT(two.probability, two.coefficient_weight);
}

TEST(Heralds, ThreeDimensionalAppendixState) {
    ProtocolConfig cfg = config(3);
    auto report = run_protocol(cfg);
    int successes = 0;
    for (const auto &row : report.rows) {
        if (row.cls == HeraldClass::kSwap3D) {
            ++successes;
            EXPECT_EQ(fidelity(*row.heralded, swap_target(3, "a", "d")), Rational(1));
        }
    }
    EXPECT_EQ(successes, 4);
}

TEST(Heralds, TargetsTrackTheAncillaPhase) {
    std::vector<ProtocolConfig> configs;
    for (int turns = 0; turns < 4; ++turns) {
        for (auto v : {InitialVariant::kA1, InitialVariant::kA2}) {
            ProtocolConfig d3 = config(3);
            d3.variant = v;
            d3.ancilla_quarter_turns = turns;
            configs.push_back(d3);
        }
        ProtocolConfig d4 = config(4, DetectorModel::kThreshold, HeraldAssignment::kFlexible);
        d4.ancilla_quarter_turns = turns;
        configs.push_back(d4);
    }
    for (const auto &cfg : configs) {
        auto report = run_protocol(cfg);
        int top = 0;
        for (const auto &row : report.rows) {
            if (schmidt_rank(row.cls) == cfg.dimension) {
                ++top;
                EXPECT_EQ(row.fidelity, Rational(1)) << cfg.dimension << " turns=" << cfg.ancilla_quarter_turns;
            }
        }
        EXPECT_GE(top, 4);
    }
}

TEST(Heralds, SymmetricAncillaKeepsTheFourPatterns) {
    ProtocolConfig plain = config(4);
    ProtocolConfig sym = config(4);
    sym.symmetric_ancilla = true;
    auto a = run_protocol(plain);
    auto b = run_protocol(sym);
    for (const auto &row : a.rows) {
        if (row.cls != HeraldClass::kSwap4D) {
            continue;
        }
        const auto *match = find_row(b, to_string(row.pattern));
        ASSERT_NE(match, nullptr);
        EXPECT_EQ(match->cls, HeraldClass::kSwap4D);
        EXPECT_EQ(fidelity(*match->heralded, *row.heralded), Rational(1));
    }
    // The symmetric form also heralds further rank-4 states at half the per-event weight.
    EXPECT_EQ(b.aggregates.at(HeraldClass::kSwap4D).events, 16u);
    EXPECT_EQ(b.aggregates.at(HeraldClass::kSwap4D).probability, Rational(16, 1024));
}

TEST(Fidelity, Examples) {
    PureState t4 = swap_target(4, "a", "d");
    EXPECT_EQ(fidelity(t4, t4), Rational(1));
    EXPECT_EQ(fidelity(bell_singlet<Amplitude>(1, 2, "a", "d"), t4), Rational(1, 2));
    EXPECT_EQ(fidelity(bell_singlet<Amplitude>(1, 2, "a", "d"), bell_singlet<Amplitude>(3, 4, "a", "d")), Rational(0));
    EXPECT_THROW(fidelity(PureState(), t4), std::invalid_argument);
}

TEST(Rank, MaximalEntanglement) {
    EXPECT_EQ(maximal_entanglement_rank(bell_singlet<Amplitude>(1, 2, "a", "d"), kAd), 2);
    EXPECT_EQ(maximal_entanglement_rank(swap_target(4, "a", "d", 1), kAd), 4);
    EXPECT_EQ(maximal_entanglement_rank(swap_target(3, "a", "d"), kAd), 3);
    PureState product = PureState::basis(two_photon(1, 2, "a", "d"), Convention::kMonomial);
    EXPECT_EQ(maximal_entanglement_rank(product, kAd), 1);
    PureState uneven(Convention::kMonomial);
    uneven.add_term(two_photon(1, 2, "a", "d"), Amplitude::one());
    uneven.add_term(two_photon(3, 4, "a", "d"), from_integer(2));
    EXPECT_EQ(maximal_entanglement_rank(uneven, kAd), 0);
    // Rank-2 Schmidt form in a rotated basis: |1>(|1>+|2>) + |2>(|1>-|2>).
    PureState rotated(Convention::kMonomial);
    rotated.add_term(two_photon(1, 1, "a", "d"), Amplitude::one());
    rotated.add_term(two_photon(1, 2, "a", "d"), Amplitude::one());
    rotated.add_term(two_photon(2, 1, "a", "d"), Amplitude::one());
    rotated.add_term(two_photon(2, 2, "a", "d"), -Amplitude::one());
    EXPECT_EQ(maximal_entanglement_rank(rotated, kAd), 2);
    EXPECT_EQ(maximal_entanglement_rank(PureState(), kAd), 0);
    PureState wrong = PureState::basis(two_photon(1, 2, "a", "a"), Convention::kMonomial);
    EXPECT_THROW(maximal_entanglement_rank(wrong, kAd), std::invalid_argument);
    EXPECT_EQ(maximal_entanglement_rank(to_float(rotated), kAd), 2);
    EXPECT_EQ(maximal_entanglement_rank(to_float(uneven), kAd), 0);
}

TEST(Decay, Values) {
    EXPECT_DOUBLE_EQ(fidelity_decay(1.0, 3), 1.0);
    EXPECT_DOUBLE_EQ(fidelity_decay(0.37, 0), 1.0);
    EXPECT_NEAR(fidelity_decay(0.9, 3), 0.729, 1e-15);
    EXPECT_NEAR(fidelity_decay(0.95, 5), 0.7737809375, 1e-15);
    EXPECT_THROW(fidelity_decay(1.01, 2), std::invalid_argument);
    EXPECT_THROW(fidelity_decay(-0.1, 2), std::invalid_argument);
    EXPECT_THROW(fidelity_decay(0.5, -1), std::invalid_argument);
    EXPECT_THROW(fidelity_decay(std::nan(""), 1), std::invalid_argument);
}

TEST(Decay, MonotoneInBothArguments) {
    for (double eta = 0.0; eta <= 1.0; eta += 0.05) {
        for (int n = 0; n < 12; ++n) {
            ASSERT_LE(fidelity_decay(eta, n + 1), fidelity_decay(eta, n));
            ASSERT_LE(fidelity_decay(eta, n), fidelity_decay(std::min(1.0, eta + 0.05), n));
        }
    }
}

TEST(Counts, DimensionFourAndThree) {
    EventCounts d4 = count_events(config(4));
    EXPECT_EQ(d4.full_configuration.success, 4u);
    EXPECT_EQ(d4.threshold_signature.success, 4u);
    EXPECT_EQ(d4.pnr_signature.success, 16u);
    EventCounts d3 = count_events(config(3));
    EXPECT_EQ(d3.full_configuration.total, 772u);
    EXPECT_EQ(d3.full_configuration.coincidence, 68u);
    EXPECT_EQ(d3.full_configuration.success, 4u);
    EXPECT_GE(d3.full_configuration.total, d3.pnr_signature.total);
    EXPECT_GE(d3.pnr_signature.total, d3.threshold_signature.total);
}

TEST(Gains, PnrDominatesThreshold) {
    for (auto heralds : {HeraldAssignment::kFixed, HeraldAssignment::kFlexible}) {
        auto gains = pnr_gains(config(4, DetectorModel::kThreshold, heralds));
        ASSERT_EQ(gains.size(), 2u);
        for (const auto &g : gains) {
            // Every class gains multi-photon-cell heralds, so the inequality is strict.
            EXPECT_GT(g.pnr.events, g.threshold.events);
            EXPECT_GT(g.pnr.probability, g.threshold.probability);
        }
    }
}

TEST(Backends, FloatAggregatesMatchExact) {
    std::vector<ProtocolConfig> configs = {config(4), config(4, DetectorModel::kPnr),
                                           config(4, DetectorModel::kPnr, HeraldAssignment::kFlexible), config(3)};
    for (int turns = 1; turns < 4; ++turns) {
        ProtocolConfig cfg = config(4);
        cfg.ancilla_quarter_turns = turns;
        configs.push_back(cfg);
    }
    for (const auto &cfg : configs) {
        auto exact = run_protocol(cfg);
        auto approx = run_protocol_float(cfg);
        ASSERT_EQ(exact.aggregates.size(), approx.aggregates.size());
        for (const auto &[cls, agg] : exact.aggregates) {
            const auto &f = approx.aggregates.at(cls);
            EXPECT_EQ(f.events, agg.events) << to_string(cls);
            EXPECT_NEAR(f.probability, to_double(agg.probability), 1e-12);
            EXPECT_NEAR(f.coefficient_weight, to_double(agg.coefficient_weight), 1e-12);
        }
        EXPECT_NEAR(approx.total_probability, 1.0, 1e-12);
    }
}

TEST(Backends, ArbitraryPhaseKeepsFourDimensionalHeralds) {
    ProtocolConfig cfg = config(4);
    cfg.backend = Backend::kFloat;
    cfg.ancilla_radians = 0.7;
    auto report = run_protocol_float(cfg);
    const auto &four = report.aggregates.at(HeraldClass::kSwap4D);
    EXPECT_EQ(four.events, 4u);
    EXPECT_NEAR(four.probability, 4.0 / 512.0, 1e-12);
    for (const auto &row : report.rows) {
        if (row.cls == HeraldClass::kSwap4D) {
            EXPECT_NEAR(row.fidelity, 1.0, 1e-12);
        }
    }
}

}  // namespace
}  // namespace hdswap
