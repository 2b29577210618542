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

#include "hdswap/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <tuple>
#include <sstream>

namespace hdswap {

std::string to_string(HeraldClass c) {
    switch (c) {
        case HeraldClass::kSwap2D:
            return "SWAP_2D";
        case HeraldClass::kSwap3D:
            return "SWAP_3D";
        case HeraldClass::kSwap4D:
            return "SWAP_4D";
        case HeraldClass::kSwap5D:
            return "SWAP_5D";
        case HeraldClass::kSwap6D:
            return "SWAP_6D";
        default:
            return "OTHER";
    }
}

HeraldClass parse_herald_class(const std::string &text) {
    for (int r = 2; r <= 6; ++r) {
        if (text == to_string(class_for_rank(r))) {
            return class_for_rank(r);
        }
    }
    if (text == "OTHER") {
        return HeraldClass::kOther;
    }
    throw std::invalid_argument("unknown herald class '" + text + "'");
}

int schmidt_rank(HeraldClass c) {
    switch (c) {
        case HeraldClass::kSwap2D:
            return 2;
        case HeraldClass::kSwap3D:
            return 3;
        case HeraldClass::kSwap4D:
            return 4;
        case HeraldClass::kSwap5D:
            return 5;
        case HeraldClass::kSwap6D:
            return 6;
        default:
            return 0;
    }
}

HeraldClass class_for_rank(int rank) {
    switch (rank) {
        case 2:
            return HeraldClass::kSwap2D;
        case 3:
            return HeraldClass::kSwap3D;
        case 4:
            return HeraldClass::kSwap4D;
        case 5:
            return HeraldClass::kSwap5D;
        case 6:
            return HeraldClass::kSwap6D;
        default:
            return HeraldClass::kOther;
    }
}

DetectionPattern DetectionPattern::collapsed() const {
    DetectionPattern out{DetectorModel::kThreshold, {}};
    for (const auto &[cell, n] : outcome) {
        if (n > 0) {
            out.outcome[cell] = 1;
        }
    }
    return out;
}

bool DetectionPattern::all_click(const std::vector<std::string> &spatial_modes) const {
    for (const auto &m : spatial_modes) {
        bool any = std::any_of(outcome.begin(), outcome.end(),
                               [&](const auto &entry) { return entry.first.spatial == m && entry.second > 0; });
        if (!any) {
            return false;
        }
    }
    return true;
}

bool DetectionPattern::singly_occupied(const std::vector<std::string> &spatial_modes) const {
    for (const auto &m : spatial_modes) {
        int n = 0;
        for (const auto &[cell, c] : outcome) {
            if (cell.spatial == m) {
                n += c;
            }
        }
        if (n != 1) {
            return false;
        }
    }
    return true;
}

std::string to_string(const DetectionPattern &p) {
    std::ostringstream out;
    bool first = true;
    for (const auto &[cell, n] : p.outcome) {
        out << (first ? "" : ",") << cell.spatial << ":" << cell.internal;
        if (n != 1) {
            out << "^" << n;
        }
        first = false;
    }
    return out.str();
}

DetectionPattern parse_pattern(const std::string &text, DetectorModel model) {
    DetectionPattern p{model, {}};
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
                   item.end());
        if (item.empty()) {
            continue;
        }
        auto colon = item.rfind(':');
        if (colon == std::string::npos || colon == 0) {
            throw std::invalid_argument("pattern entry '" + item + "' is not mode:label");
        }
        std::string spatial = item.substr(0, colon);
        std::string rest = item.substr(colon + 1);
        int count = 1;
        if (auto caret = rest.find('^'); caret != std::string::npos) {
            count = std::stoi(rest.substr(caret + 1));
            rest = rest.substr(0, caret);
        }
        std::size_t used = 0;
        int label = 0;
        try {
            label = std::stoi(rest, &used);
        } catch (const std::exception &) {
            throw std::invalid_argument("pattern entry '" + item + "' has no numeric label");
        }
        if (used != rest.size() || label < 1 || label > kMaxInternal || count < 1) {
            throw std::invalid_argument("pattern entry '" + item + "' is malformed");
        }
        p.outcome[ModeCell{spatial, label}] += count;
    }
    if (p.outcome.empty()) {
        throw std::invalid_argument("empty detection pattern");
    }
    if (model == DetectorModel::kThreshold) {
        p = p.collapsed();
    }
    return p;
}

DetectionPattern pattern_of(const OccupationVector &detected, DetectorModel model) {
    DetectionPattern p{DetectorModel::kPnr, {}};
    for (const auto &[cell, n] : detected.entries()) {
        p.outcome[cell] = n;
    }
    return model == DetectorModel::kThreshold ? p.collapsed() : p;
}

namespace {

template <class A>
typename AmplitudeTraits<A>::Probability coefficient_sum(const BasicState<A> &s) {
    using Traits = AmplitudeTraits<A>;
    auto total = Traits::probability_from_int(0);
    for (const auto &[occ, amp] : s.terms()) {
        auto w = Traits::norm(amp);
        if (s.convention() == Convention::kFock) {
            w /= Traits::probability_from_int(static_cast<std::int64_t>(occ.factorial_weight()));
        }
        total += w;
    }
    return total;
}

}  // namespace

template <class A>
std::vector<Outcome<A>> enumerate_outcomes(const BasicState<A> &s, const std::vector<std::string> &detected,
                                           DetectorModel model) {
    using Traits = AmplitudeTraits<A>;
    using Probability = typename Traits::Probability;
    if (detected.empty()) {
        throw std::invalid_argument("enumerate_outcomes needs at least one detected mode");
    }
    std::set<std::string> det(detected.begin(), detected.end());
    for (const auto &m : det) {
        if (s.modes().count(m) == 0) {
            throw std::invalid_argument("detected mode '" + m + "' is not a mode of the state");
        }
    }
    const Probability norm = s.norm_squared();
    if (Traits::is_zero(norm)) {
        throw std::invalid_argument("enumerate_outcomes on the zero state");
    }
    std::set<std::string> kept_modes;
    for (const auto &m : s.modes()) {
        if (det.count(m) == 0) {
            kept_modes.insert(m);
        }
    }
    auto is_detected = [&](const std::string &m) { return det.count(m) != 0; };
    auto is_kept = [&](const std::string &m) { return det.count(m) == 0; };

    struct Group {
        Probability probability{};
        Probability coefficient_weight{};
        BasicState<A> kept;
    };
    std::map<OccupationVector, Group> groups;
    for (const auto &[occ, amp] : s.terms()) {
        OccupationVector d = occ.restricted(is_detected);
        auto [it, inserted] = groups.try_emplace(d, Group{Probability{}, Probability{}, BasicState<A>(s.convention())});
        Group &g = it->second;
        if (inserted) {
            g.kept.declare_modes(kept_modes);
        }
        Probability c = Traits::norm(amp);
        Probability w = s.weight_of(occ) * c;
        if (s.convention() == Convention::kFock) {
            c /= Traits::probability_from_int(static_cast<std::int64_t>(occ.factorial_weight()));
        }
        g.probability += w / norm;
        g.coefficient_weight += c / norm;
        g.kept.add_term(occ.restricted(is_kept), amp);
    }

    std::map<DetectionPattern, Outcome<A>> merged;
    for (auto &[d, g] : groups) {
        if (Traits::is_zero(g.probability)) {
            continue;
        }
        DetectionPattern signature = pattern_of(d, DetectorModel::kPnr);
        DetectionPattern key = model == DetectorModel::kThreshold ? signature.collapsed() : signature;
        auto [it, inserted] = merged.try_emplace(key, Outcome<A>{key, Probability{}, Probability{}, {}});
        Outcome<A> &o = it->second;
        o.probability += g.probability;
        o.coefficient_weight += g.coefficient_weight;
        o.components.push_back({signature, g.probability, g.coefficient_weight, std::move(g.kept)});
    }
    std::vector<Outcome<A>> out;
    out.reserve(merged.size());
    for (auto &[key, o] : merged) {
        out.push_back(std::move(o));
    }
    return out;
}

template <class A>
typename AmplitudeTraits<A>::Probability fidelity(const BasicState<A> &s, const BasicState<A> &target) {
    using Traits = AmplitudeTraits<A>;
    auto ns = s.norm_squared();
    auto nt = target.norm_squared();
    if (Traits::is_zero(ns) || Traits::is_zero(nt)) {
        throw std::invalid_argument("fidelity with a zero state");
    }
    return Traits::norm(inner_product(target, s)) / (ns * nt);
}

template <class A>
int maximal_entanglement_rank(const BasicState<A> &s, const std::array<std::string, 2> &pair) {
    using Traits = AmplitudeTraits<A>;
    // Coefficient matrix restricted to the internal labels that occur on each side.
    std::vector<int> xs;
    std::vector<int> ys;
    std::vector<std::tuple<int, int, A>> entries;
    for (const auto &[occ, amp] : s.terms()) {
        if (occ.total() != 2 || occ.spatial_count(pair[0]) != 1 || occ.spatial_count(pair[1]) != 1) {
            throw std::invalid_argument("rank test needs one photon in each of " + pair[0] + ", " + pair[1]);
        }
        int x = 0;
        int y = 0;
        for (const auto &[cell, n] : occ.entries()) {
            (cell.spatial == pair[0] ? x : y) = cell.internal;
        }
        xs.push_back(x);
        ys.push_back(y);
        entries.emplace_back(x, y, amp);
    }
    if (entries.empty()) {
        return 0;
    }
    auto compact = [](std::vector<int> &v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    compact(xs);
    compact(ys);
    const std::size_t rows = xs.size();
    const std::size_t cols = ys.size();
    auto index = [](const std::vector<int> &v, int label) {
        return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), label) - v.begin());
    };
    std::vector<std::vector<A>> m(rows, std::vector<A>(cols, Traits::zero()));
    for (const auto &[x, y, amp] : entries) {
        m[index(xs, x)][index(ys, y)] = amp;
    }
    if constexpr (!Traits::kExact) {
        double n2 = 0;
        for (const auto &[x, y, amp] : entries) {
            n2 += Traits::norm(amp);
        }
        for (auto &row : m) {
            for (auto &v : row) {
                v /= std::sqrt(n2);
            }
        }
    }
    // G = M M^dagger is a scaled projector of rank r exactly when the state is maximally entangled.
    std::vector<std::vector<A>> g(rows, std::vector<A>(rows, Traits::zero()));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < rows; ++j) {
            A acc = Traits::zero();
            for (std::size_t y = 0; y < cols; ++y) {
                if (!Traits::is_zero(m[i][y]) && !Traits::is_zero(m[j][y])) {
                    acc += m[i][y] * Traits::conj(m[j][y]);
                }
            }
            g[i][j] = acc;
        }
    }
    A trace = Traits::zero();
    auto hs = Traits::probability_from_int(0);
    for (std::size_t i = 0; i < rows; ++i) {
        trace += g[i][i];
        for (std::size_t j = 0; j < rows; ++j) {
            hs += Traits::norm(g[i][j]);
        }
    }
    auto ratio = Traits::norm(trace) / hs;  // tr(G)^2 / tr(G^2)
    int rank = 0;
    if constexpr (Traits::kExact) {
        if (boost::multiprecision::denominator(ratio) != 1) {
            return 0;
        }
        rank = static_cast<int>(boost::multiprecision::numerator(ratio));
    } else {
        double r = std::round(ratio);
        if (std::abs(ratio - r) > 1e-6) {
            return 0;
        }
        rank = static_cast<int>(r);
    }
    const A scale = Traits::from_int(rank);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < rows; ++j) {
            A gg = Traits::zero();
            for (std::size_t k = 0; k < rows; ++k) {
                gg += g[i][k] * g[k][j];
            }
            if (!Traits::equal(scale * gg, trace * g[i][j])) {
                return 0;
            }
        }
    }
    return rank;
}

double fidelity_decay(double eta, int n_bs) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("HOM efficiency must lie in [0, 1]");
    }
    if (n_bs < 0) {
        throw std::invalid_argument("beam-splitter count must be non-negative");
    }
    return std::pow(eta, n_bs);
}

namespace {

bool one_per_kept_mode(const OccupationVector &occ, const std::array<std::string, 2> &pair) {
    return occ.total() == 2 && occ.spatial_count(pair[0]) == 1 && occ.spatial_count(pair[1]) == 1;
}

// Block phase of the ideal herald, in quarter turns of the ancilla phase phi. On (a, d)
// the ancilla term is consumed by the detectors and the herald carries -phi; on a
// terminal pair the ancilla photon is kept and the herald carries +phi. The A2
// initial state adds a sign to the lone |3,4> term.
struct BlockPhase {
    int sign = 1;
    int extra_turns = 0;
};

BlockPhase block_phase(const std::array<std::string, 2> &pair, const ProtocolConfig &cfg) {
    Circuit c = build_circuit(cfg);
    BlockPhase bp;
    if (pair[0] == c.kept[0] && pair[1] == c.kept[1]) {
        bp.sign = -1;
        if (cfg.dimension == 3 && cfg.effective_variant() == InitialVariant::kA2) {
            bp.extra_turns = 2;
        }
    }
    return bp;
}

template <class A>
BasicState<A> target_for(HeraldClass cls, const std::array<std::string, 2> &pair, const ProtocolConfig &cfg);

template <>
PureState target_for<Amplitude>(HeraldClass cls, const std::array<std::string, 2> &pair, const ProtocolConfig &cfg) {
    BlockPhase bp = block_phase(pair, cfg);
    return swap_target(schmidt_rank(cls), pair[0], pair[1], bp.sign * cfg.exact_quarter_turns() + bp.extra_turns);
}

template <>
FloatState target_for<FloatAmplitude>(HeraldClass cls, const std::array<std::string, 2> &pair,
                                      const ProtocolConfig &cfg) {
    BlockPhase bp = block_phase(pair, cfg);
    double theta = bp.sign * cfg.phase_radians() + bp.extra_turns * std::numbers::pi / 2;
    return swap_target_float(schmidt_rank(cls), pair[0], pair[1], theta);
}

template <class A>
typename AmplitudeTraits<A>::Probability best_singlet_fidelity(const BasicState<A> &s,
                                                               const std::array<std::string, 2> &pair) {
    auto best = AmplitudeTraits<A>::probability_from_int(0);
    for (int k = 1; k <= kMaxInternal; ++k) {
        for (int j = k + 1; j <= kMaxInternal; ++j) {
            auto f = fidelity(s, bell_singlet<A>(k, j, pair[0], pair[1]));
            if (f > best) {
                best = f;
            }
        }
    }
    return best;
}

}  // namespace

template <class A>
std::vector<HeraldRow<A>> classify(const std::vector<Outcome<A>> &outcomes, const std::array<std::string, 2> &kept_pair,
                                   const std::vector<std::string> &detected, const ProtocolConfig &cfg) {
    using Traits = AmplitudeTraits<A>;
    std::vector<HeraldRow<A>> rows;
    rows.reserve(outcomes.size());
    for (const auto &o : outcomes) {
        HeraldRow<A> row;
        row.pattern = o.pattern;
        row.kept_pair = kept_pair;
        row.probability = o.probability;
        row.herald_probability = Traits::probability_from_int(0);
        row.coefficient_weight = Traits::probability_from_int(0);
        row.fidelity = Traits::probability_from_int(0);
        row.coincidence = o.pattern.all_click(detected);

        int sectors = 0;
        for (const auto &comp : o.components) {
            BasicState<A> sector =
                comp.kept.filtered([&](const OccupationVector &occ) { return one_per_kept_mode(occ, kept_pair); });
            if (sector.is_zero()) {
                continue;
            }
            ++sectors;
            row.herald_probability += comp.probability * (sector.norm_squared() / comp.kept.norm_squared());
            row.coefficient_weight += comp.coefficient_weight * (coefficient_sum(sector) / coefficient_sum(comp.kept));
            row.heralded = std::move(sector);
        }
        if (sectors != 1) {
            // Nothing heralded, or an incoherent mixture of distinct signatures.
            row.heralded.reset();
            rows.push_back(std::move(row));
            continue;
        }
        bool eligible = cfg.detector == DetectorModel::kPnr || row.coincidence;
        int rank = eligible ? maximal_entanglement_rank(*row.heralded, kept_pair) : 0;
        if (rank >= 2) {
            row.cls = class_for_rank(rank);
            if (row.cls == HeraldClass::kSwap2D) {
                row.fidelity = best_singlet_fidelity(*row.heralded, kept_pair);
            } else {
                row.fidelity = fidelity(*row.heralded, target_for<A>(row.cls, kept_pair, cfg));
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class A>
void accumulate(HeraldReport<A> &report) {
    report.aggregates.clear();
    for (const auto &row : report.rows) {
        auto &agg = report.aggregates[row.cls];
        agg.events += 1;
        agg.probability += row.herald_probability;
        agg.coefficient_weight += row.coefficient_weight;
    }
}

PureState protocol_output(const ProtocolConfig &cfg) {
    return apply_circuit(composite_input(cfg), build_circuit(cfg));
}

FloatState protocol_output_float(const ProtocolConfig &cfg) {
    return apply_circuit(composite_input_float(cfg), build_circuit(cfg));
}

std::vector<std::array<std::string, 2>> kept_pairs(const ProtocolConfig &cfg, const Circuit &circuit) {
    std::vector<std::array<std::string, 2>> pairs = {{circuit.kept[0], circuit.kept[1]}};
    if (cfg.heralds == HeraldAssignment::kFlexible) {
        for (const auto &p : circuit.terminal_pairs()) {
            pairs.push_back(p);
        }
    }
    return pairs;
}

namespace {

std::vector<std::string> detected_for(const Circuit &c, const std::array<std::string, 2> &pair) {
    if (pair[0] == c.kept[0] && pair[1] == c.kept[1]) {
        return c.detected;
    }
    std::vector<std::string> out;
    for (const auto *group : {&c.kept, &c.detected}) {
        for (const auto &m : *group) {
            if (m != pair[0] && m != pair[1]) {
                out.push_back(m);
            }
        }
    }
    return out;
}

template <class A>
HeraldReport<A> run(const ProtocolConfig &cfg, const BasicState<A> &output) {
    Circuit c = build_circuit(cfg);
    HeraldReport<A> report;
    report.config = cfg;
    report.total_probability = AmplitudeTraits<A>::probability_from_int(0);
    bool first = true;
    for (const auto &pair : kept_pairs(cfg, c)) {
        auto detected = detected_for(c, pair);
        auto outcomes = enumerate_outcomes(output, detected, cfg.detector);
        if (first) {
            for (const auto &o : outcomes) {
                report.total_probability += o.probability;
            }
            first = false;
        }
        auto rows = classify(outcomes, pair, detected, cfg);
        std::move(rows.begin(), rows.end(), std::back_inserter(report.rows));
    }
    accumulate(report);
    return report;
}

}  // namespace

HeraldReport<Amplitude> run_protocol(const ProtocolConfig &cfg) {
    cfg.validate();
    return run(cfg, protocol_output(cfg));
}

HeraldReport<FloatAmplitude> run_protocol_float(const ProtocolConfig &cfg) {
    cfg.validate();
    return run(cfg, protocol_output_float(cfg));
}

EventCounts count_events(const ProtocolConfig &cfg) {
    cfg.validate();
    Circuit c = build_circuit(cfg);
    PureState output = protocol_output(cfg);
    EventCounts counts;

    std::set<std::string> outputs = c.output_modes();
    counts.full_configuration.total = output.size();
    for (const auto &[occ, amp] : output.terms()) {
        bool singly = std::all_of(outputs.begin(), outputs.end(),
                                  [&](const std::string &m) { return occ.spatial_count(m) == 1; });
        counts.full_configuration.coincidence += singly;
    }

    const std::array<std::string, 2> pair = {c.kept[0], c.kept[1]};
    for (DetectorModel model : {DetectorModel::kPnr, DetectorModel::kThreshold}) {
        ProtocolConfig model_cfg = cfg;
        model_cfg.detector = model;
        auto outcomes = enumerate_outcomes(output, c.detected, model);
        auto rows = classify(outcomes, pair, c.detected, model_cfg);
        CountTriple &t = model == DetectorModel::kPnr ? counts.pnr_signature : counts.threshold_signature;
        t.total = outcomes.size();
        for (const auto &row : rows) {
            t.coincidence += row.pattern.singly_occupied(c.detected);
            t.success += schmidt_rank(row.cls) == cfg.dimension;
        }
        if (model == cfg.detector) {
            counts.full_configuration.success = t.success;
        }
    }
    return counts;
}

std::vector<GainRow> pnr_gains(const ProtocolConfig &cfg) {
    ProtocolConfig threshold_cfg = cfg;
    threshold_cfg.detector = DetectorModel::kThreshold;
    ProtocolConfig pnr_cfg = cfg;
    pnr_cfg.detector = DetectorModel::kPnr;
    auto threshold = run_protocol(threshold_cfg);
    auto pnr = run_protocol(pnr_cfg);

    std::set<HeraldClass> classes;
    for (const auto *r : {&threshold, &pnr}) {
        for (const auto &[cls, agg] : r->aggregates) {
            if (cls != HeraldClass::kOther) {
                classes.insert(cls);
            }
        }
    }
    std::vector<GainRow> out;
    for (HeraldClass cls : classes) {
        GainRow row;
        row.cls = cls;
        if (auto it = threshold.aggregates.find(cls); it != threshold.aggregates.end()) {
            row.threshold = it->second;
        }
        if (auto it = pnr.aggregates.find(cls); it != pnr.aggregates.end()) {
            row.pnr = it->second;
        }
        if (row.pnr.events < row.threshold.events || row.pnr.probability < row.threshold.probability) {
            throw InvariantViolation("PNR aggregate below THRESHOLD for " + to_string(cls));
        }
        out.push_back(row);
    }
    return out;
}

#define HDSWAP_INSTANTIATE(A)                                                                                      \
    template std::vector<Outcome<A>> enumerate_outcomes(const BasicState<A> &, const std::vector<std::string> &,  \
                                                        DetectorModel);                                            \
    template AmplitudeTraits<A>::Probability fidelity(const BasicState<A> &, const BasicState<A> &);               \
    template int maximal_entanglement_rank(const BasicState<A> &, const std::array<std::string, 2> &);             \
    template std::vector<HeraldRow<A>> classify(const std::vector<Outcome<A>> &, const std::array<std::string, 2> &, \
                                                const std::vector<std::string> &, const ProtocolConfig &);         \
    template void accumulate(HeraldReport<A> &);

HDSWAP_INSTANTIATE(Amplitude)
HDSWAP_INSTANTIATE(FloatAmplitude)

#undef HDSWAP_INSTANTIATE

}  // namespace hdswap
