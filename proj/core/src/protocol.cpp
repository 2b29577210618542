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

#include "hdswap/protocol.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace hdswap {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

bool is_quarter_turn(double radians, int &turns) {
    double q = radians / kHalfPi;
    double r = std::round(q);
    if (std::abs(q - r) > 1e-12) {
        return false;
    }
    turns = static_cast<int>(std::fmod(std::fmod(r, 4.0) + 4.0, 4.0));
    return true;
}

}  // namespace

void ProtocolConfig::validate() const {
    if (dimension < 3 || dimension > 6) {
        throw std::invalid_argument("dimension must be 3, 4, 5 or 6");
    }
    if (variant != InitialVariant::kStandard && dimension != 3) {
        throw std::invalid_argument("initial variants A1/A2 exist only for dimension 3");
    }
    if (symmetric_ancilla && dimension != 4) {
        throw std::invalid_argument("the symmetric ancilla exists only for dimension 4");
    }
    int turns = 0;
    if (backend == Backend::kExact && ancilla_radians && !is_quarter_turn(*ancilla_radians, turns)) {
        throw std::invalid_argument("exact backend needs an ancilla phase that is a multiple of pi/2; use --backend float");
    }
}

InitialVariant ProtocolConfig::effective_variant() const {
    if (dimension == 3 && variant == InitialVariant::kStandard) {
        return InitialVariant::kA1;
    }
    return variant;
}

int ProtocolConfig::exact_quarter_turns() const {
    int turns = 0;
    if (ancilla_radians) {
        if (!is_quarter_turn(*ancilla_radians, turns)) {
            throw std::invalid_argument("ancilla phase is not a multiple of pi/2");
        }
        return turns;
    }
    return ((ancilla_quarter_turns % 4) + 4) % 4;
}

double ProtocolConfig::phase_radians() const {
    return ancilla_radians ? *ancilla_radians : kHalfPi * ancilla_quarter_turns;
}

std::string to_string(DetectorModel m) {
    return m == DetectorModel::kThreshold ? "threshold" : "pnr";
}

std::string to_string(HeraldAssignment h) {
    return h == HeraldAssignment::kFixed ? "fixed" : "flexible";
}

std::string to_string(InitialVariant v) {
    switch (v) {
        case InitialVariant::kA1:
            return "A1";
        case InitialVariant::kA2:
            return "A2";
        default:
            return "standard";
    }
}

std::string to_string(Backend b) {
    return b == Backend::kExact ? "exact" : "float";
}

DetectorModel parse_detector_model(const std::string &text) {
    if (text == "threshold") return DetectorModel::kThreshold;
    if (text == "pnr") return DetectorModel::kPnr;
    throw std::invalid_argument("unknown detector model '" + text + "'");
}

HeraldAssignment parse_herald_assignment(const std::string &text) {
    if (text == "fixed") return HeraldAssignment::kFixed;
    if (text == "flexible") return HeraldAssignment::kFlexible;
    throw std::invalid_argument("unknown herald assignment '" + text + "'");
}

InitialVariant parse_initial_variant(const std::string &text) {
    if (text == "standard") return InitialVariant::kStandard;
    if (text == "A1" || text == "a1") return InitialVariant::kA1;
    if (text == "A2" || text == "a2") return InitialVariant::kA2;
    throw std::invalid_argument("unknown initial variant '" + text + "'");
}

Backend parse_backend(const std::string &text) {
    if (text == "exact") return Backend::kExact;
    if (text == "float") return Backend::kFloat;
    throw std::invalid_argument("unknown backend '" + text + "'");
}

OccupationVector two_photon(int k, int j, const std::string &m, const std::string &n) {
    OccupationVector occ;
    occ.add(ModeCell{m, k});
    occ.add(ModeCell{n, j});
    return occ;
}

namespace {

std::vector<std::pair<int, int>> initial_labels(int d, InitialVariant variant) {
    std::vector<std::pair<int, int>> labels;
    if (d == 3) {
        if (variant == InitialVariant::kA2) {
            return {{1, 1}, {2, 2}, {3, 4}};
        }
        return {{1, 2}, {2, 1}, {3, 4}};
    }
    if (d < 3 || d > 6) {
        throw std::invalid_argument("unsupported dimension " + std::to_string(d));
    }
    for (int k = 1; k <= d; ++k) {
        labels.push_back({k, k});
    }
    return labels;
}

template <class A>
BasicState<A> pair_state(const std::vector<std::pair<int, int>> &labels, const std::vector<A> &coefficients,
                         const std::string &m, const std::string &n) {
    BasicState<A> s(Convention::kMonomial);
    s.declare_mode(m);
    s.declare_mode(n);
    for (std::size_t t = 0; t < labels.size(); ++t) {
        s.add_term(two_photon(labels[t].first, labels[t].second, m, n), coefficients[t]);
    }
    return s;
}

}  // namespace

template <>
PureState initial_state<Amplitude>(int d, const std::string &m, const std::string &n, InitialVariant variant) {
    auto labels = initial_labels(d, variant);
    Amplitude coefficient = d == 4 ? Amplitude(1, 0, 2) : Amplitude::one();
    return pair_state(labels, std::vector<Amplitude>(labels.size(), coefficient), m, n);
}

template <>
FloatState initial_state<FloatAmplitude>(int d, const std::string &m, const std::string &n, InitialVariant variant) {
    auto labels = initial_labels(d, variant);
    FloatAmplitude coefficient(1.0 / std::sqrt(static_cast<double>(labels.size())), 0.0);
    return pair_state(labels, std::vector<FloatAmplitude>(labels.size(), coefficient), m, n);
}

PureState ancilla_state(int quarter_turns, const std::string &m, const std::string &n, bool symmetric) {
    Amplitude phase = Amplitude::quarter_turn(quarter_turns);
    if (symmetric) {
        Amplitude half(1, 0, 2);
        return pair_state<Amplitude>({{1, 2}, {2, 1}, {3, 4}, {4, 3}}, {half, half, half * phase, half * phase}, m,
                                     n);
    }
    Amplitude r = Amplitude::inv_sqrt2();
    return pair_state<Amplitude>({{1, 2}, {3, 4}}, {r, r * phase}, m, n);
}

FloatState ancilla_state_float(double radians, const std::string &m, const std::string &n, bool symmetric) {
    FloatAmplitude phase = std::polar(1.0, radians);
    if (symmetric) {
        return pair_state<FloatAmplitude>({{1, 2}, {2, 1}, {3, 4}, {4, 3}}, {0.5, 0.5, 0.5 * phase, 0.5 * phase}, m,
                                          n);
    }
    return pair_state<FloatAmplitude>({{1, 2}, {3, 4}}, {M_SQRT1_2, M_SQRT1_2 * phase}, m, n);
}

PureState alternative_ancilla(const std::string &m, const std::string &n) {
    Amplitude r = Amplitude::inv_sqrt2();
    return pair_state<Amplitude>({{1, 4}, {2, 3}}, {r, r}, m, n);
}

std::pair<PureState, PureState> ancilla_pair(int quarter_turns, const std::string &m1, const std::string &n1,
                                             const std::string &m2, const std::string &n2) {
    Amplitude r = Amplitude::inv_sqrt2();
    Amplitude rp = r * Amplitude::quarter_turn(quarter_turns);
    return {pair_state<Amplitude>({{1, 2}, {3, 4}}, {r, rp}, m1, n1),
            pair_state<Amplitude>({{5, 6}, {3, 4}}, {r, rp}, m2, n2)};
}

std::pair<FloatState, FloatState> ancilla_pair_float(double radians, const std::string &m1, const std::string &n1,
                                                     const std::string &m2, const std::string &n2) {
    FloatAmplitude r(M_SQRT1_2, 0.0);
    FloatAmplitude rp = r * std::polar(1.0, radians);
    return {pair_state<FloatAmplitude>({{1, 2}, {3, 4}}, {r, rp}, m1, n1),
            pair_state<FloatAmplitude>({{5, 6}, {3, 4}}, {r, rp}, m2, n2)};
}

Circuit build_circuit(const ProtocolConfig &cfg) {
    cfg.validate();
    Circuit c;
    if (cfg.dimension <= 4) {
        c.modes = {"a", "b", "c", "d", "e", "f"};
        c.elements = {{"b", "c", "b'", "c'"}, {"b'", "e", "b''", "e'"}, {"c'", "f", "c''", "f'"}};
        c.detected = {"b''", "e'", "f'", "c''"};
    } else {
        c.modes = {"a", "b", "c", "d", "e1", "f1", "e2", "f2"};
        c.elements = {{"b", "c", "b'", "c'"},
                      {"b'", "e1", "b''", "e1'"},
                      {"c'", "f1", "c''", "f1'"},
                      {"b''", "e2", "b'''", "e2'"},
                      {"c''", "f2", "c'''", "f2'"}};
        c.detected = {"b'''", "e1'", "e2'", "f2'", "f1'", "c'''"};
    }
    c.kept = {"a", "d"};
    c.validate();
    return c;
}

PureState composite_input(const ProtocolConfig &cfg) {
    cfg.validate();
    const int d = cfg.dimension;
    const InitialVariant v = cfg.effective_variant();
    PureState s = tensor(initial_state<Amplitude>(d, "a", "b", v), initial_state<Amplitude>(d, "c", "d", v));
    const int turns = cfg.exact_quarter_turns();
    if (d <= 4) {
        return tensor(s, ancilla_state(turns, "e", "f", cfg.symmetric_ancilla));
    }
    auto [a1, a2] = ancilla_pair(turns, "e1", "f1", "e2", "f2");
    return tensor(tensor(s, a1), a2);
}

FloatState composite_input_float(const ProtocolConfig &cfg) {
    cfg.validate();
    const int d = cfg.dimension;
    const InitialVariant v = cfg.effective_variant();
    FloatState s =
        tensor(initial_state<FloatAmplitude>(d, "a", "b", v), initial_state<FloatAmplitude>(d, "c", "d", v));
    const double phi = cfg.phase_radians();
    if (d <= 4) {
        return tensor(s, ancilla_state_float(phi, "e", "f", cfg.symmetric_ancilla));
    }
    auto [a1, a2] = ancilla_pair_float(phi, "e1", "f1", "e2", "f2");
    return tensor(tensor(s, a1), a2);
}

namespace {

// Blocks on label pairs (1,2), (3,4), (5,6) up to the rank: singlets, except that an
// odd rank ends with a lone |rank, rank+1> term. The (3,4) block carries `phase`.
template <class A>
BasicState<A> target(int rank, const std::string &m, const std::string &n, const A &phase) {
    if (rank < 2 || rank > kMaxInternal) {
        throw std::invalid_argument("no target state of rank " + std::to_string(rank));
    }
    BasicState<A> s(Convention::kMonomial);
    s.declare_mode(m);
    s.declare_mode(n);
    for (int k = 1; k <= rank; k += 2) {
        A c = k == 3 ? phase : AmplitudeTraits<A>::one();
        s.add_term(two_photon(k, k + 1, m, n), c);
        if (k + 1 <= rank) {
            s.add_term(two_photon(k + 1, k, m, n), -c);
        }
    }
    return s;
}

}  // namespace

PureState swap_target(int rank, const std::string &m, const std::string &n, int quarter_turns) {
    return target(rank, m, n, Amplitude::quarter_turn(quarter_turns));
}

FloatState swap_target_float(int rank, const std::string &m, const std::string &n, double radians) {
    return target(rank, m, n, std::polar(1.0, radians));
}

int hyper_label(TimeBin t, Polarization p) {
    return (t == TimeBin::kEarly ? 1 : 3) + (p == Polarization::kH ? 0 : 1);
}

std::pair<TimeBin, Polarization> hyper_decode(int label) {
    if (label < 1 || label > 4) {
        throw std::invalid_argument("hyper-encoding covers labels 1..4, got " + std::to_string(label));
    }
    return {label <= 2 ? TimeBin::kEarly : TimeBin::kLate, label % 2 == 1 ? Polarization::kH : Polarization::kV};
}

std::string hyper_symbol(int label) {
    auto [t, p] = hyper_decode(label);
    return std::string(p == Polarization::kH ? "H" : "V") + (t == TimeBin::kEarly ? "(te)" : "(tl)");
}

namespace {

// "/2", "/√2", "/2√2", "/√3"... for a common squared magnitude 1/q, q a positive integer.
std::string denominator_text(const BigInt &q) {
    if (q == 1) {
        return "";
    }
    BigInt square = 1;
    BigInt rest = q;
    for (BigInt f = 2; f * f <= rest; ++f) {
        while (rest % (f * f) == 0) {
            rest /= f * f;
            square *= f;
        }
    }
    std::ostringstream out;
    out << "/";
    if (square != 1) {
        out << square;
    }
    if (rest != 1) {
        out << "√" << rest;
    }
    return out.str();
}

std::string render(const PureState &s, bool hyper) {
    if (s.is_zero()) {
        return "0";
    }
    auto label = [&](int internal) { return hyper ? hyper_symbol(internal) : std::to_string(internal); };
    const Rational norm2 = s.norm_squared();

    // Common squared weight of every term relative to the norm, if there is one.
    std::optional<Rational> common;
    for (const auto &[occ, amp] : s.terms()) {
        Rational w = abs_squared(amp) * Rational(occ.factorial_weight()) / norm2;
        if (!common) {
            common = w;
        } else if (*common != w) {
            common.reset();
            break;
        }
    }
    bool uniform = common && boost::multiprecision::numerator(*common) == 1;
    for (const auto &[occ, amp] : s.terms()) {
        if (!amp.re().is_zero() && !amp.im().is_zero()) {
            uniform = false;
        }
    }

    std::ostringstream out;
    out << (uniform ? "(" : "");
    bool first = true;
    for (const auto &[occ, amp] : s.terms()) {
        // Ket: photons ordered by spatial mode, then internal mode.
        std::ostringstream ket;
        ket << "|";
        bool first_photon = true;
        for (const auto &[cell, n] : occ.entries()) {
            for (int c = 0; c < n; ++c) {
                ket << (first_photon ? "" : ",") << label(cell.internal);
                first_photon = false;
            }
        }
        ket << "⟩";

        if (uniform) {
            // amp is a real or imaginary multiple of the common magnitude.
            bool real = amp.im().is_zero();
            bool negative = real ? amp.re() < 0 : amp.im() < 0;
            out << (negative ? "−" : (first ? "" : "+")) << (real ? "" : "i") << ket.str();
        } else {
            std::complex<double> c = amp.to_complex() / std::sqrt(to_double(norm2));
            out << (first ? "" : " + ") << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)" << ket.str();
        }
        first = false;
    }
    if (uniform) {
        out << ")" << denominator_text(boost::multiprecision::denominator(*common));
    }
    return out.str();
}

}  // namespace

std::string hyper_render(const PureState &s) {
    for (const auto &[occ, amp] : s.terms()) {
        for (const auto &[cell, n] : occ.entries()) {
            if (cell.internal > 4) {
                throw std::invalid_argument("hyper notation covers internal labels 1..4");
            }
        }
    }
    return render(s, true);
}

std::string numeric_render(const PureState &s) {
    return render(s, false);
}

}  // namespace hdswap
