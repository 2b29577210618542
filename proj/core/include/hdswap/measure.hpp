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

#ifndef HDSWAP_MEASURE_HPP
#define HDSWAP_MEASURE_HPP

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdswap/fock.hpp"
#include "hdswap/optics.hpp"
#include "hdswap/protocol.hpp"

namespace hdswap {

/// Raised when an internal consistency check fails (not a user error).
class InvariantViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Heralded-state classes. SWAP_kD: the kept pair is maximally entangled with Schmidt rank k.
enum class HeraldClass { kOther, kSwap2D, kSwap3D, kSwap4D, kSwap5D, kSwap6D };

std::string to_string(HeraldClass c);
HeraldClass parse_herald_class(const std::string &text);
int schmidt_rank(HeraldClass c);
HeraldClass class_for_rank(int rank);

/// Detector outcome restricted to detected cells: photon counts (PNR) or clicks (THRESHOLD, value 1).
struct DetectionPattern {
    DetectorModel model = DetectorModel::kPnr;
    std::map<ModeCell, int> outcome;

    /// THRESHOLD view of this pattern.
    DetectionPattern collapsed() const;
    /// True when every listed spatial mode registers at least one photon.
    bool all_click(const std::vector<std::string> &spatial_modes) const;
    /// True when every listed spatial mode registers exactly one photon in one cell.
    bool singly_occupied(const std::vector<std::string> &spatial_modes) const;

    auto operator<=>(const DetectionPattern &) const = default;
};

/// "b'':3,e':1" (cells joined by ','; a repeated cell adds a photon, "x:1^2" sets a count).
std::string to_string(const DetectionPattern &p);
DetectionPattern parse_pattern(const std::string &text, DetectorModel model);
DetectionPattern pattern_of(const OccupationVector &detected, DetectorModel model);

/// PNR-level piece of an outcome: one detected signature with its kept-mode component.
template <class A>
struct HeraldComponent {
    using Probability = typename AmplitudeTraits<A>::Probability;
    DetectionPattern signature;
    Probability probability;
    Probability coefficient_weight;
    /// Unnormalized kept-mode state, in the input convention.
    BasicState<A> kept;
};

template <class A>
struct Outcome {
    using Probability = typename AmplitudeTraits<A>::Probability;
    DetectionPattern pattern;
    /// Fock probability of the pattern.
    Probability probability;
    /// Sum of squared creation-monomial coefficients over the input norm.
    Probability coefficient_weight;
    /// One entry under PNR; every merged signature under THRESHOLD (incoherent).
    std::vector<HeraldComponent<A>> components;
};

/// Partitions `s` by what the detectors on `detected` report.
///
/// Probabilities are relative to the norm of `s`, so unnormalized inputs are
/// fine. Patterns whose terms cancel exactly are absent.
template <class A>
std::vector<Outcome<A>> enumerate_outcomes(const BasicState<A> &s, const std::vector<std::string> &detected,
                                           DetectorModel model);

/// |<target|s>|^2 / (<s|s><target|target>).
template <class A>
typename AmplitudeTraits<A>::Probability fidelity(const BasicState<A> &s, const BasicState<A> &target);

/// Schmidt rank r when the two-mode state on `pair` (one photon per mode) is
/// maximally entangled, 0 otherwise.
template <class A>
int maximal_entanglement_rank(const BasicState<A> &s, const std::array<std::string, 2> &pair);

/// Fidelity after n interferences with HOM efficiency eta: eta^n.
double fidelity_decay(double eta, int n_bs);

template <class A>
struct HeraldRow {
    using Probability = typename AmplitudeTraits<A>::Probability;
    DetectionPattern pattern;
    std::array<std::string, 2> kept_pair;
    Probability probability;
    /// Probability of the pattern with exactly one photon left in each kept mode.
    Probability herald_probability;
    /// The same restriction in squared monomial coefficients.
    Probability coefficient_weight;
    bool coincidence = false;
    HeraldClass cls = HeraldClass::kOther;
    /// Kept state restricted to one photon per kept mode, when it is pure.
    std::optional<BasicState<A>> heralded;
    /// Against the class target (best singlet for SWAP_2D); zero for OTHER.
    Probability fidelity;
};

template <class A>
struct ClassAggregate {
    using Probability = typename AmplitudeTraits<A>::Probability;
    std::size_t events = 0;
    Probability probability{};
    Probability coefficient_weight{};
};

template <class A>
struct HeraldReport {
    using Probability = typename AmplitudeTraits<A>::Probability;
    ProtocolConfig config;
    std::vector<HeraldRow<A>> rows;
    std::map<HeraldClass, ClassAggregate<A>> aggregates;
    /// Sum over every pattern of the fixed (a, d) assignment; exactly 1 when complete.
    Probability total_probability{};
};

/// Labels outcomes for one kept pair. THRESHOLD heralds only on coincidences
/// (every detected spatial mode clicks); PNR heralds on any pattern.
template <class A>
std::vector<HeraldRow<A>> classify(const std::vector<Outcome<A>> &outcomes, const std::array<std::string, 2> &kept_pair,
                                   const std::vector<std::string> &detected, const ProtocolConfig &cfg);

template <class A>
void accumulate(HeraldReport<A> &report);

/// Output state of the configured protocol (MONOMIAL convention).
PureState protocol_output(const ProtocolConfig &cfg);
FloatState protocol_output_float(const ProtocolConfig &cfg);

/// Kept pairs for the configured herald assignment: (a, d), plus the terminal splitter pairs when flexible.
std::vector<std::array<std::string, 2>> kept_pairs(const ProtocolConfig &cfg, const Circuit &circuit);

/// Full pipeline: states, circuit, enumeration and classification.
HeraldReport<Amplitude> run_protocol(const ProtocolConfig &cfg);
HeraldReport<FloatAmplitude> run_protocol_float(const ProtocolConfig &cfg);

struct CountTriple {
    std::size_t total = 0;
    std::size_t coincidence = 0;
    std::size_t success = 0;
};

struct EventCounts {
    /// Nonzero configurations of every output mode, kept modes included (PNR level).
    /// coincidence: every output spatial mode singly occupied.
    CountTriple full_configuration;
    /// Distinct PNR signatures on the detected modes.
    /// coincidence: every detected spatial mode holds exactly one photon.
    CountTriple pnr_signature;
    /// Distinct click patterns on the detected modes.
    /// coincidence: every detected spatial mode has exactly one clicking cell.
    CountTriple threshold_signature;
};

/// Signature successes count patterns heralding SWAP_{dimension}D on (a, d) under
/// that signature's model; full_configuration.success uses cfg.detector.
EventCounts count_events(const ProtocolConfig &cfg);

struct GainRow {
    HeraldClass cls = HeraldClass::kOther;
    ClassAggregate<Amplitude> threshold;
    ClassAggregate<Amplitude> pnr;
};

/// Per-class aggregates under both detector models for cfg's herald assignment.
/// Throws InvariantViolation if PNR ever falls below THRESHOLD.
std::vector<GainRow> pnr_gains(const ProtocolConfig &cfg);

}  // namespace hdswap

#endif  // HDSWAP_MEASURE_HPP
