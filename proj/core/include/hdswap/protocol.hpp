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

#ifndef HDSWAP_PROTOCOL_HPP
#define HDSWAP_PROTOCOL_HPP

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdswap/fock.hpp"
#include "hdswap/optics.hpp"

namespace hdswap {

enum class DetectorModel { kThreshold, kPnr };
enum class HeraldAssignment { kFixed, kFlexible };
/// Initial-state family. For dimension 3 the two embedded forms
/// (|1,2>+|2,1>+|3,4>) and (|1,1>+|2,2>+|3,4>) are A1 and A2.
enum class InitialVariant { kStandard, kA1, kA2 };

struct ProtocolConfig {
    int dimension = 4;
    /// Ancilla relative phase as a multiple of pi/2 (exact backend).
    int ancilla_quarter_turns = 0;
    /// Arbitrary ancilla phase; float backend only unless a multiple of pi/2.
    std::optional<double> ancilla_radians;
    DetectorModel detector = DetectorModel::kThreshold;
    HeraldAssignment heralds = HeraldAssignment::kFixed;
    InitialVariant variant = InitialVariant::kStandard;
    bool symmetric_ancilla = false;
    Backend backend = Backend::kExact;

    /// Throws std::invalid_argument on incompatible settings.
    void validate() const;
    /// Dimension 3 with the standard variant resolves to A1.
    InitialVariant effective_variant() const;
    /// Quarter turns for the exact backend, folding `ancilla_radians` when it is a multiple of pi/2.
    int exact_quarter_turns() const;
    double phase_radians() const;
};

std::string to_string(DetectorModel m);
std::string to_string(HeraldAssignment h);
std::string to_string(InitialVariant v);
std::string to_string(Backend b);
DetectorModel parse_detector_model(const std::string &text);
HeraldAssignment parse_herald_assignment(const std::string &text);
InitialVariant parse_initial_variant(const std::string &text);
Backend parse_backend(const std::string &text);

/// Occupation with one photon in (m, k) and one in (n, j).
OccupationVector two_photon(int k, int j, const std::string &m, const std::string &n);

/// (|k,j>_{m,n} - |j,k>_{m,n}) / sqrt(2).
template <class A>
BasicState<A> bell_singlet(int k, int j, const std::string &m, const std::string &n) {
    using Traits = AmplitudeTraits<A>;
    if (k == j) {
        throw std::invalid_argument("singlet needs two different internal modes");
    }
    if (m == n) {
        throw std::invalid_argument("singlet needs two different spatial modes");
    }
    BasicState<A> s(Convention::kMonomial);
    s.add_term(two_photon(k, j, m, n), Traits::inv_sqrt2());
    s.add_term(two_photon(j, k, m, n), -Traits::inv_sqrt2());
    return s;
}

/// Initial maximally entangled pair on rails (m, n).
///
/// d = 4 is normalized (amplitudes 1/2). d = 3, 5, 6 have unit coefficients
/// and norm^2 = d in the exact backend, since 1/sqrt(d) is not in the ring;
/// the float backend returns them normalized. d = 5 uses labels 1..5.
template <class A>
BasicState<A> initial_state(int d, const std::string &m, const std::string &n,
                            InitialVariant variant = InitialVariant::kStandard);

/// Two-dimensional ancilla (|1,2> + e^{i phi}|3,4>)/sqrt(2); the symmetric
/// form is (|1,2>+|2,1> + e^{i phi}(|3,4>+|4,3>))/2.
PureState ancilla_state(int quarter_turns, const std::string &m, const std::string &n, bool symmetric = false);
FloatState ancilla_state_float(double radians, const std::string &m, const std::string &n, bool symmetric = false);

/// (|1,4> + |2,3>)/sqrt(2), the label-permuted ancilla.
PureState alternative_ancilla(const std::string &m, const std::string &n);

/// The pair used for dimensions 5 and 6: (|1,2> + e^{i phi}|3,4>)/sqrt(2)
/// on (m1, n1) and (|5,6> + e^{i phi}|3,4>)/sqrt(2) on (m2, n2).
std::pair<PureState, PureState> ancilla_pair(int quarter_turns, const std::string &m1, const std::string &n1,
                                             const std::string &m2, const std::string &n2);
std::pair<FloatState, FloatState> ancilla_pair_float(double radians, const std::string &m1, const std::string &n1,
                                                     const std::string &m2, const std::string &n2);

/// d <= 4: BS(b,c) -> (b',c'); BS(b',e) -> (b'',e'); BS(c',f) -> (c'',f').
/// d >= 5: BS(b,c); BS(b',e1), BS(c',f1); BS(b'',e2), BS(c'',f2).
/// Kept modes are always a and d.
Circuit build_circuit(const ProtocolConfig &cfg);

/// initial(a,b) (x) initial(c,d) (x) ancilla state(s), before the circuit.
PureState composite_input(const ProtocolConfig &cfg);
FloatState composite_input_float(const ProtocolConfig &cfg);

/// Canonical rank-`rank` state on (m, n) with block phase theta:
/// rank 2: psi-_{1,2}; rank 3: |1,2>-|2,1> + e^{i theta}|3,4>;
/// rank 4: psi-_{1,2} + e^{i theta} psi-_{3,4}; rank 5: adds |5,6>; rank 6: adds psi-_{5,6}.
PureState swap_target(int rank, const std::string &m, const std::string &n, int quarter_turns = 0);
FloatState swap_target_float(int rank, const std::string &m, const std::string &n, double radians = 0.0);

enum class TimeBin { kEarly, kLate };
enum class Polarization { kH, kV };

/// |1>=H(te), |2>=V(te), |3>=H(tl), |4>=V(tl).
int hyper_label(TimeBin t, Polarization p);
std::pair<TimeBin, Polarization> hyper_decode(int label);
std::string hyper_symbol(int label);

/// Renders a state in time-bin/polarization notation, e.g.
/// "(|H(te),V(te)⟩−|V(te),H(te)⟩)/√2". Throws for internal labels above 4.
std::string hyper_render(const PureState &s);
/// The same layout with numeric labels, e.g. "(|1,2⟩−|2,1⟩)/√2".
std::string numeric_render(const PureState &s);

}  // namespace hdswap

#endif  // HDSWAP_PROTOCOL_HPP
