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

#ifndef HDSWAP_FOCK_HPP
#define HDSWAP_FOCK_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hdswap/backend.hpp"

namespace hdswap {

inline constexpr int kMaxInternal = 6;

/// One detector cell: a spatial mode together with an internal mode 1..6.
struct ModeCell {
    std::string spatial;
    int internal = 1;

    auto operator<=>(const ModeCell &) const = default;
};

std::string to_string(const ModeCell &cell);

/// Photon counts per cell. Vacuum cells are absent; entries are sorted.
class OccupationVector {
   public:
    using Entry = std::pair<ModeCell, int>;

    OccupationVector() = default;
    OccupationVector(std::initializer_list<Entry> entries);

    void add(const ModeCell &cell, int count = 1);

    int count(const ModeCell &cell) const;
    int total() const { return total_; }
    bool empty() const { return entries_.empty(); }
    const std::vector<Entry> &entries() const { return entries_; }

    /// Photons in all cells of one spatial mode.
    int spatial_count(const std::string &spatial) const;
    std::set<std::string> spatial_modes() const;

    /// Entries whose spatial mode satisfies `keep`.
    OccupationVector restricted(const std::function<bool(const std::string &)> &keep) const;
    /// Union of two vectors (counts add).
    OccupationVector merged(const OccupationVector &other) const;

    /// prod n! over cells; the squared norm of the corresponding creation monomial.
    std::uint64_t factorial_weight() const;

    auto operator<=>(const OccupationVector &) const = default;
    bool operator==(const OccupationVector &) const = default;

   private:
    std::vector<Entry> entries_;
    int total_ = 0;
};

std::string to_string(const OccupationVector &occ);

/// MONOMIAL: coefficient of prod (a_cell^dagger)^n. FOCK: amplitude of the normalized Fock ket.
enum class Convention { kMonomial, kFock };

/// Sparse superposition of occupation vectors with a fixed total photon number.
template <class A>
class BasicState {
   public:
    using Amp = A;
    using Traits = AmplitudeTraits<A>;
    using Probability = typename Traits::Probability;
    using Terms = std::map<OccupationVector, A>;

    explicit BasicState(Convention convention = Convention::kMonomial) : convention_(convention) {}

    static BasicState vacuum(Convention convention = Convention::kFock) { return BasicState(convention); }

    static BasicState basis(const OccupationVector &occ, Convention convention = Convention::kFock) {
        BasicState s(convention);
        s.add_term(occ, Traits::one());
        return s;
    }

    /// Accumulates `amp` onto `occ`; terms that cancel to zero are removed.
    void add_term(const OccupationVector &occ, const A &amp) {
        if (photons_ >= 0 && !terms_.empty() && occ.total() != photons_) {
            throw std::invalid_argument("state mixes photon numbers " + std::to_string(photons_) + " and " +
                                        std::to_string(occ.total()));
        }
        for (const auto &[cell, n] : occ.entries()) {
            if (cell.internal < 1 || cell.internal > kMaxInternal) {
                throw std::invalid_argument("internal mode out of range in " + to_string(cell));
            }
            modes_.insert(cell.spatial);
        }
        photons_ = occ.total();
        auto [it, inserted] = terms_.try_emplace(occ, amp);
        if (!inserted) {
            it->second += amp;
        }
        if (Traits::is_zero(it->second)) {
            terms_.erase(it);
        }
    }

    /// Declares spatial modes that may be empty (e.g. the vacuum side of a splitter).
    void declare_mode(const std::string &spatial) { modes_.insert(spatial); }
    void declare_modes(const std::set<std::string> &spatial) { modes_.insert(spatial.begin(), spatial.end()); }

    const Terms &terms() const { return terms_; }
    Convention convention() const { return convention_; }
    const std::set<std::string> &modes() const { return modes_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    /// Photon number shared by every term; 0 for an empty state.
    int photon_number() const { return terms_.empty() ? 0 : photons_; }

    A amplitude(const OccupationVector &occ) const {
        auto it = terms_.find(occ);
        return it == terms_.end() ? Traits::zero() : it->second;
    }

    /// <s|s> in the Fock inner product.
    Probability norm_squared() const {
        Probability total = Traits::probability_from_int(0);
        for (const auto &[occ, amp] : terms_) {
            total += weight_of(occ) * Traits::norm(amp);
        }
        return total;
    }

    /// Weight turning |coefficient|^2 into a Fock probability for this convention.
    Probability weight_of(const OccupationVector &occ) const {
        if (convention_ == Convention::kFock) {
            return Traits::probability_from_int(1);
        }
        return Traits::probability_from_int(static_cast<std::int64_t>(occ.factorial_weight()));
    }

    BasicState scaled(const A &factor) const {
        BasicState out(convention_);
        out.modes_ = modes_;
        for (const auto &[occ, amp] : terms_) {
            out.add_term(occ, amp * factor);
        }
        return out;
    }

    BasicState &operator+=(const BasicState &other) {
        require_same_convention(other);
        for (const auto &[occ, amp] : other.terms_) {
            add_term(occ, amp);
        }
        modes_.insert(other.modes_.begin(), other.modes_.end());
        return *this;
    }
    BasicState &operator-=(const BasicState &other) { return *this += other.scaled(-Traits::one()); }
    friend BasicState operator+(BasicState x, const BasicState &y) { return x += y; }
    friend BasicState operator-(BasicState x, const BasicState &y) { return x -= y; }

    /// Terms satisfying `keep`; declared modes are preserved.
    BasicState filtered(const std::function<bool(const OccupationVector &)> &keep) const {
        BasicState out(convention_);
        out.modes_ = modes_;
        for (const auto &[occ, amp] : terms_) {
            if (keep(occ)) {
                out.add_term(occ, amp);
            }
        }
        return out;
    }

    /// Exact equality of terms and convention (declared modes ignored).
    bool same_terms(const BasicState &other) const {
        if (convention_ != other.convention_ || terms_.size() != other.terms_.size()) {
            return false;
        }
        auto it = other.terms_.begin();
        for (const auto &[occ, amp] : terms_) {
            if (!(occ == it->first) || !Traits::equal(amp, it->second)) {
                return false;
            }
            ++it;
        }
        return true;
    }

    BasicState to_fock() const { return converted(Convention::kFock); }
    BasicState to_monomial() const { return converted(Convention::kMonomial); }

    void require_same_convention(const BasicState &other) const {
        if (convention_ != other.convention_) {
            throw std::invalid_argument("states use different amplitude conventions");
        }
    }

   private:
    BasicState converted(Convention target) const {
        if (target == convention_) {
            return *this;
        }
        BasicState out(target);
        out.modes_ = modes_;
        for (const auto &[occ, amp] : terms_) {
            std::uint64_t w = occ.factorial_weight();
            A factor = target == Convention::kFock ? Traits::sqrt_of(w) : Traits::inv_sqrt_of(w);
            out.add_term(occ, amp * factor);
        }
        return out;
    }

    Terms terms_;
    std::set<std::string> modes_;
    Convention convention_;
    int photons_ = -1;
};

using PureState = BasicState<Amplitude>;
using FloatState = BasicState<FloatAmplitude>;

/// Product state on disjoint spatial modes.
template <class A>
BasicState<A> tensor(const BasicState<A> &s1, const BasicState<A> &s2) {
    s1.require_same_convention(s2);
    for (const auto &m : s2.modes()) {
        if (s1.modes().count(m) != 0) {
            throw std::invalid_argument("tensor: spatial mode '" + m + "' appears in both factors");
        }
    }
    BasicState<A> out(s1.convention());
    out.declare_modes(s1.modes());
    out.declare_modes(s2.modes());
    for (const auto &[o1, a1] : s1.terms()) {
        for (const auto &[o2, a2] : s2.terms()) {
            out.add_term(o1.merged(o2), a1 * a2);
        }
    }
    return out;
}

/// <s1|s2> in the Fock inner product. A FOCK operand is brought to MONOMIAL when conventions differ.
template <class A>
A inner_product(const BasicState<A> &s1, const BasicState<A> &s2) {
    using Traits = AmplitudeTraits<A>;
    if (s1.convention() != s2.convention()) {
        return s1.convention() == Convention::kFock ? inner_product(s1.to_monomial(), s2)
                                                    : inner_product(s1, s2.to_monomial());
    }
    A total = Traits::zero();
    const auto &small = s1.size() <= s2.size() ? s1.terms() : s2.terms();
    const auto &large = s1.size() <= s2.size() ? s2.terms() : s1.terms();
    for (const auto &[occ, amp] : small) {
        auto it = large.find(occ);
        if (it == large.end()) {
            continue;
        }
        const A &a1 = s1.size() <= s2.size() ? amp : it->second;
        const A &a2 = s1.size() <= s2.size() ? it->second : amp;
        A term = Traits::conj(a1) * a2;
        if (s1.convention() == Convention::kMonomial) {
            term = term * Traits::from_int(static_cast<std::int64_t>(occ.factorial_weight()));
        }
        total += term;
    }
    return total;
}

template <class A>
struct Normalized {
    BasicState<A> state;
    /// norm^2 of the input.
    typename AmplitudeTraits<A>::Probability norm_squared;
    /// False when 1/norm is not an exact amplitude; `state` is then the unscaled input.
    bool scaled = true;
};

/// Scales to unit norm when 1/norm is exactly representable; otherwise flags the input.
Normalized<Amplitude> normalize(const PureState &s);
Normalized<FloatAmplitude> normalize(const FloatState &s);

/// Exact-to-float conversion; used to cross-check the two backends.
FloatState to_float(const PureState &s);

}  // namespace hdswap

#endif  // HDSWAP_FOCK_HPP
