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

#ifndef HDSWAP_SERIALIZE_HPP
#define HDSWAP_SERIALIZE_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "hdswap/amplitude.hpp"
#include "hdswap/fock.hpp"
#include "hdswap/measure.hpp"
#include "hdswap/optics.hpp"
#include "hdswap/protocol.hpp"

namespace hdswap {

using Json = nlohmann::ordered_json;

/// {"re": "3", "im": "-1", "k": 2}
Json to_json(const Amplitude &a);
Amplitude amplitude_from_json(const Json &j);

/// {"num": "1", "den": "512"}
Json to_json(const Rational &q);
Rational rational_from_json(const Json &j);

/// Sorted list of {"occupation": [[spatial, internal, count], ...], "amp": ...}.
Json state_to_json(const PureState &s);
Json state_to_json(const FloatState &s);
/// Reads a MONOMIAL state dump; spatial modes come from the occupations.
PureState state_from_json(const Json &j);

Json to_json(const Circuit &c);
Circuit circuit_from_json(const Json &j);
Circuit load_circuit(const std::filesystem::path &path);
void save_circuit(const Circuit &c, const std::filesystem::path &path);

Json to_json(const ProtocolConfig &cfg);
ProtocolConfig config_from_json(const Json &j);

std::uint64_t fnv1a(const std::string &bytes);
/// "fnv1a:" followed by 16 hex digits of the compact config echo.
std::string input_hash(const ProtocolConfig &cfg);

Json to_json(const EventCounts &counts);

Json report_to_json(const HeraldReport<Amplitude> &report, const std::optional<EventCounts> &counts = std::nullopt);
Json report_to_json(const HeraldReport<FloatAmplitude> &report,
                    const std::optional<EventCounts> &counts = std::nullopt);

/// One line per row; rationals as "num/den".
std::string report_to_csv(const HeraldReport<Amplitude> &report);
std::string report_to_csv(const HeraldReport<FloatAmplitude> &report);

}  // namespace hdswap

#endif  // HDSWAP_SERIALIZE_HPP
