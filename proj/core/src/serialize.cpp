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

#include "hdswap/serialize.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace hdswap {

namespace {

BigInt big_from_json(const Json &j, const char *field) {
    if (!j.contains(field)) {
        throw std::invalid_argument(std::string("missing field '") + field + "'");
    }
    const Json &v = j.at(field);
    if (v.is_number_integer()) {
        return BigInt(v.get<std::int64_t>());
    }
    if (!v.is_string()) {
        throw std::invalid_argument(std::string("field '") + field + "' must be a decimal string");
    }
    const std::string text = v.get<std::string>();
    std::size_t start = (!text.empty() && text[0] == '-') ? 1 : 0;
    if (text.size() == start || text.find_first_not_of("0123456789", start) != std::string::npos) {
        throw std::invalid_argument("'" + text + "' is not a decimal integer");
    }
    return BigInt(text);
}

template <class Probability>
Json probability_json(const Probability &p) {
    if constexpr (std::is_same_v<Probability, Rational>) {
        return to_json(p);
    } else {
        return p;
    }
}

template <class Probability>
std::string probability_csv(const Probability &p) {
    if constexpr (std::is_same_v<Probability, Rational>) {
        return to_string(p);
    } else {
        std::ostringstream out;
        out << std::setprecision(17) << p;
        return out.str();
    }
}

template <class A>
Json state_json(const BasicState<A> &s) {
    Json list = Json::array();
    for (const auto &[occ, amp] : s.terms()) {
        Json cells = Json::array();
        for (const auto &[cell, n] : occ.entries()) {
            cells.push_back(Json::array({cell.spatial, cell.internal, n}));
        }
        Json entry;
        entry["occupation"] = std::move(cells);
        if constexpr (std::is_same_v<A, Amplitude>) {
            entry["amp"] = to_json(amp);
        } else {
            entry["amp"] = Json{{"re", amp.real()}, {"im", amp.imag()}};
        }
        list.push_back(std::move(entry));
    }
    return list;
}

std::string csv_quote(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

template <class A>
Json report_json(const HeraldReport<A> &report, const std::optional<EventCounts> &counts) {
    Json j;
    j["tool"] = "hdswap";
    j["version"] = HDSWAP_VERSION;
    j["input_hash"] = input_hash(report.config);
    j["config"] = to_json(report.config);
    j["total_probability"] = probability_json(report.total_probability);
    if (counts) {
        j["counts"] = to_json(*counts);
    }
    Json aggregates = Json::array();
    for (const auto &[cls, agg] : report.aggregates) {
        aggregates.push_back({{"class", to_string(cls)},
                              {"events", agg.events},
                              {"probability", probability_json(agg.probability)},
                              {"coefficient_weight", probability_json(agg.coefficient_weight)}});
    }
    j["aggregates"] = std::move(aggregates);
    Json rows = Json::array();
    for (const auto &row : report.rows) {
        Json r;
        r["pattern"] = to_string(row.pattern);
        r["kept"] = Json::array({row.kept_pair[0], row.kept_pair[1]});
        r["class"] = to_string(row.cls);
        r["coincidence"] = row.coincidence;
        r["probability"] = probability_json(row.probability);
        r["herald_probability"] = probability_json(row.herald_probability);
        r["coefficient_weight"] = probability_json(row.coefficient_weight);
        r["fidelity"] = probability_json(row.fidelity);
        if (row.cls != HeraldClass::kOther && row.heralded) {
            r["heralded"] = state_json(*row.heralded);
        } else {
            r["heralded"] = nullptr;
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

template <class A>
std::string report_csv(const HeraldReport<A> &report) {
    std::ostringstream out;
    out << "kept,pattern,class,coincidence,probability,herald_probability,coefficient_weight,fidelity\n";
    for (const auto &row : report.rows) {
        out << row.kept_pair[0] << "|" << row.kept_pair[1] << "," << csv_quote(to_string(row.pattern)) << ","
            << to_string(row.cls) << "," << (row.coincidence ? 1 : 0) << "," << probability_csv(row.probability)
            << "," << probability_csv(row.herald_probability) << "," << probability_csv(row.coefficient_weight)
            << "," << probability_csv(row.fidelity) << "\n";
    }
    return out.str();
}

std::vector<std::string> string_list(const Json &j, const char *field) {
    if (!j.contains(field) || !j.at(field).is_array()) {
        throw std::invalid_argument(std::string("missing list '") + field + "'");
    }
    std::vector<std::string> out;
    for (const auto &v : j.at(field)) {
        out.push_back(v.get<std::string>());
    }
    return out;
}

}  // namespace

Json to_json(const Amplitude &a) {
    return Json{{"re", a.re().str()}, {"im", a.im().str()}, {"k", a.half_denom()}};
}

Amplitude amplitude_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("k") || !j.at("k").is_number_integer()) {
        throw std::invalid_argument("amplitude needs re, im and integer k");
    }
    auto k = j.at("k").get<std::int64_t>();
    if (k < 0 || k > 4096) {
        throw std::invalid_argument("amplitude exponent k out of range");
    }
    return Amplitude(big_from_json(j, "re"), big_from_json(j, "im"), static_cast<std::uint32_t>(k));
}

Json to_json(const Rational &q) {
    return Json{{"num", boost::multiprecision::numerator(q).str()},
                {"den", boost::multiprecision::denominator(q).str()}};
}

Rational rational_from_json(const Json &j) {
    BigInt den = big_from_json(j, "den");
    if (den == 0) {
        throw std::invalid_argument("rational with zero denominator");
    }
    return Rational(big_from_json(j, "num"), den);
}

Json state_to_json(const PureState &s) { return state_json(s); }

Json state_to_json(const FloatState &s) { return state_json(s); }

PureState state_from_json(const Json &j) {
    if (!j.is_array()) {
        throw std::invalid_argument("state dump must be a list");
    }
    PureState s(Convention::kMonomial);
    for (const auto &entry : j) {
        OccupationVector occ;
        for (const auto &cell : entry.at("occupation")) {
            if (!cell.is_array() || cell.size() != 3) {
                throw std::invalid_argument("occupation cells are [spatial, internal, count]");
            }
            occ.add(ModeCell{cell[0].get<std::string>(), cell[1].get<int>()}, cell[2].get<int>());
        }
        s.add_term(occ, amplitude_from_json(entry.at("amp")));
    }
    return s;
}

Json to_json(const Circuit &c) {
    Json elements = Json::array();
    for (const auto &bs : c.elements) {
        elements.push_back({{"in", Json::array({bs.in1, bs.in2})}, {"out", Json::array({bs.out1, bs.out2})}});
    }
    return Json{{"modes", c.modes}, {"elements", std::move(elements)}, {"detected", c.detected}, {"kept", c.kept}};
}

Circuit circuit_from_json(const Json &j) {
    if (!j.is_object()) {
        throw std::invalid_argument("circuit description must be an object");
    }
    Circuit c;
    c.modes = string_list(j, "modes");
    c.detected = string_list(j, "detected");
    c.kept = string_list(j, "kept");
    if (!j.contains("elements") || !j.at("elements").is_array()) {
        throw std::invalid_argument("missing list 'elements'");
    }
    for (const auto &e : j.at("elements")) {
        auto in = string_list(e, "in");
        auto out = string_list(e, "out");
        if (in.size() != 2 || out.size() != 2) {
            throw std::invalid_argument("beam splitter needs two inputs and two outputs");
        }
        c.elements.push_back(BeamSplitter{in[0], in[1], out[0], out[1]});
    }
    c.validate();
    return c;
}

Circuit load_circuit(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open circuit file " + path.string());
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw std::invalid_argument("circuit file " + path.string() + ": " + e.what());
    }
    return circuit_from_json(j);
}

void save_circuit(const Circuit &c, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write circuit file " + path.string());
    }
    out << to_json(c).dump(2) << "\n";
}

Json to_json(const ProtocolConfig &cfg) {
    Json j;
    j["dimension"] = cfg.dimension;
    j["detector"] = to_string(cfg.detector);
    j["heralds"] = to_string(cfg.heralds);
    j["variant"] = to_string(cfg.effective_variant());
    j["ancilla_quarter_turns"] = cfg.ancilla_quarter_turns;
    j["ancilla_radians"] = cfg.ancilla_radians ? Json(*cfg.ancilla_radians) : Json(nullptr);
    j["symmetric_ancilla"] = cfg.symmetric_ancilla;
    j["backend"] = to_string(cfg.backend);
    return j;
}

ProtocolConfig config_from_json(const Json &j) {
    ProtocolConfig cfg;
    cfg.dimension = j.value("dimension", cfg.dimension);
    if (j.contains("detector")) {
        cfg.detector = parse_detector_model(j.at("detector").get<std::string>());
    }
    if (j.contains("heralds")) {
        cfg.heralds = parse_herald_assignment(j.at("heralds").get<std::string>());
    }
    if (j.contains("variant")) {
        cfg.variant = parse_initial_variant(j.at("variant").get<std::string>());
    }
    cfg.ancilla_quarter_turns = j.value("ancilla_quarter_turns", cfg.ancilla_quarter_turns);
    if (j.contains("ancilla_radians") && !j.at("ancilla_radians").is_null()) {
        cfg.ancilla_radians = j.at("ancilla_radians").get<double>();
    }
    cfg.symmetric_ancilla = j.value("symmetric_ancilla", cfg.symmetric_ancilla);
    if (j.contains("backend")) {
        cfg.backend = parse_backend(j.at("backend").get<std::string>());
    }
    cfg.validate();
    return cfg;
}

std::uint64_t fnv1a(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string input_hash(const ProtocolConfig &cfg) {
    std::ostringstream out;
    out << "fnv1a:" << std::hex << std::setw(16) << std::setfill('0') << fnv1a(to_json(cfg).dump());
    return out.str();
}

Json to_json(const EventCounts &counts) {
    auto triple = [](const CountTriple &t) {
        return Json{{"total", t.total}, {"coincidence", t.coincidence}, {"success", t.success}};
    };
    return Json{{"full_configuration", triple(counts.full_configuration)},
                {"pnr_signature", triple(counts.pnr_signature)},
                {"threshold_signature", triple(counts.threshold_signature)}};
}

Json report_to_json(const HeraldReport<Amplitude> &report, const std::optional<EventCounts> &counts) {
    return report_json(report, counts);
}

Json report_to_json(const HeraldReport<FloatAmplitude> &report, const std::optional<EventCounts> &counts) {
    return report_json(report, counts);
}

std::string report_to_csv(const HeraldReport<Amplitude> &report) { return report_csv(report); }

std::string report_to_csv(const HeraldReport<FloatAmplitude> &report) { return report_csv(report); }

}  // namespace hdswap
