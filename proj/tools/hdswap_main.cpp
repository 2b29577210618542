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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hdswap/measure.hpp"
#include "hdswap/serialize.hpp"

namespace {

using namespace hdswap;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitInvariant = 2;

struct ProtocolFlags {
    int dim = 4;
    std::string detector = "threshold";
    std::string heralds = "fixed";
    std::string phase = "0";
    std::string variant = "standard";
    std::string backend = "exact";
    bool symmetric = false;
    std::string preset;
};

void add_protocol_flags(CLI::App &cmd, ProtocolFlags &f) {
    cmd.add_option("--dim", f.dim, "Entanglement dimension (3..6)");
    cmd.add_option("--detector", f.detector, "threshold | pnr");
    cmd.add_option("--heralds", f.heralds, "fixed | flexible");
    cmd.add_option("--ancilla-phase", f.phase, "Ancilla phase: radians, or a multiple of pi such as pi, pi/2, -3pi/2");
    cmd.add_option("--variant", f.variant, "standard | A1 | A2 (dimension 3)");
    cmd.add_option("--backend", f.backend, "exact | float");
    cmd.add_flag("--symmetric", f.symmetric, "Use the symmetric ancilla form (dimension 4)");
    cmd.add_option("--preset", f.preset, "Named setup; hyper4d is the time-bin/polarization layout");
}

double parse_phase(const std::string &text) {
    static const std::regex pi_form(R"(^\s*([+-]?)(\d*)\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, pi_form)) {
        double k = m[2].str().empty() ? 1.0 : std::stod(m[2].str());
        double den = m[3].str().empty() ? 1.0 : std::stod(m[3].str());
        if (den == 0) {
            throw std::invalid_argument("phase '" + text + "' divides by zero");
        }
        return (m[1].str() == "-" ? -1.0 : 1.0) * k * M_PI / den;
    }
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception &) {
        throw std::invalid_argument("cannot read phase '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(value)) {
        throw std::invalid_argument("cannot read phase '" + text + "'");
    }
    return value;
}

ProtocolConfig make_config(const ProtocolFlags &f) {
    ProtocolConfig cfg;
    if (!f.preset.empty()) {
        if (f.preset != "hyper4d") {
            throw std::invalid_argument("unknown preset '" + f.preset + "'");
        }
        if (f.dim != 4) {
            throw std::invalid_argument("preset hyper4d fixes --dim 4");
        }
    }
    cfg.dimension = f.dim;
    cfg.detector = parse_detector_model(f.detector);
    cfg.heralds = parse_herald_assignment(f.heralds);
    cfg.variant = parse_initial_variant(f.variant);
    cfg.backend = parse_backend(f.backend);
    cfg.symmetric_ancilla = f.symmetric;
    cfg.ancilla_radians = parse_phase(f.phase);
    cfg.validate();
    return cfg;
}

template <class Report>
void print_summary(std::ostream &out, const Report &report) {
    out << "config " << to_json(report.config).dump() << "\n";
    out << "total_probability " << probability_to_string(report.total_probability) << "\n";
    for (const auto &[cls, agg] : report.aggregates) {
        out << to_string(cls) << " events=" << agg.events << " probability=" << probability_to_string(agg.probability)
            << " coefficient_weight=" << probability_to_string(agg.coefficient_weight) << "\n";
    }
}

void print_counts(std::ostream &out, const EventCounts &c) {
    auto line = [&](const char *name, const CountTriple &t) {
        out << "counts " << name << " total=" << t.total << " coincidence=" << t.coincidence
            << " success=" << t.success << "\n";
    };
    line("full_configuration", c.full_configuration);
    line("pnr_signature", c.pnr_signature);
    line("threshold_signature", c.threshold_signature);
}

void write_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot write " + path.string());
    }
    out << text;
}

int cmd_swap(const ProtocolFlags &flags, const std::string &out_dir) {
    ProtocolConfig cfg = make_config(flags);
    std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::invalid_argument("cannot create output directory " + dir.string());
    }
    if (cfg.backend == Backend::kFloat) {
        auto report = run_protocol_float(cfg);
        print_summary(std::cout, report);
        write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
        write_file(dir / "report.csv", report_to_csv(report));
    } else {
        auto report = run_protocol(cfg);
        EventCounts counts = count_events(cfg);
        print_summary(std::cout, report);
        print_counts(std::cout, counts);
        if (flags.preset == "hyper4d") {
            for (const auto &row : report.rows) {
                if (row.cls == HeraldClass::kSwap4D) {
                    std::cout << "herald " << to_string(row.pattern) << " -> " << hyper_render(*row.heralded) << "\n";
                }
            }
        }
        write_file(dir / "report.json", report_to_json(report, counts).dump(2) + "\n");
        write_file(dir / "report.csv", report_to_csv(report));
    }
    std::cout << "wrote " << (dir / "report.json").string() << " " << (dir / "report.csv").string() << "\n";
    return kExitOk;
}

int cmd_herald(const ProtocolFlags &flags, const std::string &pattern_text, const std::string &kept_text) {
    ProtocolConfig cfg = make_config(flags);
    if (cfg.backend != Backend::kExact) {
        throw std::invalid_argument("herald renders exact states; use --backend exact");
    }
    Circuit circuit = build_circuit(cfg);
    std::array<std::string, 2> pair = {circuit.kept[0], circuit.kept[1]};
    if (!kept_text.empty()) {
        auto comma = kept_text.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("--kept takes two modes separated by ','");
        }
        pair = {kept_text.substr(0, comma), kept_text.substr(comma + 1)};
    }
    std::vector<std::string> detected;
    ProtocolConfig flexible = cfg;
    flexible.heralds = HeraldAssignment::kFlexible;
    bool known = false;
    for (const auto &p : kept_pairs(flexible, circuit)) {
        known = known || p == pair;
    }
    if (!known) {
        throw std::invalid_argument("kept pair " + pair[0] + "," + pair[1] + " is not an output pair of the circuit");
    }
    for (const auto *group : {&circuit.kept, &circuit.detected}) {
        for (const auto &m : *group) {
            if (m != pair[0] && m != pair[1]) {
                detected.push_back(m);
            }
        }
    }
    DetectionPattern wanted = parse_pattern(pattern_text, cfg.detector);
    for (const auto &[cell, n] : wanted.outcome) {
        if (std::find(detected.begin(), detected.end(), cell.spatial) == detected.end()) {
            throw std::invalid_argument("pattern names '" + cell.spatial + "', which is not a detected mode");
        }
    }

    auto outcomes = enumerate_outcomes(protocol_output(cfg), detected, cfg.detector);
    auto it = std::find_if(outcomes.begin(), outcomes.end(), [&](const auto &o) { return o.pattern == wanted; });
    std::cout << "pattern " << to_string(wanted) << "\n";
    if (it == outcomes.end()) {
        std::cout << "probability 0\n";
        std::cout << "heralded none\n";
        return kExitOk;
    }
    auto rows = classify(std::vector<Outcome<Amplitude>>{*it}, pair, detected, cfg);
    const auto &row = rows.front();
    std::cout << "probability " << to_string(row.probability) << "\n";
    std::cout << "herald_probability " << to_string(row.herald_probability) << "\n";
    std::cout << "class " << to_string(row.cls) << "\n";
    if (!row.heralded) {
        std::cout << "heralded none\n";
        return kExitOk;
    }
    std::cout << "numeric " << numeric_render(*row.heralded) << "\n";
    try {
        std::cout << "hyper " << hyper_render(*row.heralded) << "\n";
    } catch (const std::invalid_argument &) {
        std::cout << "hyper n/a\n";
    }
    std::cout << "fidelity " << to_string(row.fidelity) << "\n";
    return kExitOk;
}

int cmd_decay(double eta, int n, const std::string &eta_sweep, int n_max) {
    std::cout << std::setprecision(12);
    if (eta_sweep.empty() && n_max < 0) {
        std::cout << fidelity_decay(eta, n) << "\n";
        return kExitOk;
    }
    std::vector<double> etas = {eta};
    if (!eta_sweep.empty()) {
        // start:stop:step
        std::stringstream in(eta_sweep);
        std::string part;
        std::vector<double> v;
        while (std::getline(in, part, ':')) {
            v.push_back(std::stod(part));
        }
        if (v.size() != 3 || v[2] <= 0 || v[1] < v[0]) {
            throw std::invalid_argument("--eta-sweep takes start:stop:step with step > 0");
        }
        etas.clear();
        for (int i = 0; v[0] + i * v[2] <= v[1] + 1e-12; ++i) {
            etas.push_back(v[0] + i * v[2]);
        }
    }
    int last = n_max < 0 ? n : n_max;
    int first = n_max < 0 ? n : 0;
    std::cout << "eta,n,fidelity\n";
    for (double e : etas) {
        for (int k = first; k <= last; ++k) {
            std::cout << e << "," << k << "," << fidelity_decay(e, k) << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact simulator for linear-optical high-dimensional entanglement swapping"};
    app.set_version_flag("--version", std::string(HDSWAP_VERSION));
    app.require_subcommand(1);

    ProtocolFlags swap_flags;
    std::string out_dir = ".";
    auto *swap = app.add_subcommand("swap", "Run the protocol and write report.json and report.csv");
    add_protocol_flags(*swap, swap_flags);
    swap->add_option("--out", out_dir, "Output directory");

    ProtocolFlags herald_flags;
    std::string pattern;
    std::string kept;
    auto *herald = app.add_subcommand("herald", "Show the state heralded by one detection pattern");
    add_protocol_flags(*herald, herald_flags);
    herald->add_option("--pattern", pattern, "Detected cells, e.g. b'':3,e':1,f':4,c'':2")->required();
    herald->add_option("--kept", kept, "Kept output pair, e.g. b'',e' (default a,d)");

    double eta = 1.0;
    int n = 0;
    std::string eta_sweep;
    int n_max = -1;
    auto *decay = app.add_subcommand("decay", "Fidelity after n interferences with HOM efficiency eta");
    decay->add_option("--eta", eta, "HOM interference efficiency in [0, 1]");
    decay->add_option("--n", n, "Number of beam-splitter interferences");
    decay->add_option("--eta-sweep", eta_sweep, "CSV sweep over eta: start:stop:step");
    decay->add_option("--n-max", n_max, "CSV sweep over n = 0..n-max");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    try {
        if (*swap) {
            return cmd_swap(swap_flags, out_dir);
        }
        if (*herald) {
            return cmd_herald(herald_flags, pattern, kept);
        }
        return cmd_decay(eta, n, eta_sweep, n_max);
    } catch (const InvariantViolation &e) {
        std::cerr << "hdswap: invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::logic_error &e) {
        std::cerr << "hdswap: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception &e) {
        std::cerr << "hdswap: " << e.what() << "\n";
        return kExitInvariant;
    }
}
