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

#include "hdswap/optics.hpp"

#include <map>

namespace hdswap {

void Circuit::validate() const {
    std::set<std::string> live(modes.begin(), modes.end());
    if (live.size() != modes.size()) {
        throw std::invalid_argument("circuit declares a mode twice");
    }
    for (const auto &bs : elements) {
        if (bs.in1 == bs.in2 || bs.out1 == bs.out2) {
            throw std::invalid_argument("splitter " + bs.in1 + "," + bs.in2 + " needs distinct ports");
        }
        for (const auto &m : {bs.in1, bs.in2}) {
            if (live.erase(m) == 0) {
                throw std::invalid_argument("splitter input '" + m + "' is not a live mode");
            }
        }
        for (const auto &m : {bs.out1, bs.out2}) {
            if (!live.insert(m).second) {
                throw std::invalid_argument("splitter output '" + m + "' collides with a live mode");
            }
        }
    }
    std::set<std::string> roles;
    for (const auto *group : {&detected, &kept}) {
        for (const auto &m : *group) {
            if (live.count(m) == 0) {
                throw std::invalid_argument("terminal mode '" + m + "' is not a circuit output");
            }
            if (!roles.insert(m).second) {
                throw std::invalid_argument("mode '" + m + "' is both kept and detected");
            }
        }
    }
}

std::set<std::string> Circuit::output_modes() const {
    std::set<std::string> live(modes.begin(), modes.end());
    for (const auto &bs : elements) {
        live.erase(bs.in1);
        live.erase(bs.in2);
        live.insert(bs.out1);
        live.insert(bs.out2);
    }
    return live;
}

std::vector<std::array<std::string, 2>> Circuit::terminal_pairs() const {
    std::set<std::string> outputs = output_modes();
    std::vector<std::array<std::string, 2>> pairs;
    for (const auto &bs : elements) {
        if (outputs.count(bs.out1) != 0 && outputs.count(bs.out2) != 0) {
            pairs.push_back({bs.out1, bs.out2});
        }
    }
    return pairs;
}

}  // namespace hdswap
