// SPDX-License-Identifier: Apache-2.0
//
// JSON model files and CSV result emission for the command-line tool.
#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wishart_sum/wishart_model.hpp"

namespace wishart_sum {

// Model JSON comes in two shapes, exactly one of which must be present:
//   {"m": 4, "sigma2": 1.0, "terms": [{"p": 24, "a_db": 24.7}, ...]}
//   {"sigma2": 1.0, "branches": [{"tx": 4, "rx": 4, "gain_db": 19.8}, ...]}
// Each term carries exactly one of a_db / a_linear.
SumSpec parse_model(const std::string &json_text);
SumSpec load_model(const std::string &path);

// Two-hop relay file: {"first_hop": {...}, "second_hop": {...}} with each
// hop in either model shape.
std::pair<SumSpec, SumSpec> parse_relay_pair(const std::string &json_text);
std::pair<SumSpec, SumSpec> load_relay_pair(const std::string &path);

// Canonical round-trippable form (m / sigma2 / terms with a_linear).
std::string echo_model(const SumSpec &spec);

// Named columns of equal length, full double precision.
void write_csv(std::ostream &os, const std::vector<std::string> &headers,
               const std::vector<std::vector<double>> &columns);
void write_csv_file(const std::string &path, const std::vector<std::string> &headers,
                    const std::vector<std::vector<double>> &columns);

} // namespace wishart_sum
