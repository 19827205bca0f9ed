// SPDX-License-Identifier: Apache-2.0

#include "wishart_sum/cli_config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wishart_sum/errors.hpp"

namespace wishart_sum {

namespace {

using nlohmann::json;

json parse_json_or_throw(const std::string &text, const char *what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw validation_error(std::string(what) + ": not valid JSON");
  if (!j.is_object())
    throw validation_error(std::string(what) + ": top level must be an object");
  return j;
}

int int_field(const json &j, const char *key) {
  const auto &v = j.at(key);
  if (!v.is_number_integer())
    throw validation_error(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double num_field(const json &j, const char *key) {
  const auto &v = j.at(key);
  if (!v.is_number())
    throw validation_error(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

SumSpec model_from_json(const json &j) {
  const bool has_terms = j.contains("terms");
  const bool has_branches = j.contains("branches");
  if (has_terms == has_branches)
    throw validation_error("model needs exactly one of 'terms' or 'branches'");

  const double sigma2 = j.contains("sigma2") ? num_field(j, "sigma2") : 1.0;

  if (has_branches) {
    const auto &arr = j.at("branches");
    if (!arr.is_array() || arr.empty())
      throw validation_error("'branches' must be a non-empty array");
    std::vector<AntennaBranch> branches;
    for (const auto &b : arr) {
      if (!b.is_object() || !b.contains("tx") || !b.contains("rx") || !b.contains("gain_db"))
        throw validation_error("each branch needs tx, rx and gain_db");
      branches.push_back({int_field(b, "tx"), int_field(b, "rx"), num_field(b, "gain_db")});
    }
    SumSpec spec = from_antennas(branches, sigma2);
    spec.validate();
    return spec;
  }

  if (!j.contains("m"))
    throw validation_error("model with 'terms' also needs 'm'");
  SumSpec spec;
  spec.m = int_field(j, "m");
  spec.sigma2 = sigma2;
  const auto &arr = j.at("terms");
  if (!arr.is_array() || arr.empty())
    throw validation_error("'terms' must be a non-empty array");
  for (const auto &t : arr) {
    if (!t.is_object() || !t.contains("p"))
      throw validation_error("each term needs 'p'");
    const bool has_db = t.contains("a_db");
    const bool has_lin = t.contains("a_linear");
    if (has_db == has_lin)
      throw validation_error("each term needs exactly one of 'a_db' or 'a_linear'");
    WishartTerm term;
    term.p = int_field(t, "p");
    term.a = has_db ? db_to_linear(num_field(t, "a_db")) : num_field(t, "a_linear");
    spec.terms.push_back(term);
  }
  spec.validate();
  return spec;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw validation_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

} // namespace

SumSpec parse_model(const std::string &json_text) {
  return model_from_json(parse_json_or_throw(json_text, "model"));
}

SumSpec load_model(const std::string &path) { return parse_model(slurp(path)); }

std::pair<SumSpec, SumSpec> parse_relay_pair(const std::string &json_text) {
  json j = parse_json_or_throw(json_text, "relay model");
  if (!j.contains("first_hop") || !j.contains("second_hop"))
    throw validation_error("relay model needs 'first_hop' and 'second_hop'");
  return {model_from_json(j.at("first_hop")), model_from_json(j.at("second_hop"))};
}

std::pair<SumSpec, SumSpec> load_relay_pair(const std::string &path) {
  return parse_relay_pair(slurp(path));
}

std::string echo_model(const SumSpec &spec) {
  json j;
  j["m"] = spec.m;
  j["sigma2"] = spec.sigma2;
  json terms = json::array();
  for (const auto &t : spec.terms)
    terms.push_back({{"p", t.p}, {"a_linear", t.a}});
  j["terms"] = std::move(terms);
  return j.dump(2);
}

void write_csv(std::ostream &os, const std::vector<std::string> &headers,
               const std::vector<std::vector<double>> &columns) {
  if (headers.size() != columns.size() || columns.empty())
    throw validation_error("csv: header count must match column count");
  const std::size_t rows = columns.front().size();
  for (const auto &c : columns)
    if (c.size() != rows)
      throw validation_error("csv: all columns must have the same length");

  for (std::size_t i = 0; i < headers.size(); ++i)
    os << (i ? "," : "") << headers[i];
  os << "\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < columns.size(); ++i)
      os << (i ? "," : "") << fmt_g17(columns[i][r]);
    os << "\n";
  }
}

void write_csv_file(const std::string &path, const std::vector<std::string> &headers,
                    const std::vector<std::vector<double>> &columns) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw validation_error("cannot open file for writing: " + path);
  write_csv(out, headers, columns);
  if (!out)
    throw numerical_error("write failed: " + path);
}

} // namespace wishart_sum
