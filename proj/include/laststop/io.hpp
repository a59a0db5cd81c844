#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "laststop/bandit.hpp"
#include "laststop/errors.hpp"
#include "laststop/intensity.hpp"
#include "laststop/odds.hpp"

namespace laststop {

inline std::string trim(const std::string& text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return text.substr(begin, end - begin);
}

inline double parse_double(const std::string& token, int line_number) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw validation_error("line " + std::to_string(line_number) + ": '" + token +
                           "' is not a number");
  }
  if (consumed != token.size())
    throw validation_error("line " + std::to_string(line_number) + ": '" + token +
                           "' is not a number");
  return value;
}

// One probability per line; an optional leading header line "p".  Lines
// starting with '#' carry report metadata and are skipped.  When
// line_numbers is given it receives the source line of each value so
// callers can report range errors against the file.
inline std::vector<double> read_probability_csv(std::istream& in,
                                                std::vector<int>* line_numbers = nullptr) {
  std::vector<double> values;
  std::string line;
  int line_number = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_number;
    std::string token = trim(line);
    if (token.empty() || token.front() == '#') continue;
    if (first_content && (token == "p" || token == "P")) {
      first_content = false;
      continue;
    }
    first_content = false;
    values.push_back(parse_double(token, line_number));
    if (line_numbers) line_numbers->push_back(line_number);
  }
  return values;
}

inline std::vector<double> read_probability_csv_file(const std::string& path,
                                                     std::vector<int>* line_numbers = nullptr) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open '" + path + "'");
  return read_probability_csv(in, line_numbers);
}

// Two comma-separated probabilities per line; optional header "p1,p2".
// Lines starting with '#' carry report metadata and are skipped.
inline TwoLineInstance read_two_line_csv(std::istream& in) {
  std::vector<double> p1;
  std::vector<double> p2;
  std::string line;
  int line_number = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_number;
    std::string token = trim(line);
    if (token.empty() || token.front() == '#') continue;
    std::size_t comma = token.find(',');
    if (comma == std::string::npos)
      throw validation_error("line " + std::to_string(line_number) +
                             ": expected two comma-separated values");
    std::string left = trim(token.substr(0, comma));
    std::string right = trim(token.substr(comma + 1));
    if (first_content && (left == "p1" || left == "P1")) {
      first_content = false;
      continue;
    }
    first_content = false;
    p1.push_back(parse_double(left, line_number));
    p2.push_back(parse_double(right, line_number));
  }
  return TwoLineInstance(std::move(p1), std::move(p2));
}

inline TwoLineInstance read_two_line_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open '" + path + "'");
  return read_two_line_csv(in);
}

inline IntensityFunction intensity_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    throw validation_error("intensity document needs a string field 'kind'");
  std::string kind = doc["kind"].get<std::string>();

  auto support_of = [&](bool required) -> std::pair<double, double> {
    if (!doc.contains("support")) {
      if (required) throw validation_error("intensity kind '" + kind + "' needs 'support'");
      return {0.0, 1.0};
    }
    const auto& s = doc["support"];
    if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number())
      throw validation_error("'support' must be a numeric pair [a, b]");
    return {s[0].get<double>(), s[1].get<double>()};
  };

  if (kind == "constant") {
    if (!doc.contains("value") || !doc["value"].is_number())
      throw validation_error("constant intensity needs a numeric 'value'");
    auto [a, b] = support_of(true);
    return IntensityFunction::constant(doc["value"].get<double>(), a, b);
  }
  if (kind == "reciprocal") {
    auto [a, b] = support_of(true);
    return IntensityFunction::reciprocal(a, b);
  }
  if (kind == "piecewise_linear") {
    if (!doc.contains("knots") || !doc["knots"].is_array())
      throw validation_error("piecewise_linear intensity needs an array 'knots'");
    std::vector<std::pair<double, double>> knots;
    for (const auto& knot : doc["knots"]) {
      if (!knot.is_array() || knot.size() != 2 || !knot[0].is_number() || !knot[1].is_number())
        throw validation_error("each knot must be a numeric pair [t, value]");
      knots.emplace_back(knot[0].get<double>(), knot[1].get<double>());
    }
    auto f = IntensityFunction::piecewise_linear(std::move(knots));
    if (doc.contains("support")) {
      auto [a, b] = support_of(true);
      if (a != f.support_begin() || b != f.support_end())
        throw validation_error("'support' disagrees with the knot span");
    }
    return f;
  }
  throw validation_error("unknown intensity kind '" + kind + "'");
}

inline IntensityFunction intensity_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error("cannot parse '" + path + "': " + e.what());
  }
  return intensity_from_json(doc);
}

inline nlohmann::json intensity_to_json(const IntensityFunction& f) {
  nlohmann::json doc;
  switch (f.kind()) {
    case IntensityFunction::Kind::constant:
      doc["kind"] = "constant";
      doc["value"] = f.constant_value();
      doc["support"] = {f.support_begin(), f.support_end()};
      break;
    case IntensityFunction::Kind::reciprocal:
      doc["kind"] = "reciprocal";
      doc["support"] = {f.support_begin(), f.support_end()};
      break;
    case IntensityFunction::Kind::piecewise_linear: {
      doc["kind"] = "piecewise_linear";
      auto knots = nlohmann::json::array();
      for (const auto& [t, v] : f.knots()) knots.push_back({t, v});
      doc["knots"] = knots;
      break;
    }
  }
  return doc;
}

inline nlohmann::json threshold_result_to_json(const ThresholdResult& result) {
  return nlohmann::json{{"s", result.s},
                        {"s_prime", result.s_prime},
                        {"tail_odds_at_s", result.tail_odds_at_s},
                        {"win_probability", result.win_probability},
                        {"tie_diagnostic", result.tie_diagnostic}};
}

// Shortest decimal form that round-trips a double.
inline std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  double readback = 0.0;
  std::sscanf(buffer, "%lf", &readback);
  if (readback == value) {
    for (int precision = 1; precision < 17; ++precision) {
      char shorter[40];
      std::snprintf(shorter, sizeof(shorter), "%.*g", precision, value);
      std::sscanf(shorter, "%lf", &readback);
      if (readback == value) return shorter;
    }
  }
  return buffer;
}

}  // namespace laststop
