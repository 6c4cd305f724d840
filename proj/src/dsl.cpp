// Copyright 2026 The loqsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "loqsim/dsl.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace loqsim {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) {
    if (token[0] == '#') break;
    tokens.push_back(token);
  }
  return tokens;
}

int parse_int(const std::string& token, int line) {
  char* end = nullptr;
  const long value = std::strtol(token.c_str(), &end, 10);
  if (end == token.c_str() || *end != '\0') {
    throw ParseError(line, "expected an integer, got '" + token + "'");
  }
  return static_cast<int>(value);
}

double parse_keyed_double(const std::string& token, const std::string& key, int line) {
  const std::string prefix = key + "=";
  if (token.rfind(prefix, 0) != 0) {
    throw ParseError(line, "expected " + prefix + "<value>, got '" + token + "'");
  }
  const std::string number = token.substr(prefix.size());
  char* end = nullptr;
  const double value = std::strtod(number.c_str(), &end);
  if (end == number.c_str() || *end != '\0') {
    throw ParseError(line, "bad numeric value in '" + token + "'");
  }
  return value;
}

void require_arity(const std::vector<std::string>& tokens, std::size_t n, int line) {
  if (tokens.size() != n) {
    throw ParseError(line, "'" + tokens[0] + "' takes " + std::to_string(n - 1) +
                               " arguments, got " + std::to_string(tokens.size() - 1));
  }
}

int checked_mode(int index, int mode_count, int line) {
  if (index < 0 || index >= mode_count) {
    throw ParseError(line, "mode index " + std::to_string(index) +
                               " outside [0, " + std::to_string(mode_count) + ")");
  }
  return index;
}

QubitRails* rails_slot(Circuit& circuit, const std::string& direction,
                       const std::string& which, int line) {
  const bool is_input = direction == "input";
  if (which == "control") return is_input ? &circuit.control_in : &circuit.control_out;
  if (which == "target") return is_input ? &circuit.target_in : &circuit.target_out;
  throw ParseError(line, "expected 'control' or 'target', got '" + which + "'");
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

Circuit parse_circuit(const std::string& text) {
  Circuit circuit;
  bool modes_seen = false;
  bool control_in = false, target_in = false, control_out = false, target_out = false;

  std::istringstream stream(text);
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    const std::vector<std::string> tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::string& keyword = tokens[0];

    if (keyword == "modes") {
      require_arity(tokens, 2, line_number);
      if (modes_seen) throw ParseError(line_number, "duplicate 'modes' statement");
      const int count = parse_int(tokens[1], line_number);
      if (count < 2) throw ParseError(line_number, "need at least two modes");
      circuit.mode_count = count;
      circuit.labels.assign(static_cast<std::size_t>(count), "");
      modes_seen = true;
      continue;
    }
    if (!modes_seen) {
      throw ParseError(line_number, "'modes' must come before '" + keyword + "'");
    }

    if (keyword == "label") {
      require_arity(tokens, 3, line_number);
      const int index = checked_mode(parse_int(tokens[1], line_number),
                                     circuit.mode_count, line_number);
      circuit.labels[static_cast<std::size_t>(index)] = tokens[2];
    } else if (keyword == "bs") {
      require_arity(tokens, 4, line_number);
      const int i = checked_mode(parse_int(tokens[1], line_number), circuit.mode_count,
                                 line_number);
      const int j = checked_mode(parse_int(tokens[2], line_number), circuit.mode_count,
                                 line_number);
      const double r = parse_keyed_double(tokens[3], "R", line_number);
      if (r < 0.0 || r > 1.0) {
        throw ParseError(line_number, "reflectivity must be in [0, 1]");
      }
      circuit.elements.push_back(OpticalElement::beam_splitter(i, j, r));
    } else if (keyword == "hwp" || keyword == "qwp") {
      require_arity(tokens, 4, line_number);
      const int i = checked_mode(parse_int(tokens[1], line_number), circuit.mode_count,
                                 line_number);
      const int j = checked_mode(parse_int(tokens[2], line_number), circuit.mode_count,
                                 line_number);
      const double theta = parse_keyed_double(tokens[3], "theta", line_number);
      circuit.elements.push_back(keyword == "hwp"
                                     ? OpticalElement::half_wave(i, j, theta)
                                     : OpticalElement::quarter_wave(i, j, theta));
    } else if (keyword == "pbs") {
      require_arity(tokens, 5, line_number);
      int modes[4];
      for (int k = 0; k < 4; ++k) {
        modes[k] = checked_mode(parse_int(tokens[static_cast<std::size_t>(k) + 1],
                                          line_number),
                                circuit.mode_count, line_number);
      }
      circuit.elements.push_back(
          OpticalElement::polarizing_bs(modes[0], modes[1], modes[2], modes[3]));
    } else if (keyword == "phase") {
      require_arity(tokens, 3, line_number);
      const int i = checked_mode(parse_int(tokens[1], line_number), circuit.mode_count,
                                 line_number);
      const double phi = parse_keyed_double(tokens[2], "phi", line_number);
      circuit.elements.push_back(OpticalElement::phase(i, phi));
    } else if (keyword == "input" || keyword == "output") {
      require_arity(tokens, 4, line_number);
      QubitRails* rails = rails_slot(circuit, keyword, tokens[1], line_number);
      rails->zero = checked_mode(parse_int(tokens[2], line_number), circuit.mode_count,
                                 line_number);
      rails->one = checked_mode(parse_int(tokens[3], line_number), circuit.mode_count,
                                line_number);
      if (rails->zero == rails->one) {
        throw ParseError(line_number, "qubit rails must be distinct modes");
      }
      (keyword == "input" ? (tokens[1] == "control" ? control_in : target_in)
                          : (tokens[1] == "control" ? control_out : target_out)) = true;
    } else {
      throw ParseError(line_number, "unknown statement '" + keyword + "'");
    }
  }

  if (!modes_seen) throw ParseError(line_number + 1, "missing 'modes' statement");
  if (!control_in) throw ParseError(line_number + 1, "missing 'input control'");
  if (!target_in) throw ParseError(line_number + 1, "missing 'input target'");
  if (!control_out) throw ParseError(line_number + 1, "missing 'output control'");
  if (!target_out) throw ParseError(line_number + 1, "missing 'output target'");
  return circuit;
}

std::string serialize_circuit(const Circuit& circuit) {
  std::ostringstream out;
  out << "modes " << circuit.mode_count << "\n";
  for (std::size_t i = 0; i < circuit.labels.size(); ++i) {
    if (!circuit.labels[i].empty()) {
      out << "label " << i << " " << circuit.labels[i] << "\n";
    }
  }
  for (const OpticalElement& element : circuit.elements) {
    switch (element.kind) {
      case ElementKind::kBeamSplitter:
        out << "bs " << element.modes[0] << " " << element.modes[1]
            << " R=" << format_double(element.value) << "\n";
        break;
      case ElementKind::kHalfWave:
        out << "hwp " << element.modes[0] << " " << element.modes[1]
            << " theta=" << format_double(element.value) << "\n";
        break;
      case ElementKind::kQuarterWave:
        out << "qwp " << element.modes[0] << " " << element.modes[1]
            << " theta=" << format_double(element.value) << "\n";
        break;
      case ElementKind::kPolarizingBs:
        out << "pbs " << element.modes[0] << " " << element.modes[1] << " "
            << element.modes[2] << " " << element.modes[3] << "\n";
        break;
      case ElementKind::kPhase:
        out << "phase " << element.modes[0]
            << " phi=" << format_double(element.value) << "\n";
        break;
    }
  }
  out << "input control " << circuit.control_in.zero << " " << circuit.control_in.one
      << "\n";
  out << "input target " << circuit.target_in.zero << " " << circuit.target_in.one
      << "\n";
  out << "output control " << circuit.control_out.zero << " " << circuit.control_out.one
      << "\n";
  out << "output target " << circuit.target_out.zero << " " << circuit.target_out.one
      << "\n";
  return out.str();
}

Circuit load_circuit_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open circuit file: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_circuit(buffer.str());
}

void save_circuit_file(const Circuit& circuit, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write circuit file: " + path);
  file << serialize_circuit(circuit);
  if (!file) throw std::runtime_error("write failed: " + path);
}

}  // namespace loqsim
