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

#ifndef LOQSIM_DSL_HPP
#define LOQSIM_DSL_HPP

#include <stdexcept>
#include <string>

#include "loqsim/gate.hpp"

namespace loqsim {

// Parse failure with 1-based source line.  what() reads "line N: message".
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Plain-text circuit description, one statement per line:
//
//   modes <n>                      mode count, must precede everything else
//   label <idx> <name>             optional mode label
//   bs <i> <j> R=<reflectivity>    beam splitter
//   hwp <i> <j> theta=<degrees>    half-wave plate across a rail pair
//   qwp <i> <j> theta=<degrees>    quarter-wave plate across a rail pair
//   pbs <iH> <iV> <jH> <jV>        polarizing splitter on two rail pairs
//   phase <i> phi=<radians>        single-mode phase shift
//   input control|target <m0> <m1>   qubit input rails (|0>, |1>)
//   output control|target <m0> <m1>  qubit output rails
//
// '#' starts a comment; blank lines are ignored.  Elements apply in file
// order.  Both input and output rails for both qubits are required.
Circuit parse_circuit(const std::string& text);

// Canonical text form; parse_circuit(serialize_circuit(c)) == c exactly
// (numbers are printed with enough digits to round-trip).
std::string serialize_circuit(const Circuit& circuit);

Circuit load_circuit_file(const std::string& path);
void save_circuit_file(const Circuit& circuit, const std::string& path);

}  // namespace loqsim

#endif  // LOQSIM_DSL_HPP
