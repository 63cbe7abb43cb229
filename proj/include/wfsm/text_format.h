// Line-oriented text form of a machine:
//
//   NWFSM <arity> tropical
//   I <state>
//   F <state> <weight>
//   T <src> <dst> <label_1> ... <label_n> <weight> [C <g>:<tape>,<tape>,...]*
//
// A label is a single symbol, `<eps>`, or a wildcard written `<any-not>`
// followed by its excluded symbols (`<any-not>_` admits everything but the
// underscore). Weights are decimals or `inf`. Blank lines and lines starting
// with `#` are ignored on input.

#ifndef WFSM_TEXT_FORMAT_H_
#define WFSM_TEXT_FORMAT_H_

#include <cstddef>
#include <string>
#include <string_view>

#include "wfsm/machine.h"

namespace wfsm {

class FormatError : public MachineError {
 public:
  FormatError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string Serialize(const Machine& m);

// The result uses the standard alphabet. Throws FormatError naming the
// offending line.
Machine Deserialize(std::string_view text);

void WriteMachineFile(const Machine& m, const std::string& path);
Machine ReadMachineFile(const std::string& path);

}  // namespace wfsm

#endif  // WFSM_TEXT_FORMAT_H_
