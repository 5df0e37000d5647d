#ifndef MICHEL_ERRORS_HPP
#define MICHEL_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "michel/ast.hpp"

namespace michel {

inline std::string pos_prefix(Pos pos) {
  if (pos.line <= 0) return "";
  return std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": ";
}

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, Pos pos)
      : std::runtime_error(pos_prefix(pos) + msg), pos_(pos) {}
  Pos pos() const { return pos_; }

 private:
  Pos pos_;
};

// Michelson stack-type errors, literal/type mismatches, and Albert's
// linearity violations all surface as TypeError.
class TypeError : public std::runtime_error {
 public:
  TypeError(const std::string& msg, Pos pos = Pos{})
      : std::runtime_error(pos_prefix(pos) + msg), pos_(pos) {}
  Pos pos() const { return pos_; }

 private:
  Pos pos_;
};

}  // namespace michel

#endif  // MICHEL_ERRORS_HPP
