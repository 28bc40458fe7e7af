#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kbsm {

/// Malformed text input. `position` is a byte offset into the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FuelExhausted : public ReductionError {
 public:
  using ReductionError::ReductionError;
};

class CycleDetected : public ReductionError {
 public:
  using ReductionError::ReductionError;
};

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CrossingLimitExceeded : public DiagramError {
 public:
  using DiagramError::DiagramError;
};

class NotACrossing : public DiagramError {
 public:
  using DiagramError::DiagramError;
};

class MoveNotApplicable : public DiagramError {
 public:
  using DiagramError::DiagramError;
};

}  // namespace kbsm
