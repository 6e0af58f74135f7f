#pragma once

#include <stdexcept>
#include <string>

namespace wh {

// Precondition violated by the caller (bad index, length mismatch, ...).
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive search refused because the instance exceeds the configured cap.
class CapExceeded : public std::runtime_error {
public:
  CapExceeded(const std::string& what, long size, long cap)
      : std::runtime_error(what + ": size " + std::to_string(size) + " exceeds cap " +
                           std::to_string(cap)),
        size_(size),
        cap_(cap) {}
  long size() const { return size_; }
  long cap() const { return cap_; }

private:
  long size_;
  long cap_;
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

}  // namespace wh
