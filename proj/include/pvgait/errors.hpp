#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pvgait {

// A data file that cannot be parsed; carries the 1-based offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A query for which every database candidate was pruned or absent.
class NoMatchError : public std::runtime_error {
 public:
  explicit NoMatchError(const std::string& what) : std::runtime_error(what) {}
};

// A persisted file declaring a format version this build does not read.
class VersionError : public std::runtime_error {
 public:
  explicit VersionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pvgait
