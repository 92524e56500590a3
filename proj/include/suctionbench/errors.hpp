#pragma once

#include <stdexcept>
#include <string>

namespace suctionbench {

// Base for all toolkit errors raised on bad input (files, configs, formats).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(msg) {}
};

// Parse failure with file/line context.
struct ParseError : Error {
  ParseError(const std::string& path, int line, const std::string& msg)
      : Error(path + ":" + std::to_string(line) + ": " + msg),
        path(path),
        line(line) {}
  std::string path;
  int line;
};

struct InvalidDepthError : Error {
  explicit InvalidDepthError(const std::string& msg) : Error(msg) {}
};

}  // namespace suctionbench
