#pragma once

#include <stdexcept>
#include <string>

namespace srk {

// Error categories; the numeric values double as CLI exit codes and
// C-API status codes.
enum class ErrorCode : int {
  invalid = 1,  // bad input, failed validation, contract violation
  numeric = 2,  // non-finite state or other numerical failure
  io = 3,       // file system / parse-from-disk failures
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class InvalidError : public Error {
 public:
  explicit InvalidError(const std::string& what) : Error(ErrorCode::invalid, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what, long step_index = -1)
      : Error(ErrorCode::numeric, what), step_index_(step_index) {}
  // Index of the integration step that produced a non-finite state, or -1.
  long step_index() const { return step_index_; }

 private:
  long step_index_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

inline void require(bool condition, const std::string& what) {
  if (!condition) throw InvalidError(what);
}

}  // namespace srk
