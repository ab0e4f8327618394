#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace skillrl {

// Contract violation on an operation input or a config field.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Failure discovered while running (non-finite intermediate, spawn failure, io).
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void format_into(std::ostringstream&) {}

template <class T, class... Rest>
void format_into(std::ostringstream& os, const T& v, const Rest&... rest) {
  os << v;
  format_into(os, rest...);
}

}  // namespace detail

template <class... Parts>
std::string concat(const Parts&... parts) {
  std::ostringstream os;
  os.precision(17);
  detail::format_into(os, parts...);
  return os.str();
}

template <class... Parts>
[[noreturn]] void fail_invalid(const Parts&... parts) {
  throw InvalidArgument(concat(parts...));
}

template <class... Parts>
[[noreturn]] void fail_runtime(const Parts&... parts) {
  throw RuntimeFailure(concat(parts...));
}

}  // namespace skillrl
