#ifndef RAM_ERRORS_HPP_
#define RAM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ram {

// Malformed or inconsistent user input (bad files, invalid preferences, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured enumeration or size cap would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An invariant the library itself guarantees was broken. Never expected.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ram

#endif  // RAM_ERRORS_HPP_
