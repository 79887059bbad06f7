#pragma once

#include <stdexcept>
#include <string>

namespace regdecomp {

// Violated input contract: bad shapes, out-of-range parameters, unmet norm
// bounds. Mapped to exit code 1 by the CLI.
class precondition_error : public std::invalid_argument {
 public:
  explicit precondition_error(const std::string& what)
      : std::invalid_argument(what) {}
};

// An exact mode was asked to enumerate more than the 2^20 step budget, or an
// exact mode does not exist for the requested family. Exit code 2.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable, unparsable, or unwritable files. Exit code 3.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace regdecomp
