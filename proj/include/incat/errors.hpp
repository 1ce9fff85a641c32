#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace incat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed structure file, formula text or report text.
///
/// `location()` is a 1-based line number for line-oriented formats and a
/// 0-based byte offset for formula text; `what()` already includes it.
class ParseError : public Error {
 public:
  ParseError(std::size_t location, const std::string& message)
      : Error(message), location_(location) {}

  std::size_t location() const noexcept { return location_; }

 private:
  std::size_t location_;
};

/// A membership relation contains a directed cycle where a well-founded one
/// was required. The cycle is listed child-to-parent and closes on its first
/// element.
class IllFoundedError : public Error {
 public:
  IllFoundedError(int tag, std::vector<std::size_t> cycle)
      : Error(describe(tag, cycle)), tag_(tag), cycle_(std::move(cycle)) {}

  int tag() const noexcept { return tag_; }
  const std::vector<std::size_t>& cycle() const noexcept { return cycle_; }

 private:
  static std::string describe(int tag, const std::vector<std::size_t>& cycle) {
    std::string s = "e" + std::to_string(tag) + " is ill-founded: cycle";
    for (auto v : cycle) s += " " + std::to_string(v);
    return s;
  }

  int tag_;
  std::vector<std::size_t> cycle_;
};

/// Two distinct elements share a member-set where extensionality was
/// required.
class NonExtensionalError : public Error {
 public:
  NonExtensionalError(int tag, std::size_t a, std::size_t b)
      : Error("e" + std::to_string(tag) + " is not extensional: elements " +
              std::to_string(a) + " and " + std::to_string(b) +
              " have equal member-sets"),
        tag_(tag),
        first_(a),
        second_(b) {}

  int tag() const noexcept { return tag_; }
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  int tag_;
  std::size_t first_;
  std::size_t second_;
};

}  // namespace incat
