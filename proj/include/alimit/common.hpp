#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace alimit {

/// First line of every text file this library writes.
inline constexpr std::string_view kFormatHeader = "# alpha-limit v1";
/// Same tag, as stored in the "format" field of JSON documents.
inline constexpr std::string_view kFormatTag = "alpha-limit v1";

/// A computed quantity broke an invariant that the mathematics guarantees.
/// Indicates a bug or a numerical breakdown, never bad user input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// (alpha, lambda) lies outside the regime a theorem-backed check requires.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace alimit
