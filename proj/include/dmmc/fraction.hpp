#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace dmmc {

/// Non-negative exact rational. Scores, likelihoods and thresholds are all
/// ratios of small counts, so every comparison in the library is done on
/// these rather than on doubles.
class Fraction {
 public:
  constexpr Fraction() = default;
  /// Throws InvalidArgument when den == 0.
  Fraction(std::uint64_t num, std::uint64_t den);

  static Fraction zero() { return Fraction(0, 1); }
  static Fraction one() { return Fraction(1, 1); }

  /// Parses a plain decimal ("0.9", "1", ".75", "16/17" is also accepted).
  /// Throws InvalidArgument on anything else, including negatives.
  static Fraction parse(std::string_view text);

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// Fixed-point rendering, rounded half-up, e.g. to_decimal(6) of 4/5 is "0.800000".
  std::string to_decimal(int digits = 6) const;
  /// Shortest exact-enough rendering: trailing zeros of to_decimal(digits) dropped.
  std::string to_short_decimal(int digits = 6) const;
  /// "num/den" in lowest terms.
  std::string to_ratio_string() const;

  friend bool operator==(const Fraction& a, const Fraction& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) noexcept {
    const unsigned __int128 lhs = static_cast<unsigned __int128>(a.num_) * b.den_;
    const unsigned __int128 rhs = static_cast<unsigned __int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace dmmc
