#include "dmmc/fraction.hpp"

#include <cctype>
#include <numeric>

#include "dmmc/error.hpp"

namespace dmmc {

namespace {

std::uint64_t parse_digits(std::string_view digits, std::string_view whole) {
  std::uint64_t value = 0;
  for (const char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InvalidArgument("not a number: '" + std::string(whole) + "'");
    }
    if (value > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) {
      throw InvalidArgument("number out of range: '" + std::string(whole) + "'");
    }
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return value;
}

}  // namespace

Fraction::Fraction(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw InvalidArgument("fraction with zero denominator");
  const auto g = std::gcd(num, den);
  num_ = g ? num / g : 0;
  den_ = g ? den / g : 1;
}

Fraction Fraction::parse(std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty number");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (num.empty() || den.empty()) throw InvalidArgument("not a number: '" + std::string(text) + "'");
    return Fraction(parse_digits(num, text), parse_digits(den, text));
  }
  const auto dot = text.find('.');
  const auto int_part = text.substr(0, dot);
  const auto frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (int_part.empty() && frac_part.empty()) {
    throw InvalidArgument("not a number: '" + std::string(text) + "'");
  }
  if (frac_part.size() > 18) throw InvalidArgument("too many decimals: '" + std::string(text) + "'");
  std::uint64_t scale = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
  const auto whole = parse_digits(int_part, text);
  const auto frac = parse_digits(frac_part, text);
  if (whole > (std::numeric_limits<std::uint64_t>::max() - frac) / scale) {
    throw InvalidArgument("number out of range: '" + std::string(text) + "'");
  }
  return Fraction(whole * scale + frac, scale);
}

std::string Fraction::to_decimal(int digits) const {
  unsigned __int128 scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round half up
  const unsigned __int128 scaled = (static_cast<unsigned __int128>(num_) * scale * 2 + den_) / (2 * static_cast<unsigned __int128>(den_));
  const auto whole = static_cast<std::uint64_t>(scaled / scale);
  auto frac = static_cast<std::uint64_t>(scaled % scale);
  std::string out = std::to_string(whole);
  if (digits > 0) {
    std::string tail(static_cast<std::size_t>(digits), '0');
    for (int i = digits - 1; i >= 0; --i) {
      tail[static_cast<std::size_t>(i)] = static_cast<char>('0' + frac % 10);
      frac /= 10;
    }
    out += '.';
    out += tail;
  }
  return out;
}

std::string Fraction::to_short_decimal(int digits) const {
  auto s = to_decimal(digits);
  if (s.find('.') == std::string::npos) return s;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::string Fraction::to_ratio_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace dmmc
