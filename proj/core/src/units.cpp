#include "ghostsim/units.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace ghostsim {

namespace {

struct Suffix {
  std::string_view text;
  Dimension dim;
  int exponent;
};

constexpr Suffix kSuffixes[] = {
    {"m", Dimension::Length, 0},         {"cm", Dimension::Length, -2},
    {"mm", Dimension::Length, -3},       {"um", Dimension::Length, -6},
    {"\xC2\xB5m", Dimension::Length, -6}, {"\xCE\xBCm", Dimension::Length, -6},
    {"nm", Dimension::Length, -9},       {"pm", Dimension::Length, -12},
    {"s", Dimension::Time, 0},           {"ms", Dimension::Time, -3},
    {"us", Dimension::Time, -6},         {"\xC2\xB5s", Dimension::Time, -6},
    {"\xCE\xBCs", Dimension::Time, -6},  {"ns", Dimension::Time, -9},
    {"ps", Dimension::Time, -12},
};

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::optional<double> parse_quantity(std::string_view text, Dimension dim) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  // sign? digits [. digits] [e sign? digits]
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < text.size() && is_digit(text[i])) ++i, ++digits;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && is_digit(text[i])) ++i, ++digits;
  }
  if (digits == 0) return std::nullopt;
  const std::string_view mantissa = text.substr(0, i);

  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    std::size_t j = i + 1;
    if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
    if (j < text.size() && is_digit(text[j])) {
      const char* first = text.data() + i + 1;
      if (*first == '+') ++first;
      std::size_t k = j;
      while (k < text.size() && is_digit(text[k])) ++k;
      const auto res = std::from_chars(first, text.data() + k, exponent);
      if (res.ec != std::errc{}) return std::nullopt;
      i = k;
    }
  }

  std::string_view unit = text.substr(i);
  while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.front()))) unit.remove_prefix(1);
  if (!unit.empty()) {
    bool found = false;
    for (const auto& s : kSuffixes) {
      if (s.text == unit) {
        if (s.dim != dim) return std::nullopt;
        exponent += s.exponent;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }

  std::string canonical(mantissa.front() == '+' ? mantissa.substr(1) : mantissa);
  canonical += 'e';
  canonical += std::to_string(exponent);
  double value = 0.0;
  const auto res = std::from_chars(canonical.data(), canonical.data() + canonical.size(), value);
  if (res.ec != std::errc{} || res.ptr != canonical.data() + canonical.size()) return std::nullopt;
  return value;
}

std::string format_double(double value) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace ghostsim
