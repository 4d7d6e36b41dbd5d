#include "cli_parse.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace lsys::cli {

ParseError::ParseError(std::string input, std::size_t position, const std::string& what)
    : std::runtime_error("'" + input + "' at column " + std::to_string(position + 1) + ": " + what),
      input_(std::move(input)),
      position_(position) {}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {
    if (const auto sp = s.find_first_of(" \t\r\n"); sp != std::string_view::npos)
      error(sp, "whitespace is not allowed");
    if (s.empty()) error(0, "empty value");
  }

  bool done() const { return i_ == s_.size(); }
  char peek() const { return done() ? '\0' : s_[i_]; }
  std::size_t pos() const { return i_; }
  void advance() { ++i_; }

  double sign() {
    if (peek() == '+') { advance(); return 1.0; }
    if (peek() == '-') { advance(); return -1.0; }
    return 1.0;
  }

  bool number_follows() const {
    const char c = peek();
    return (c >= '0' && c <= '9') || c == '.';
  }

  double number() {
    if (!number_follows()) error(i_, "expected a number");
    double v = 0.0;
    const auto* begin = s_.data() + i_;
    const auto [ptr, ec] = std::from_chars(begin, s_.data() + s_.size(), v, std::chars_format::general);
    if (ec == std::errc::result_out_of_range) error(i_, "number out of range");
    if (ec != std::errc()) error(i_, "malformed number");
    i_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

  [[noreturn]] void error(std::size_t at, const std::string& what) const {
    throw ParseError(std::string(s_), at, what);
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

std::vector<std::string_view> split(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

std::complex<double> parse_complex(std::string_view text) {
  Cursor c(text);
  double re = 0.0, im = 0.0;

  double s = c.sign();
  if (c.peek() == 'i') {
    c.advance();
    im = s;
  } else {
    const double v = s * c.number();
    if (c.peek() == 'i') {
      c.advance();
      im = v;
    } else {
      re = v;
      if (c.peek() == '+' || c.peek() == '-') {
        s = c.sign();
        im = s * (c.peek() == 'i' ? 1.0 : c.number());
        if (c.peek() != 'i') c.error(c.pos(), "expected 'i' after the imaginary part");
        c.advance();
      }
    }
  }
  if (!c.done()) c.error(c.pos(), "unexpected character '" + std::string(1, c.peek()) + "'");
  return {re, im};
}

double parse_extended_real(std::string_view text) {
  if (text == "inf" || text == "+inf") return INFINITY;
  Cursor c(text);
  const double s = c.sign();
  const double v = s * c.number();
  if (!c.done()) c.error(c.pos(), "unexpected character '" + std::string(1, c.peek()) + "'");
  return v;
}

std::vector<std::complex<double>> parse_complex_list(std::string_view text) {
  std::vector<std::complex<double>> out;
  std::size_t offset = 0;
  for (auto part : split(text)) {
    try {
      out.push_back(parse_complex(part));
    } catch (const ParseError& e) {
      throw ParseError(std::string(text), offset + e.position(), "invalid complex number");
    }
    offset += part.size() + 1;
  }
  return out;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t offset = 0;
  for (auto part : split(text)) {
    try {
      out.push_back(parse_extended_real(part));
    } catch (const ParseError& e) {
      throw ParseError(std::string(text), offset + e.position(), "invalid number");
    }
    offset += part.size() + 1;
  }
  return out;
}

std::vector<double> parse_range(std::string_view text, int count) {
  const std::string in(text);
  if (text.size() < 5) throw ParseError(in, 0, "expected an interval such as (2,100]");
  const char open = text.front(), close = text.back();
  if (open != '(' && open != '[') throw ParseError(in, 0, "expected '(' or '['");
  if (close != ')' && close != ']') throw ParseError(in, text.size() - 1, "expected ')' or ']'");
  const auto body = text.substr(1, text.size() - 2);
  const auto comma = body.find(',');
  if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos)
    throw ParseError(in, 1, "expected exactly two endpoints");
  double a = 0.0, b = 0.0;
  try {
    a = parse_extended_real(body.substr(0, comma));
  } catch (const ParseError& e) {
    throw ParseError(in, 1 + e.position(), "invalid lower endpoint");
  }
  try {
    b = parse_extended_real(body.substr(comma + 1));
  } catch (const ParseError& e) {
    throw ParseError(in, 2 + comma + e.position(), "invalid upper endpoint");
  }
  if (!std::isfinite(b)) throw ParseError(in, 2 + comma, "range endpoints must be finite; use --grid for inf");
  if (!(a < b)) throw ParseError(in, 1, "lower endpoint must be below the upper endpoint");
  if (count < 1) throw ParseError(in, 0, "count must be positive");

  const bool lo = open == '[', hi = close == ']';
  std::vector<double> out;
  if (count == 1) {
    out.push_back(lo ? a : hi ? b : 0.5 * (a + b));
    return out;
  }
  // Closed ends are hit exactly; open ends are stepped away from.
  const int gaps = count - 1 + (lo ? 0 : 1) + (hi ? 0 : 1);
  const double step = (b - a) / gaps;
  for (int k = 0; k < count; ++k) {
    const int j = k + (lo ? 0 : 1);
    out.push_back(j == gaps ? b : a + step * j);
  }
  return out;
}

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace lsys::cli
