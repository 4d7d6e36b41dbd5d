#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lsys::cli {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string input, std::size_t position, const std::string& what);
  std::size_t position() const noexcept { return position_; }  // 0-based offset into input
  const std::string& input() const noexcept { return input_; }

 private:
  std::string input_;
  std::size_t position_;
};

// `a`, `bi`, `i`, `a+bi`, `a-bi`, `a+i`; no spaces.
std::complex<double> parse_complex(std::string_view text);
// Finite real or `inf` / `+inf`.
double parse_extended_real(std::string_view text);
// Comma separated list of complex literals.
std::vector<std::complex<double>> parse_complex_list(std::string_view text);
// Comma separated list of extended reals.
std::vector<double> parse_real_list(std::string_view text);
// `(a,b]`, `[a,b)`, ... sampled at `count` evenly spaced points inside the interval.
std::vector<double> parse_range(std::string_view text, int count);

// %.17g; "inf" / "-inf" for infinities.
std::string format_number(double x);

}  // namespace lsys::cli
