#include "hamoeba/text.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "hamoeba/error.hpp"

namespace hamoeba {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

double parse_double(std::string_view text) {
  double v = 0.0;
  if (!parse_number(trim(text), v)) fail(ErrorKind::validation, "not a number: '" + std::string(text) + "'");
  return v;
}

cplx parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  const auto bad = [&] { fail(ErrorKind::validation, "not a complex number: '" + std::string(text) + "'"); };
  if (s.empty()) bad();
  if (s.front() == '(') {
    if (s.back() != ')') bad();
    const std::string_view inner = s.substr(1, s.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos) bad();
    double re = 0.0;
    double im = 0.0;
    if (!parse_number(trim(inner.substr(0, comma)), re) || !parse_number(trim(inner.substr(comma + 1)), im)) bad();
    return {re, im};
  }
  if (s.back() != 'i' && s.back() != 'j') {
    double re = 0.0;
    if (!parse_number(s, re)) bad();
    return {re, 0.0};
  }
  const std::string_view body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  double re = 0.0;
  std::string_view imag_part = body;
  if (split != std::string_view::npos) {
    if (!parse_number(trim(body.substr(0, split)), re)) bad();
    imag_part = body.substr(split);
  }
  double im = 0.0;
  if (imag_part.empty() || imag_part == "+") {
    im = 1.0;
  } else if (imag_part == "-") {
    im = -1.0;
  } else if (!parse_number(imag_part, im)) {
    bad();
  }
  return {re, im};
}

std::string format_complex(cplx z) {
  char buf[80];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  }
  return buf;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_double(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<double> parse_range(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  require(c1 != std::string_view::npos && c2 != std::string_view::npos,
          "range must look like start:stop:step, got '" + std::string(text) + "'");
  const double start = parse_double(text.substr(0, c1));
  const double stop = parse_double(text.substr(c1 + 1, c2 - c1 - 1));
  const double step = parse_double(text.substr(c2 + 1));
  require(step > 0.0 && stop >= start, "range needs step > 0 and stop >= start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  require(count <= 10'000'000, "range has too many points");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = start + step * static_cast<double>(i);
  return out;
}

}  // namespace hamoeba
