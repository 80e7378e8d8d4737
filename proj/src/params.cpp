#include "certquad/params.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace certquad {

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

boost::multiprecision::cpp_int parse_int(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return boost::multiprecision::cpp_int(std::string(s));
}

}  // namespace

std::string to_string(const Rational& x) {
  const auto num = boost::multiprecision::numerator(x);
  const auto den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

NumberInput parse_number(std::string_view text) {
  NumberInput out;
  out.text = std::string(text);
  if (text.empty()) throw std::invalid_argument("empty number");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den))
      throw std::invalid_argument("malformed rational '" + out.text + "'");
    const auto d = parse_int(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + out.text + "'");
    out.exact = Rational(parse_int(num), d);
    out.value = to_double(*out.exact);
    return out;
  }

  if (is_integer_text(text)) {
    out.exact = Rational(parse_int(text));
    out.value = to_double(*out.exact);
    return out;
  }

  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v))
    throw std::invalid_argument("malformed number '" + out.text + "'");
  out.value = v;
  return out;
}

RuleParams to_double(const ExactRuleParams& params) {
  return RuleParams(to_double(params.alpha()), to_double(params.lambda()));
}

std::string_view to_string(RegimeCase c) {
  switch (c) {
    case RegimeCase::Case1: return "Case1";
    case RegimeCase::Case2: return "Case2";
    case RegimeCase::Case3: return "Case3";
  }
  return "?";
}

ExponentPair conjugate(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) throw DomainError("exponent q must satisfy q >= 1");
  if (q == 1.0) return {q, std::nullopt};
  return {q, q / (q - 1.0)};
}

}  // namespace certquad
