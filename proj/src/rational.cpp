#include "ram/rational.hpp"

#include <cctype>

#include "ram/errors.hpp"

namespace ram {
namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (!is_integer_literal(s)) {
    throw InputError("not a rational literal: '" + std::string(whole) + "'");
  }
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw InputError("rational with zero denominator");
  value_ = mpq_class(numerator, 1);
  value_ /= denominator;
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  Rational r;
  if (slash == std::string_view::npos) {
    r.value_ = mpq_class(parse_integer(text, text));
    return r;
  }
  const mpz_class num = parse_integer(text.substr(0, slash), text);
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '-') {
    throw InputError("negative denominator in '" + std::string(text) + "'");
  }
  const mpz_class den = parse_integer(den_text, text);
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  r.value_ = mpq_class(num, den);
  r.value_.canonicalize();
  return r;
}

std::string Rational::numerator_string() const { return value_.get_num().get_str(); }

std::string Rational::denominator_string() const { return value_.get_den().get_str(); }

std::string Rational::str() const {
  if (is_integer()) return numerator_string();
  return numerator_string() + "/" + denominator_string();
}

bool Rational::is_integer() const { return value_.get_den() == 1; }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InputError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational sum(std::span<const Rational> values) {
  Rational total;
  for (const auto& v : values) total += v;
  return total;
}

}  // namespace ram
