#include "hodgekit/scalar.hpp"

#include <ostream>

namespace hodgekit {

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

std::string to_string(const Scalar& s) {
  if (s.is_real()) return to_string(s.re);
  return to_string(s.re) + (s.im > 0 ? "+" : "-") + to_string(abs(s.im)) + "i";
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  auto is_integer_literal = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (start == t.size()) return false;
    for (std::size_t i = start; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!is_integer_literal(num) || !is_integer_literal(den))
    throw ParseError("malformed rational literal '" + text + "'");
  // cpp_int's string constructor does not accept a leading '+'.
  auto strip_plus = [](const std::string& t) { return t[0] == '+' ? t.substr(1) : t; };
  boost::multiprecision::cpp_int p(strip_plus(num)), q(strip_plus(den));
  if (q == 0) throw ParseError("zero denominator in rational literal '" + text + "'");
  return Rational(p, q);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_string(s); }

}  // namespace hodgekit
