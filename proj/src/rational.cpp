#include "qtr/rational.hpp"

#include <cctype>

namespace qtr {

std::string to_string(const Rational& r) {
  const Integer num = boost::multiprecision::numerator(r);
  const Integer den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  std::size_t begin = 0, end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  const std::string body = text.substr(begin, end - begin);
  if (body.empty()) throw std::invalid_argument("empty rational literal");

  std::size_t pos = 0;
  if (body[pos] == '+' || body[pos] == '-') ++pos;
  bool digits = false, slash = false;
  for (std::size_t i = pos; i < body.size(); ++i) {
    const char ch = body[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits = true;
    } else if (ch == '/' && !slash && digits) {
      slash = true;
      digits = false;  // require digits after the slash too
    } else {
      throw std::invalid_argument("malformed rational literal: " + body);
    }
  }
  if (!digits) throw std::invalid_argument("malformed rational literal: " + body);

  const bool negative = body[0] == '-';
  const std::size_t digits_begin = (body[0] == '+' || body[0] == '-') ? 1 : 0;
  const std::size_t slash_pos = body.find('/');
  Integer num(body.substr(digits_begin,
                          slash ? slash_pos - digits_begin : std::string::npos));
  if (negative) num = -num;
  Integer den = slash ? Integer(body.substr(slash_pos + 1)) : Integer(1);
  if (den == 0) throw std::invalid_argument("zero denominator: " + body);
  return Rational(num, den);  // the two-argument form reduces to lowest terms
}

}  // namespace qtr
