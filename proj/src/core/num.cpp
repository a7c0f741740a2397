#include "core/num.hpp"

#include <cctype>

namespace hcg {

Z parse_z(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  Z z;
  if (t.empty() || z.set_str(t, 10) != 0) fail(Code::validation, "not an integer: '" + s + "'");
  return z;
}

Q parse_q(const std::string& s) {
  std::string t = s;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty()) fail(Code::validation, "empty rational");
  auto slash = t.find('/');
  if (slash != std::string::npos) {
    Z n = parse_z(t.substr(0, slash)), d = parse_z(t.substr(slash + 1));
    if (d == 0) fail(Code::validation, "zero denominator: '" + s + "'");
    Q q(n, d);
    q.canonicalize();
    return q;
  }
  // decimal with optional exponent
  long ex = 0;
  auto e = t.find_first_of("eE");
  if (e != std::string::npos) {
    try {
      size_t used = 0;
      ex = std::stol(t.substr(e + 1), &used);
      if (used != t.size() - e - 1) throw std::invalid_argument("x");
    } catch (...) {
      fail(Code::validation, "bad exponent: '" + s + "'");
    }
    t = t.substr(0, e);
  }
  bool neg = false;
  if (!t.empty() && t[0] == '-') neg = true, t.erase(0, 1);
  std::string digits;
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    digits = t.substr(0, dot) + t.substr(dot + 1);
    ex -= long(t.size() - dot - 1);
  } else {
    digits = t;
  }
  if (digits.empty()) fail(Code::validation, "not a number: '" + s + "'");
  for (char ch : digits)
    if (!std::isdigit((unsigned char)ch)) fail(Code::validation, "not a number: '" + s + "'");
  Z n(digits, 10);
  if (neg) n = -n;
  Q q(n);
  Z p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, (unsigned long)(ex < 0 ? -ex : ex));
  if (ex < 0) q /= Q(p);
  else q *= Q(p);
  q.canonicalize();
  return q;
}

std::string to_str(const Z& z) { return z.get_str(); }
std::string to_str(const Q& q) { return q.get_str(); }

QMat to_q(const ZMat& m) {
  QMat q(m.r, m.c);
  for (size_t i = 0; i < m.v.size(); ++i) q.v[i] = m.v[i];
  return q;
}

}  // namespace hcg
