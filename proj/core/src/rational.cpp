#include "dynfair/rational.hpp"

#include <cctype>
#include <sstream>

#include "dynfair/errors.hpp"

namespace dynfair {

Int floor_rat(const Rat& q) {
  Int n = rat_num(q);
  Int d = rat_den(q);
  Int t = n / d;  // truncates toward zero
  if (n < 0 && t * d != n) --t;
  return t;
}

Int ceil_rat(const Rat& q) {
  Int n = rat_num(q);
  Int d = rat_den(q);
  Int t = n / d;
  if (n > 0 && t * d != n) ++t;
  return t;
}

std::string format_rat(const Rat& q) {
  if (rat_den(q) == 1) return rat_num(q).str();
  return rat_num(q).str() + "/" + rat_den(q).str();
}

namespace {

bool valid_int_token(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!valid_int_token(num)) throw SchemaError("bad rational: '" + std::string(text) + "'");
  Int n = Int(std::string(num));
  if (slash == std::string_view::npos) return Rat(n);
  std::string_view den = text.substr(slash + 1);
  if (!valid_int_token(den)) throw SchemaError("bad rational: '" + std::string(text) + "'");
  Int d = Int(std::string(den));
  if (d <= 0) throw SchemaError("non-positive denominator: '" + std::string(text) + "'");
  return Rat(n, d);
}

std::string rat_to_decimal(const Rat& q, int significant_digits) {
  if (q == 0) return "0";
  std::string sign = q < 0 ? "-" : "";
  Rat a = q < 0 ? Rat(-q) : q;
  // Decimal exponent e with 10^e <= a < 10^(e+1).
  int e = 0;
  while (a >= 10) {
    a /= 10;
    ++e;
  }
  while (a < 1) {
    a *= 10;
    --e;
  }
  Int scale = 1;
  for (int i = 1; i < significant_digits; ++i) scale *= 10;
  Int digits = floor_rat(Rat(a) * Rat(scale) + Rat(1, 2));
  std::string ds = digits.str();
  if (static_cast<int>(ds.size()) > significant_digits) {  // rounding carried over
    ds = ds.substr(0, significant_digits);
    ++e;
  }
  while (ds.size() > 1 && ds.back() == '0') ds.pop_back();
  std::ostringstream out;
  out << sign << ds[0];
  if (ds.size() > 1) out << "." << ds.substr(1);
  if (e != 0) out << "e" << e;
  return out.str();
}

}  // namespace dynfair
