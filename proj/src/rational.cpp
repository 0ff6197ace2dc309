#include "marq/rational.hpp"

#include <cctype>

namespace marq {

Rational::Rational(const BigInt& num, const BigInt& den) : q_(num, den) {
  if (sgn(den) == 0) throw Error("rational with zero denominator");
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("division by zero");
  q_ /= o.q_;
  return *this;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<BigInt> {
    if (s.empty()) return std::nullopt;
    bool negative = s[0] == '-';
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return std::nullopt;
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) return std::nullopt;
    BigInt magnitude(std::string(s.substr(i)), 10);
    return negative ? BigInt(-magnitude) : magnitude;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto n = parse_int(text);
    if (!n) return std::nullopt;
    return Rational(*n);
  }
  auto n = parse_int(text.substr(0, slash));
  auto d = parse_int(text.substr(slash + 1));
  if (!n || !d || sgn(*d) == 0) return std::nullopt;
  return Rational(*n, *d);
}

Rational Rational::parse_or_throw(std::string_view text) {
  auto r = parse(text);
  if (!r) throw ParseError("malformed rational '" + std::string(text) + "'");
  return *r;
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::decimal(unsigned digits) const {
  BigInt n = num(), d = den();
  bool neg = sgn(n) < 0;
  if (neg) n = -n;
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  // round(n * 10^digits / d), half away from zero
  BigInt scaled = n * scale;
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), d.get_mpz_t());
  if (r * 2 >= d) q += 1;
  std::string s = q.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = s.substr(0, s.size() - digits);
  if (digits > 0) {
    std::string frac = s.substr(s.size() - digits);
    while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
    if (!(frac == "0")) out += "." + frac;
  }
  return (neg && out != "0") ? "-" + out : out;
}

Rational pow(const Rational& base, std::uint64_t exp) {
  Rational result(1);
  Rational b = base;
  while (exp) {
    if (exp & 1) result *= b;
    exp >>= 1;
    if (exp) b *= b;
  }
  return result;
}

std::uint64_t int_bit_width(const BigInt& a) {
  if (sgn(a) == 0) return 1;
  return 1 + mpz_sizeinbase(a.get_mpz_t(), 2);
}

std::uint64_t bit_width(const Rational& r) {
  return std::max(int_bit_width(r.num()), int_bit_width(r.den()));
}

BigInt pow2(std::uint64_t k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

}  // namespace marq
