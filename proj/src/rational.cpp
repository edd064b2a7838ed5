#include "affq/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "affq/error.hpp"

namespace affq {

Rational::Rational(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

namespace {

bool parse_integer(std::string_view s, Integer& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (s[j] < '0' || s[j] > '9') return false;
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return out.set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  Integer num;
  Integer den = 1;
  const auto num_text = trim(text.substr(0, slash));
  if (!parse_integer(num_text, num)) {
    throw ConfigError("bad rational '" + std::string(text) + "'");
  }
  if (slash != std::string_view::npos) {
    const auto den_text = trim(text.substr(slash + 1));
    if (!parse_integer(den_text, den)) {
      throw ConfigError("bad rational '" + std::string(text) + "'");
    }
    if (sgn(den) == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

Rational Rational::abs() const { return Rational(::abs(q_)); }

Rational Rational::reciprocal() const {
  if (is_zero()) throw DomainError("reciprocal of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
  return Rational(r);
}

std::string Rational::str() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

std::size_t Rational::bit_size() const {
  return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

Integer floor(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.raw().get_num_mpz_t(), q.raw().get_den_mpz_t());
  return out;
}

Rational power(const Integer& base, long exponent) {
  Integer mag;
  mpz_pow_ui(mag.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(Integer(1), mag) : Rational(mag, Integer(1));
}

double log_abs(const Integer& z) {
  if (sgn(z) == 0) throw DomainError("logarithm of zero");
  if (mpz_sizeinbase(z.get_mpz_t(), 2) <= 53) return std::log(std::fabs(z.get_d()));
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

}  // namespace affq
