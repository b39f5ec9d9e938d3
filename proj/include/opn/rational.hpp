#pragma once
// Exact arithmetic primitives: arbitrary-precision naturals and canonical rationals.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace opn {

using Natural = mpz_class;

// Thrown whenever a documented precondition does not hold. The CLI maps it to exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

inline Natural nat(std::uint64_t v) {
  Natural r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return r;
}

inline bool fits_u64(const Natural& n) {
  return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Natural& n) {
  require(fits_u64(n), "value does not fit in 64 bits");
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, -1, sizeof v, 0, 0, n.get_mpz_t());
  return v;
}

inline Natural pow(const Natural& base, unsigned long e) {
  Natural r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline std::size_t bit_length(const Natural& n) {
  return sgn(n) == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

// Parses a decimal integer; underscores are accepted as digit separators.
inline Natural parse_integer(std::string_view text) {
  std::string digits;
  bool negative = false;
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    i = 1;
  }
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '_') continue;
    require(c >= '0' && c <= '9', "malformed integer: " + std::string(text));
    digits.push_back(c);
  }
  require(!digits.empty(), "malformed integer: " + std::string(text));
  Natural r(digits, 10);
  return negative ? Natural(-r) : r;
}

// Always stored in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Natural& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Natural& num, const Natural& den) {
    require(sgn(den) != 0, "zero denominator");
    q_.get_num() = num;
    q_.get_den() = den;
    q_.canonicalize();
  }

  static Rational from_mpq(const mpq_class& q) {
    Rational r;
    r.q_ = q;
    r.q_.canonicalize();
    return r;
  }

  // Accepts "a/b" or a bare integer.
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
  }

  const Natural& num() const { return q_.get_num(); }
  const Natural& den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  friend Rational operator+(const Rational& a, const Rational& b) { return from_mpq(a.q_ + b.q_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return from_mpq(a.q_ - b.q_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return from_mpq(a.q_ * b.q_); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    require(sgn(b.q_) != 0, "division by zero");
    return from_mpq(a.q_ / b.q_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  // Canonical "a/b" form; the denominator is printed even when it is 1.
  std::string str() const { return num().get_str() + "/" + den().get_str(); }

  // Decimal expansion with `digits` places after the point, rounded half-to-even.
  std::string decimal(unsigned digits) const {
    Natural n = abs(num());
    Natural scaled = n * pow(Natural(10), digits);
    Natural q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), den().get_mpz_t());
    int c = cmp(Natural(2 * r), den());
    if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
    std::string s = q.get_str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    std::string out = sign() < 0 && sgn(q) != 0 ? "-" : "";
    out += s.substr(0, s.size() - digits);
    if (digits > 0) out += "." + s.substr(s.size() - digits);
    return out;
  }

 private:
  mpq_class q_;
};

}  // namespace opn
