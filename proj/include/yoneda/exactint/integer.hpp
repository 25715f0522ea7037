#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmp.h>

namespace yoneda {

// Arbitrary-precision integer with an inline 64-bit fast path.
//
// Values that fit in int64_t live in `small_`; anything larger is promoted
// to a heap-allocated GMP integer. Results that fit again are demoted, so
// `big_ != nullptr` implies the value is outside the int64_t range.
class Integer {
 public:
  Integer() noexcept = default;
  Integer(int v) noexcept : small_(v) {}
  Integer(long v) noexcept : small_(v) {}
  Integer(long long v) noexcept : small_(v) {}
  Integer(unsigned v) noexcept : small_(v) {}
  Integer(unsigned long v);
  Integer(unsigned long long v);

  Integer(const Integer& other);
  Integer(Integer&& other) noexcept : small_(other.small_), big_(other.big_) {
    other.big_ = nullptr;
    other.small_ = 0;
  }
  Integer& operator=(const Integer& other);
  Integer& operator=(Integer&& other) noexcept;
  ~Integer();

  // Parses an optionally signed decimal literal. Throws ValidationError.
  static Integer parse(std::string_view text);

  [[nodiscard]] bool is_zero() const noexcept { return big_ == nullptr && small_ == 0; }
  [[nodiscard]] bool is_one() const noexcept { return big_ == nullptr && small_ == 1; }
  [[nodiscard]] bool is_small() const noexcept { return big_ == nullptr; }
  [[nodiscard]] int sign() const noexcept;
  // Only meaningful when is_small().
  [[nodiscard]] std::int64_t small_value() const noexcept { return small_; }
  [[nodiscard]] bool fits_int64() const noexcept { return big_ == nullptr; }

  [[nodiscard]] std::string to_string() const;

  Integer& operator+=(const Integer& rhs);
  Integer& operator-=(const Integer& rhs);
  Integer& operator*=(const Integer& rhs);

  // this += a * b, the inner-loop primitive of elimination.
  void add_mul(const Integer& a, const Integer& b);
  void sub_mul(const Integer& a, const Integer& b);
  void negate();

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  friend Integer operator-(Integer a) {
    a.negate();
    return a;
  }

  friend bool operator==(const Integer& a, const Integer& b) noexcept;
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept;

  [[nodiscard]] Integer abs() const;
  // Comparison of absolute values.
  [[nodiscard]] static int compare_abs(const Integer& a, const Integer& b) noexcept;

  // Floor division: a = q*b + r with 0 <= r < |b| when b > 0, r in (b, 0] when b < 0.
  static void floor_divmod(const Integer& a, const Integer& b, Integer& q, Integer& r);
  // Quotient rounded to nearest (ties toward floor); used to keep elimination remainders small.
  [[nodiscard]] static Integer nearest_quotient(const Integer& a, const Integer& b);
  // Exact division; precondition b | a.
  [[nodiscard]] static Integer divexact(const Integer& a, const Integer& b);
  // True when b divides a (b == 0 divides only 0).
  [[nodiscard]] static bool divides(const Integer& b, const Integer& a);
  // Remainder of a modulo |m| in [0, |m|); m != 0.
  [[nodiscard]] static Integer mod(const Integer& a, const Integer& m);

  [[nodiscard]] static Integer gcd(const Integer& a, const Integer& b);
  // g = gcd(a,b) = s*a + t*b, g >= 0.
  static void gcdext(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t);

 private:
  void to_mpz(mpz_t out) const;       // out must be initialised
  void assign_mpz(const mpz_t value);  // normalises
  void release() noexcept;

  std::int64_t small_ = 0;
  __mpz_struct* big_ = nullptr;
};

std::ostream& operator<<(std::ostream& os, const Integer& value);

}  // namespace yoneda
