#include "yoneda/exactint/integer.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>
#include "yoneda/errors.hpp"

namespace yoneda {

namespace {

// RAII holder for a scratch mpz_t.
struct Mpz {
  mpz_t v;
  Mpz() { mpz_init(v); }
  ~Mpz() { mpz_clear(v); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
};

}  // namespace

Integer::Integer(unsigned long v) {
  if (v <= static_cast<unsigned long>(std::numeric_limits<std::int64_t>::max())) {
    small_ = static_cast<std::int64_t>(v);
  } else {
    Mpz t;
    mpz_set_ui(t.v, v);
    assign_mpz(t.v);
  }
}

Integer::Integer(unsigned long long v) : Integer(static_cast<unsigned long>(v)) {}

Integer::Integer(const Integer& other) : small_(other.small_) {
  if (other.big_ != nullptr) {
    big_ = new __mpz_struct;
    mpz_init_set(big_, other.big_);
  }
}

Integer& Integer::operator=(const Integer& other) {
  if (this == &other) return *this;
  if (other.big_ == nullptr) {
    release();
    small_ = other.small_;
  } else {
    if (big_ == nullptr) {
      big_ = new __mpz_struct;
      mpz_init_set(big_, other.big_);
    } else {
      mpz_set(big_, other.big_);
    }
    small_ = 0;
  }
  return *this;
}

Integer& Integer::operator=(Integer&& other) noexcept {
  if (this == &other) return *this;
  release();
  small_ = other.small_;
  big_ = other.big_;
  other.big_ = nullptr;
  other.small_ = 0;
  return *this;
}

Integer::~Integer() { release(); }

void Integer::release() noexcept {
  if (big_ != nullptr) {
    mpz_clear(big_);
    delete big_;
    big_ = nullptr;
  }
}

void Integer::to_mpz(mpz_t out) const {
  if (big_ != nullptr) {
    mpz_set(out, big_);
  } else {
    mpz_set_si(out, static_cast<long>(small_));
  }
}

void Integer::assign_mpz(const mpz_t value) {
  if (mpz_fits_slong_p(value) != 0) {
    release();
    small_ = mpz_get_si(value);
    return;
  }
  if (big_ == nullptr) {
    big_ = new __mpz_struct;
    mpz_init_set(big_, value);
  } else {
    mpz_set(big_, value);
  }
  small_ = 0;
}

Integer Integer::parse(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])) != 0) ++pos;
  std::size_t end = text.size();
  while (end > pos && std::isspace(static_cast<unsigned char>(text[end - 1])) != 0) --end;
  std::string body(text.substr(pos, end - pos));
  if (!body.empty() && body[0] == '+') body.erase(0, 1);
  std::size_t digits = (!body.empty() && body[0] == '-') ? 1 : 0;
  if (digits >= body.size()) throw ValidationError("not an integer: '" + std::string(text) + "'");
  for (std::size_t k = digits; k < body.size(); ++k) {
    if (std::isdigit(static_cast<unsigned char>(body[k])) == 0) {
      throw ValidationError("not an integer: '" + std::string(text) + "'");
    }
  }
  Mpz t;
  mpz_set_str(t.v, body.c_str(), 10);
  Integer out;
  out.assign_mpz(t.v);
  return out;
}

int Integer::sign() const noexcept {
  if (big_ != nullptr) return mpz_sgn(big_);
  return (small_ > 0) - (small_ < 0);
}

std::string Integer::to_string() const {
  if (big_ == nullptr) return std::to_string(small_);
  std::string buf(mpz_sizeinbase(big_, 10) + 2, '\0');
  mpz_get_str(buf.data(), 10, big_);
  buf.resize(std::char_traits<char>::length(buf.c_str()));
  return buf;
}

Integer& Integer::operator+=(const Integer& rhs) {
  if (big_ == nullptr && rhs.big_ == nullptr) {
    std::int64_t r;
    if (!__builtin_add_overflow(small_, rhs.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  Mpz a, b;
  to_mpz(a.v);
  rhs.to_mpz(b.v);
  mpz_add(a.v, a.v, b.v);
  assign_mpz(a.v);
  return *this;
}

Integer& Integer::operator-=(const Integer& rhs) {
  if (big_ == nullptr && rhs.big_ == nullptr) {
    std::int64_t r;
    if (!__builtin_sub_overflow(small_, rhs.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  Mpz a, b;
  to_mpz(a.v);
  rhs.to_mpz(b.v);
  mpz_sub(a.v, a.v, b.v);
  assign_mpz(a.v);
  return *this;
}

Integer& Integer::operator*=(const Integer& rhs) {
  if (big_ == nullptr && rhs.big_ == nullptr) {
    std::int64_t r;
    if (!__builtin_mul_overflow(small_, rhs.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  Mpz a, b;
  to_mpz(a.v);
  rhs.to_mpz(b.v);
  mpz_mul(a.v, a.v, b.v);
  assign_mpz(a.v);
  return *this;
}

void Integer::add_mul(const Integer& a, const Integer& b) {
  if (big_ == nullptr && a.big_ == nullptr && b.big_ == nullptr) {
    std::int64_t p, r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &p) && !__builtin_add_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
  }
  Mpz acc, x, y;
  to_mpz(acc.v);
  a.to_mpz(x.v);
  b.to_mpz(y.v);
  mpz_addmul(acc.v, x.v, y.v);
  assign_mpz(acc.v);
}

void Integer::sub_mul(const Integer& a, const Integer& b) {
  if (big_ == nullptr && a.big_ == nullptr && b.big_ == nullptr) {
    std::int64_t p, r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &p) && !__builtin_sub_overflow(small_, p, &r)) {
      small_ = r;
      return;
    }
  }
  Mpz acc, x, y;
  to_mpz(acc.v);
  a.to_mpz(x.v);
  b.to_mpz(y.v);
  mpz_submul(acc.v, x.v, y.v);
  assign_mpz(acc.v);
}

void Integer::negate() {
  if (big_ == nullptr) {
    std::int64_t r;
    if (!__builtin_sub_overflow(std::int64_t{0}, small_, &r)) {
      small_ = r;
      return;
    }
  }
  Mpz a;
  to_mpz(a.v);
  mpz_neg(a.v, a.v);
  assign_mpz(a.v);
}

bool operator==(const Integer& a, const Integer& b) noexcept {
  if (a.big_ == nullptr && b.big_ == nullptr) return a.small_ == b.small_;
  if (a.big_ == nullptr || b.big_ == nullptr) return false;
  return mpz_cmp(a.big_, b.big_) == 0;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept {
  if (a.big_ == nullptr && b.big_ == nullptr) return a.small_ <=> b.small_;
  int c;
  if (a.big_ != nullptr && b.big_ != nullptr) {
    c = mpz_cmp(a.big_, b.big_);
  } else if (a.big_ != nullptr) {
    c = mpz_sgn(a.big_);  // |a| exceeds every int64
  } else {
    c = -mpz_sgn(b.big_);
  }
  return c <=> 0;
}

Integer Integer::abs() const {
  Integer r(*this);
  if (r.sign() < 0) r.negate();
  return r;
}

int Integer::compare_abs(const Integer& a, const Integer& b) noexcept {
  if (a.big_ == nullptr && b.big_ == nullptr) {
    // Compare as unsigned magnitudes so INT64_MIN is handled.
    auto mag = [](std::int64_t v) {
      return v < 0 ? static_cast<std::uint64_t>(0) - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    };
    std::uint64_t x = mag(a.small_), y = mag(b.small_);
    return (x > y) - (x < y);
  }
  if (a.big_ != nullptr && b.big_ != nullptr) return mpz_cmpabs(a.big_, b.big_);
  return a.big_ != nullptr ? 1 : -1;
}

void Integer::floor_divmod(const Integer& a, const Integer& b, Integer& q, Integer& r) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (a.big_ == nullptr && b.big_ == nullptr &&
      !(a.small_ == std::numeric_limits<std::int64_t>::min() && b.small_ == -1)) {
    std::int64_t qq = a.small_ / b.small_;
    std::int64_t rr = a.small_ % b.small_;
    if (rr != 0 && ((rr < 0) != (b.small_ < 0))) {
      --qq;
      rr += b.small_;
    }
    q = Integer(qq);
    r = Integer(rr);
    return;
  }
  Mpz x, y, qq, rr;
  a.to_mpz(x.v);
  b.to_mpz(y.v);
  mpz_fdiv_qr(qq.v, rr.v, x.v, y.v);
  q.assign_mpz(qq.v);
  r.assign_mpz(rr.v);
}

Integer Integer::nearest_quotient(const Integer& a, const Integer& b) {
  Integer q, r;
  floor_divmod(a, b, q, r);
  // Move to the nearer multiple when the remainder exceeds half of |b|.
  Integer twice = r + r;
  if (compare_abs(twice, b) > 0) q += Integer(1);
  return q;
}

Integer Integer::divexact(const Integer& a, const Integer& b) {
  if (a.big_ == nullptr && b.big_ == nullptr && b.small_ != 0 &&
      !(a.small_ == std::numeric_limits<std::int64_t>::min() && b.small_ == -1)) {
    return Integer(a.small_ / b.small_);
  }
  Mpz x, y;
  a.to_mpz(x.v);
  b.to_mpz(y.v);
  mpz_divexact(x.v, x.v, y.v);
  Integer out;
  out.assign_mpz(x.v);
  return out;
}

bool Integer::divides(const Integer& b, const Integer& a) {
  if (b.is_zero()) return a.is_zero();
  if (a.big_ == nullptr && b.big_ == nullptr) {
    if (b.small_ == -1) return true;
    return a.small_ % b.small_ == 0;
  }
  Mpz x, y;
  a.to_mpz(x.v);
  b.to_mpz(y.v);
  return mpz_divisible_p(x.v, y.v) != 0;
}

Integer Integer::mod(const Integer& a, const Integer& m) {
  Integer q, r;
  Integer am = m.abs();
  floor_divmod(a, am, q, r);
  return r;
}

Integer Integer::gcd(const Integer& a, const Integer& b) {
  if (a.big_ == nullptr && b.big_ == nullptr && a.small_ != std::numeric_limits<std::int64_t>::min() &&
      b.small_ != std::numeric_limits<std::int64_t>::min()) {
    return Integer(std::gcd(a.small_, b.small_));
  }
  Mpz x, y;
  a.to_mpz(x.v);
  b.to_mpz(y.v);
  mpz_gcd(x.v, x.v, y.v);
  Integer out;
  out.assign_mpz(x.v);
  return out;
}

void Integer::gcdext(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  Mpz x, y, gg, ss, tt;
  a.to_mpz(x.v);
  b.to_mpz(y.v);
  mpz_gcdext(gg.v, ss.v, tt.v, x.v, y.v);
  g.assign_mpz(gg.v);
  s.assign_mpz(ss.v);
  t.assign_mpz(tt.v);
}

std::ostream& operator<<(std::ostream& os, const Integer& value) { return os << value.to_string(); }

}  // namespace yoneda
