#include "turingflow/radix_rational.h"

#include <limits>

#include "turingflow/error.h"

namespace turingflow {

namespace {

constexpr unsigned kMaxGmpBase = 62;

char digit_char(unsigned d, unsigned radix) {
  if (d < 10) return static_cast<char>('0' + d);
  if (radix <= 36) return static_cast<char>('a' + (d - 10));
  if (d < 36) return static_cast<char>('A' + (d - 10));
  return static_cast<char>('a' + (d - 36));
}

unsigned char_digit(char c, unsigned radix) {
  if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
  if (radix <= 36) return static_cast<unsigned>(c - 'a') + 10;
  if (c >= 'A' && c <= 'Z') return static_cast<unsigned>(c - 'A') + 10;
  return static_cast<unsigned>(c - 'a') + 36;
}

std::uint64_t small_power(unsigned radix, unsigned count) {
  std::uint64_t p = 1;
  for (unsigned i = 0; i < count; ++i) {
    if (p > std::numeric_limits<std::uint64_t>::max() / radix) {
      throw Error(ErrorCode::kInvalidShift, "digit window exceeds 64 bits");
    }
    p *= radix;
  }
  return p;
}

}  // namespace

mpz_class power_of(unsigned radix, std::size_t exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), radix, exponent);
  return p;
}

RadixRational::RadixRational(unsigned radix) : radix_(radix) {
  if (radix < 3 || radix % 2 == 0) {
    throw Error(ErrorCode::kInvalidShift, "radix must be odd and at least 3");
  }
}

RadixRational::RadixRational(mpz_class numerator, std::size_t exponent,
                             unsigned radix)
    : RadixRational(radix) {
  num_ = std::move(numerator);
  exp_ = exponent;
  den_ = power_of(radix_, exp_);
  canonicalize();
}

RadixRational RadixRational::from_digits(unsigned radix,
                                         std::span<const unsigned> digits) {
  RadixRational r(radix);
  if (digits.empty()) return r;
  mpz_class num;
  if (radix <= kMaxGmpBase) {
    std::string text;
    text.reserve(digits.size());
    for (unsigned d : digits) text += digit_char(d, radix);
    num.set_str(text, static_cast<int>(radix));
  } else {
    for (unsigned d : digits) num = num * radix + d;
  }
  return RadixRational(std::move(num), digits.size(), radix);
}

void RadixRational::canonicalize() {
  if (num_ == 0) {
    exp_ = 0;
    den_ = 1;
    return;
  }
  while (exp_ > 0 && mpz_divisible_ui_p(num_.get_mpz_t(), radix_)) {
    mpz_divexact_ui(num_.get_mpz_t(), num_.get_mpz_t(), radix_);
    mpz_divexact_ui(den_.get_mpz_t(), den_.get_mpz_t(), radix_);
    --exp_;
  }
}

mpz_class RadixRational::aligned_numerator(std::size_t exponent) const {
  if (exponent == exp_) return num_;
  return num_ * power_of(radix_, exponent - exp_);
}

RadixRational RadixRational::operator+(const RadixRational& other) const {
  if (other.radix_ != radix_) {
    throw Error(ErrorCode::kInvalidShift, "radix mismatch");
  }
  RadixRational r(radix_);
  if (exp_ >= other.exp_) {
    mpz_class scale;
    mpz_divexact(scale.get_mpz_t(), den_.get_mpz_t(), other.den_.get_mpz_t());
    r.num_ = num_ + other.num_ * scale;
    r.exp_ = exp_;
    r.den_ = den_;
  } else {
    mpz_class scale;
    mpz_divexact(scale.get_mpz_t(), other.den_.get_mpz_t(), den_.get_mpz_t());
    r.num_ = num_ * scale + other.num_;
    r.exp_ = other.exp_;
    r.den_ = other.den_;
  }
  r.canonicalize();
  return r;
}

RadixRational RadixRational::operator-() const {
  RadixRational r = *this;
  r.num_ = -r.num_;
  return r;
}

RadixRational RadixRational::operator-(const RadixRational& other) const {
  return *this + (-other);
}

RadixRational RadixRational::scaled(long power) const {
  RadixRational r = *this;
  if (power > 0) {
    const auto p = static_cast<std::size_t>(power);
    if (r.exp_ >= p) {
      r.exp_ -= p;
      mpz_class q = power_of(radix_, p);
      mpz_divexact(r.den_.get_mpz_t(), r.den_.get_mpz_t(), q.get_mpz_t());
    } else {
      r.num_ *= power_of(radix_, p - r.exp_);
      r.exp_ = 0;
      r.den_ = 1;
    }
  } else if (power < 0) {
    const auto p = static_cast<std::size_t>(-power);
    r.exp_ += p;
    r.den_ *= power_of(radix_, p);
    r.canonicalize();
  }
  return r;
}

std::strong_ordering RadixRational::operator<=>(const RadixRational& other) const {
  const std::size_t e = std::max(exp_, other.exp_);
  const int c = cmp(aligned_numerator(e), other.aligned_numerator(e));
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool RadixRational::operator==(const RadixRational& other) const {
  // Canonical forms are unique.
  return radix_ == other.radix_ && exp_ == other.exp_ && num_ == other.num_;
}

std::uint64_t RadixRational::leading_digits(unsigned count) const {
  const std::uint64_t scale = small_power(radix_, count);
  mpz_class q;
  if (count >= exp_) {
    q = num_ * power_of(radix_, count - exp_);
  } else {
    mpz_class divisor;
    mpz_divexact_ui(divisor.get_mpz_t(), den_.get_mpz_t(), scale);
    mpz_fdiv_q(q.get_mpz_t(), num_.get_mpz_t(), divisor.get_mpz_t());
  }
  if (q < 0 || q >= mpz_class(static_cast<unsigned long>(scale))) {
    throw Error(ErrorCode::kNotCantor, "value outside [0, 1)");
  }
  return static_cast<std::uint64_t>(q.get_ui());
}

std::vector<unsigned> RadixRational::digits() const {
  if (num_ < 0 || num_ >= den_) {
    throw Error(ErrorCode::kNotCantor, "value outside [0, 1)");
  }
  std::vector<unsigned> out(exp_, 0);
  if (exp_ == 0) return out;
  if (radix_ <= kMaxGmpBase) {
    const std::string text = num_.get_str(static_cast<int>(radix_));
    const std::size_t pad = exp_ - text.size();
    for (std::size_t i = 0; i < text.size(); ++i) {
      out[pad + i] = char_digit(text[i], radix_);
    }
  } else {
    mpz_class n = num_;
    for (std::size_t i = exp_; i-- > 0;) {
      out[i] = static_cast<unsigned>(mpz_fdiv_q_ui(n.get_mpz_t(), n.get_mpz_t(), radix_));
    }
  }
  return out;
}

double RadixRational::to_double() const {
  mpq_class q(num_, den_);
  return q.get_d();
}

std::string RadixRational::to_string() const {
  return num_.get_str() + "/" + std::to_string(radix_) + "^" + std::to_string(exp_);
}

}  // namespace turingflow
