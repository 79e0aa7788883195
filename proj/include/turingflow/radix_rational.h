#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace turingflow {

// Exact rational numerator / radix^exponent for an odd radix >= 3.
//
// Canonical form: the numerator is not divisible by the radix unless the
// exponent is 0; zero is 0 / radix^0. radix^exponent is carried alongside so
// that digit extraction and alignment stay linear in the operand size.
class RadixRational {
 public:
  explicit RadixRational(unsigned radix);
  RadixRational(mpz_class numerator, std::size_t exponent, unsigned radix);

  // 0.d1 d2 d3 ... in the given radix.
  static RadixRational from_digits(unsigned radix, std::span<const unsigned> digits);

  unsigned radix() const { return radix_; }
  const mpz_class& numerator() const { return num_; }
  std::size_t exponent() const { return exp_; }
  const mpz_class& denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return sgn(num_); }

  RadixRational operator+(const RadixRational& other) const;
  RadixRational operator-(const RadixRational& other) const;
  RadixRational operator-() const;

  // this * radix^power.
  RadixRational scaled(long power) const;

  std::strong_ordering operator<=>(const RadixRational& other) const;
  bool operator==(const RadixRational& other) const;

  // floor(value * radix^count); requires 0 <= value < 1 and radix^count to fit
  // in 64 bits.
  std::uint64_t leading_digits(unsigned count) const;

  // All `exponent()` digits after the point; requires 0 <= value < 1.
  std::vector<unsigned> digits() const;

  double to_double() const;

  // "num/radix^exp", e.g. "-2/3^1".
  std::string to_string() const;

 private:
  void canonicalize();
  mpz_class aligned_numerator(std::size_t exponent) const;

  mpz_class num_;
  std::size_t exp_ = 0;
  mpz_class den_ = 1;
  unsigned radix_;
};

mpz_class power_of(unsigned radix, std::size_t exponent);

}  // namespace turingflow
