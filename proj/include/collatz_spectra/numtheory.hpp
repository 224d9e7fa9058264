#pragma once

// Exact integer and rational utilities: extended gcd, the two-unknown linear
// Diophantine solver, binomial/multinomial coefficients and geometric sums.

#include <gmpxx.h>

#include <span>
#include <string>
#include <utility>

namespace collatz {

using BigInt = mpz_class;
using BigRat = mpq_class;

/// The arithmetic progression rep + q * modulus, with 0 <= rep < modulus.
class ResidueClass {
 public:
  ResidueClass() : rep_(0), modulus_(1) {}
  ResidueClass(const BigInt& rep, const BigInt& modulus);

  const BigInt& rep() const { return rep_; }
  const BigInt& modulus() const { return modulus_; }

  bool contains(const BigInt& n) const;
  BigInt member(const BigInt& q) const { return rep_ + q * modulus_; }

  /// "48 (mod 64)"
  std::string to_string() const;

  friend bool operator==(const ResidueClass& a, const ResidueClass& b) {
    return a.rep_ == b.rep_ && a.modulus_ == b.modulus_;
  }

 private:
  BigInt rep_;
  BigInt modulus_;
};

/// Least nonnegative residue of n modulo m (m > 0).
BigInt mod_floor(const BigInt& n, const BigInt& m);

/// base^exp for small nonnegative exponents.
BigInt ipow(unsigned long base, unsigned long exp);

struct GcdResult {
  BigInt g;
  BigInt s;
  BigInt t;
};

/// g = gcd(a, b) > 0 with s*a + t*b = g. Throws std::domain_error when both
/// inputs are zero.
GcdResult extended_gcd(const BigInt& a, const BigInt& b);

/// Solution set of c = b*y - a*x. The same parameter q advances both
/// unknowns: x = x0 + x_step*q, y = y0 + y_step*q.
struct DiophantineSolution {
  ResidueClass x_class;
  ResidueClass y_class;
  BigInt x0;
  BigInt y0;
  BigInt x_step;
  BigInt y_step;

  std::pair<BigInt, BigInt> at(const BigInt& q) const {
    return {x0 + x_step * q, y0 + y_step * q};
  }
};

/// Solves c = b*y - a*x over the integers. x0 is the least nonnegative
/// solution for x. Throws std::domain_error("no integer solutions") when
/// gcd(a, b) does not divide c, std::invalid_argument when a or b is zero.
DiophantineSolution solve_linear(const BigInt& c, const BigInt& b, const BigInt& a);

BigInt binomial(int n, int k);

/// (sum parts)! / prod(parts!)
BigInt multinomial(std::span<const int> parts);

/// a(1 - r^n)/(1 - r); for r = 1 the degenerate sum n*a.
BigRat geometric_sum(const BigRat& a, const BigRat& r, int n);

/// Exact integer power of a rational.
BigRat rat_pow(const BigRat& r, unsigned long exp);

}  // namespace collatz
