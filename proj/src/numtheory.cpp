#include "collatz_spectra/numtheory.hpp"

#include <stdexcept>

namespace collatz {

BigInt mod_floor(const BigInt& n, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt ipow(unsigned long base, unsigned long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

ResidueClass::ResidueClass(const BigInt& rep, const BigInt& modulus) : modulus_(modulus) {
  if (modulus_ < 1) throw std::invalid_argument("residue class modulus must be >= 1");
  rep_ = mod_floor(rep, modulus_);
}

bool ResidueClass::contains(const BigInt& n) const { return mod_floor(n, modulus_) == rep_; }

std::string ResidueClass::to_string() const {
  return rep_.get_str() + " (mod " + modulus_.get_str() + ")";
}

GcdResult extended_gcd(const BigInt& a, const BigInt& b) {
  if (a == 0 && b == 0) throw std::domain_error("undefined gcd");

  // Iterative Euclid on (a, b) keeping the Bezout coefficients.
  BigInt old_r = a, r = b;
  BigInt old_s = 1, s = 0;
  BigInt old_t = 0, t = 1;
  while (r != 0) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), old_r.get_mpz_t(), r.get_mpz_t());
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

DiophantineSolution solve_linear(const BigInt& c, const BigInt& b, const BigInt& a) {
  if (a == 0 || b == 0) throw std::invalid_argument("solve_linear needs nonzero a and b");

  // b*y - a*x = c  <=>  b*y + (-a)*x = c.
  const GcdResult e = extended_gcd(b, -a);
  if (mod_floor(c, e.g) != 0) throw std::domain_error("no integer solutions");

  const BigInt scale = c / e.g;
  const BigInt x_step = b / e.g;
  const BigInt y_step = a / e.g;
  const BigInt x_mod = abs(x_step);
  const BigInt y_mod = abs(y_step);

  // Particular solution from Bezout, then slide q so x lands in [0, |b/g|).
  BigInt x = e.t * scale;
  BigInt y = e.s * scale;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), x_mod.get_mpz_t());
  if (x_step < 0) q = -q;
  x -= x_step * q;
  y -= y_step * q;

  return {ResidueClass(x, x_mod), ResidueClass(y, y_mod), x, y, x_step, y_step};
}

BigInt binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("binomial needs 0 <= k <= n");
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt multinomial(std::span<const int> parts) {
  BigInt result = 1;
  int total = 0;
  for (int p : parts) {
    if (p < 0) throw std::invalid_argument("multinomial parts must be nonnegative");
    total += p;
    result *= binomial(total, p);
  }
  return result;
}

BigRat rat_pow(const BigRat& r, unsigned long exp) {
  BigRat out;
  mpz_pow_ui(mpq_numref(out.get_mpq_t()), r.get_num_mpz_t(), exp);
  mpz_pow_ui(mpq_denref(out.get_mpq_t()), r.get_den_mpz_t(), exp);
  out.canonicalize();
  return out;
}

BigRat geometric_sum(const BigRat& a, const BigRat& r, int n) {
  if (n < 0) throw std::invalid_argument("geometric_sum needs n >= 0");
  if (r == 1) return BigRat(a * n);
  BigRat sum = a * (1 - rat_pow(r, static_cast<unsigned long>(n))) / (1 - r);
  sum.canonicalize();
  return sum;
}

}  // namespace collatz
