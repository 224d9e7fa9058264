#include "collatz_spectra/decimal.hpp"

#include <stdexcept>

namespace collatz {

namespace {

struct Rounded {
  bool negative = false;
  std::string digits;  // exactly `significant` digits, first nonzero
  long exponent = 0;   // value = 0.d1d2... * 10^(exponent+1), i.e. d1 sits at 10^exponent
};

// Largest e with 10^e <= v, for v > 0.
long decimal_exponent(const BigRat& v) {
  long e = static_cast<long>(mpz_sizeinbase(v.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(v.get_den_mpz_t(), 10));
  // sizeinbase can overshoot by one; walk to the exact exponent.
  auto pow10 = [](long k) -> BigRat {
    const BigInt t = ipow(10, static_cast<unsigned long>(k < 0 ? -k : k));
    return k >= 0 ? BigRat(t) : BigRat(BigInt(1), t);
  };
  while (pow10(e) > v) --e;
  while (pow10(e + 1) <= v) ++e;
  return e;
}

Rounded round_significant(const BigRat& value, int significant) {
  if (significant < 1) throw std::invalid_argument("significant digits must be >= 1");
  Rounded out;
  out.negative = value < 0;
  BigRat v = abs(value);
  const long e = decimal_exponent(v);
  // Scale so the first significant digit lands at 10^(significant-1).
  const long shift = significant - 1 - e;
  BigRat scaled = v;
  if (shift >= 0) {
    scaled *= BigRat(ipow(10, static_cast<unsigned long>(shift)));
  } else {
    scaled /= BigRat(ipow(10, static_cast<unsigned long>(-shift)));
  }
  // Round half away from zero: floor(scaled + 1/2).
  BigRat half_up = scaled + BigRat(1, 2);
  BigInt n;
  mpz_fdiv_q(n.get_mpz_t(), half_up.get_num_mpz_t(), half_up.get_den_mpz_t());
  out.exponent = e;
  out.digits = n.get_str();
  if (static_cast<int>(out.digits.size()) > significant) {
    // 9.99.. rounded up to 10.0..
    out.digits.pop_back();
    ++out.exponent;
  }
  return out;
}

void trim_fraction(std::string& s) {
  if (s.find('.') == std::string::npos) return;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
}

std::string scientific(const Rounded& r) {
  std::string mant = r.digits.substr(0, 1);
  if (r.digits.size() > 1) mant += "." + r.digits.substr(1);
  trim_fraction(mant);
  const long e = r.exponent;
  std::string exp = std::to_string(e < 0 ? -e : e);
  if (exp.size() < 2) exp = "0" + exp;
  return (r.negative ? "-" : "") + mant + "e" + (e < 0 ? "-" : "+") + exp;
}

}  // namespace

std::string to_decimal(const BigRat& value, int significant) {
  if (value == 0) return "0";
  const Rounded r = round_significant(value, significant);
  if (r.exponent < -6 || r.exponent >= 7) return scientific(r);

  std::string s;
  if (r.exponent >= 0) {
    const auto int_len = static_cast<std::size_t>(r.exponent + 1);
    std::string digits = r.digits;
    if (digits.size() < int_len) digits.append(int_len - digits.size(), '0');
    s = digits.substr(0, int_len);
    if (digits.size() > int_len) s += "." + digits.substr(int_len);
  } else {
    s = "0." + std::string(static_cast<std::size_t>(-r.exponent - 1), '0') + r.digits;
  }
  trim_fraction(s);
  return (r.negative ? "-" : "") + s;
}

std::string to_scientific(const BigRat& value, int significant) {
  if (value == 0) return "0";
  return scientific(round_significant(value, significant));
}

std::string to_fraction(const BigRat& value) {
  BigRat v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace collatz
