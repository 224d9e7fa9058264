#pragma once

// Stopping times under T3/T5, the survivor triangle n(i, k) counting residue
// classes mod 2^k that have not yet dropped below their start, and the
// distribution F(k) derived from it.

#include "collatz_spectra/maps.hpp"
#include "collatz_spectra/numtheory.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace collatz {

/// strict: chi(n) > k. terras: chi(n) >= k.
enum class Flavor { Strict, Terras };

const char* flavor_name(Flavor f);
std::optional<Flavor> parse_flavor(std::string_view s);

struct StoppingTime {
  bool exceeded = false;  // budget ran out before T^k(n) < n
  std::size_t k = 0;
};

/// Least k >= 1 with T^k(n) < n, for map T3 or T5 and n >= 1.
StoppingTime stopping_time(MapId map, const BigInt& n, std::size_t budget);

/// Parity sequence of the first k steps of T3/T5 from n, as '0'/'1'.
std::string diadic_word(MapId map, const BigInt& n, int k);

struct SurvivorTriangle {
  MapId map = MapId::T3;
  Flavor flavor = Flavor::Strict;
  int k_max = 0;
  std::vector<std::vector<BigInt>> rows;  // rows[k][i], 0 <= i <= k

  const BigInt& at(int i, int k) const;
  BigInt column_sum(int k) const;
};

SurvivorTriangle build_triangle(MapId map, int k_max, Flavor flavor);

/// sum_i n(i, k) / 2^k
BigRat distribution_F(const SurvivorTriangle& tri, int k);
BigRat distribution_F(MapId map, int k, Flavor flavor);
/// 1 - F_strict(k)
BigRat distribution_G(MapId map, int k);

struct EmpiricalF {
  BigInt n_max;
  BigInt count;       // n <= N whose stopping time passes the test
  BigInt predicted;   // n <= N whose parity word passes the class test
  BigInt exceptions;  // n where the two disagree
  BigRat fraction() const { return ratio(count); }
  BigRat predicted_fraction() const { return ratio(predicted); }

 private:
  BigRat ratio(const BigInt& num) const {
    BigRat r(num, n_max);
    r.canonicalize();
    return r;
  }
};

/// Direct iteration over n = 1..N.
EmpiricalF empirical_F(MapId map, int k, const BigInt& n_max, Flavor flavor, std::size_t threads = 1);

}  // namespace collatz
