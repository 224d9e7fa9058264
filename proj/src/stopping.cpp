#include "collatz_spectra/stopping.hpp"

#include "collatz_spectra/parallel.hpp"

#include <stdexcept>

namespace collatz {

namespace {

void require_t_map(MapId map) {
  if (map != MapId::T3 && map != MapId::T5) throw std::invalid_argument("stopping times need t3 or t5");
}

}  // namespace

const char* flavor_name(Flavor f) { return f == Flavor::Strict ? "strict" : "terras"; }

std::optional<Flavor> parse_flavor(std::string_view s) {
  if (s == "strict") return Flavor::Strict;
  if (s == "terras") return Flavor::Terras;
  return std::nullopt;
}

StoppingTime stopping_time(MapId map, const BigInt& n, std::size_t budget) {
  require_t_map(map);
  if (n < 1) throw std::invalid_argument("stopping time needs n >= 1");
  BigInt cur = n;
  for (std::size_t k = 1; k <= budget; ++k) {
    cur = step(map, cur).output;
    if (cur < n) return {false, k};
  }
  return {true, budget};
}

std::string diadic_word(MapId map, const BigInt& n, int k) {
  require_t_map(map);
  std::string w;
  BigInt cur = n;
  for (int j = 0; j < k; ++j) {
    const StepRecord r = step(map, cur);
    w += r.branch == 1 ? '1' : '0';
    cur = r.output;
  }
  return w;
}

const BigInt& SurvivorTriangle::at(int i, int k) const {
  if (k < 0 || k > k_max || i < 0 || i > k) throw std::out_of_range("triangle index");
  return rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
}

BigInt SurvivorTriangle::column_sum(int k) const {
  BigInt s = 0;
  for (int i = 0; i <= k; ++i) s += at(i, k);
  return s;
}

SurvivorTriangle build_triangle(MapId map, int k_max, Flavor flavor) {
  require_t_map(map);
  if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  const unsigned long p = odd_multiplier(problem_of(map));

  // strict[k][i]: classes mod 2^k with i odd steps whose coefficient p^i has
  // stayed above 2^j at every j <= k.
  std::vector<std::vector<BigInt>> strict(static_cast<std::size_t>(k_max) + 1);
  strict[0] = {BigInt(1)};
  BigInt two_k = 1;
  for (int k = 1; k <= k_max; ++k) {
    two_k *= 2;
    auto& row = strict[static_cast<std::size_t>(k)];
    row.assign(static_cast<std::size_t>(k) + 1, 0);
    const auto& prev = strict[static_cast<std::size_t>(k - 1)];
    BigInt pi = 1;
    for (int i = 0; i <= k; ++i) {
      if (pi > two_k) {
        const auto ui = static_cast<std::size_t>(i);
        if (ui < prev.size()) row[ui] += prev[ui];
        if (i >= 1) row[ui] += prev[ui - 1];
      }
      pi *= p;
    }
  }

  SurvivorTriangle tri;
  tri.map = map;
  tri.flavor = flavor;
  tri.k_max = k_max;
  if (flavor == Flavor::Strict) {
    tri.rows = std::move(strict);
    return tri;
  }
  // Terras: the children of the strict survivors at k-1, before the drop.
  tri.rows.resize(static_cast<std::size_t>(k_max) + 1);
  tri.rows[0] = {BigInt(1)};
  for (int k = 1; k <= k_max; ++k) {
    auto& row = tri.rows[static_cast<std::size_t>(k)];
    row.assign(static_cast<std::size_t>(k) + 1, 0);
    const auto& prev = strict[static_cast<std::size_t>(k - 1)];
    for (std::size_t i = 0; i < prev.size(); ++i) {
      row[i] += prev[i];
      row[i + 1] += prev[i];
    }
  }
  return tri;
}

BigRat distribution_F(const SurvivorTriangle& tri, int k) {
  BigRat f(tri.column_sum(k), BigInt(1) << static_cast<mp_bitcnt_t>(k));
  f.canonicalize();
  return f;
}

BigRat distribution_F(MapId map, int k, Flavor flavor) {
  return distribution_F(build_triangle(map, k, flavor), k);
}

BigRat distribution_G(MapId map, int k) { return 1 - distribution_F(map, k, Flavor::Strict); }

EmpiricalF empirical_F(MapId map, int k, const BigInt& n_max, Flavor flavor, std::size_t threads) {
  require_t_map(map);
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  if (n_max < 1) throw std::invalid_argument("N must be >= 1");
  if (!n_max.fits_ulong_p()) throw std::invalid_argument("N too large for direct iteration");
  const unsigned long p = odd_multiplier(problem_of(map));
  const unsigned long N = n_max.get_ui();
  // Steps that must stay at or above the start.
  const int horizon = flavor == Flavor::Strict ? k : k - 1;

  struct Tally {
    BigInt count = 0, predicted = 0, exceptions = 0;
  };
  const std::size_t workers = std::max<std::size_t>(1, threads);
  std::vector<Tally> tallies(workers);
  parallel_chunks(N, workers, [&](std::size_t b, std::size_t e, std::size_t w) {
    Tally& t = tallies[w];
    for (std::size_t idx = b; idx < e; ++idx) {
      const BigInt n = static_cast<unsigned long>(idx + 1);
      BigInt cur = n;
      BigInt coeff = 1;  // p^(odd steps so far)
      BigInt two_j = 1;
      bool actual = true;
      bool predicted = true;
      for (int j = 1; j <= horizon; ++j) {
        const StepRecord r = step(map, cur);
        cur = r.output;
        if (r.branch == 1) coeff *= p;
        two_j *= 2;
        if (cur < n) actual = false;
        if (coeff < two_j) predicted = false;
      }
      if (actual) t.count += 1;
      if (predicted) t.predicted += 1;
      if (actual != predicted) t.exceptions += 1;
    }
  });

  EmpiricalF out;
  out.n_max = n_max;
  for (const auto& t : tallies) {
    out.count += t.count;
    out.predicted += t.predicted;
    out.exceptions += t.exceptions;
  }
  return out;
}

}  // namespace collatz
