#pragma once

// Enumeration of sequence families by length, the geometric-series
// distribution of their starting integers, and the exact rising fraction
// over several chained branch levels.

#include "collatz_spectra/affine.hpp"
#include "collatz_spectra/numtheory.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace collatz {

struct IncrementGroup {
  BigInt modulus;
  BigInt count;
};

struct FamilyTable {
  MapId map = MapId::FrakU3;
  int length = 2;
  std::vector<SequenceFamily> families;  // sorted by (modulus, rep)

  /// Families per x-modulus, ascending.
  std::vector<IncrementGroup> groups() const;
};

/// Largest length accepted by enumerate_families for this map.
int max_enumeration_length(MapId map);

/// Every family of length L for FrakU3/FrakU5, or their images for
/// U3Grouped/U5Grouped. Throws std::length_error past
/// max_enumeration_length (the counts are available from the DP).
FamilyTable enumerate_families(MapId map, int length);

/// (1/4)(3/4)^(L-2) or (1/16)(15/16)^(L-2).
BigRat distribution_DL(MapId map, int length);
/// 1 - (3/4)^(L-1) or 1 - (15/16)^(L-1).
BigRat cumulative_SL(MapId map, int length);

/// Number of words of a given length whose divisors multiply to 2^e2, indexed
/// by e2 (the end step included). The U maps use their Frak alphabet.
std::vector<BigInt> word_spectrum(MapId map, int length);

/// A DP state: word chains with composite B = 2^e2 and A = p^eo.
struct LevelState {
  int e2 = 0;
  int eo = 0;
  BigInt count;
};

/// True when a chain with this composite has fallen below its start. For U
/// maps the comparison is 2*2^e2 against p*p^eo (x_U = 2x-1, y_U = p*y - ...).
bool descends(MapId map, int e2, int eo);

struct DensityOptions {
  std::size_t threads = 1;
  /// Upper bound on state-transition updates; lmax is lowered to fit.
  std::uint64_t work_budget = 400'000'000;
};

struct LengthTerm {
  int length = 2;
  BigRat d_l;
  BigRat s_l;
};

struct DensityReport {
  MapId map = MapId::FrakU3;
  int lmax_requested = 2;
  int lmax_achieved = 2;
  bool partial = false;
  std::vector<BigRat> rising;  // rising[j-1]: fraction with x < y_i for all i <= j
  BigRat coverage;             // S_L at lmax_achieved
  std::vector<LengthTerm> terms;
};

/// Exact density of starts whose chain stays above the start at every one of
/// `levels` branch ends, each branch of length 2..lmax. U-map densities are
/// relative to the odd integers.
DensityReport rising_fraction(MapId map, int lmax, int levels, const DensityOptions& options = {});

/// Same, with its own maximal length for each level. The report's lmax
/// fields describe the first level.
DensityReport rising_fraction_levels(MapId map, std::span<const int> lmax_per_level,
                                     const DensityOptions& options = {});

/// The surviving states after `levels` levels (for inspection and tests).
std::vector<LevelState> survivor_states(MapId map, int lmax, int levels,
                                        const DensityOptions& options = {});

struct PpRow {
  int length = 2;
  BigInt equations;                   // 2^(L-2) or 4^(L-2)
  std::vector<IncrementGroup> groups; // rising families by x-modulus
  BigRat density;                     // this length
  BigRat cumulative;                  // lengths 2..L
  BigRat s_l;
};

std::vector<PpRow> pp_distribution_table(MapId map, int lmin, int lmax);

}  // namespace collatz
