#pragma once

// Slice experiments (direct iteration over 1..N) and consistency audits that
// tie the analytic family/density results to simulation.

#include "collatz_spectra/families.hpp"
#include "collatz_spectra/maps.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace collatz {

enum class SliceDomain { All, Odd };

struct SliceOptions {
  std::size_t step_budget = 100'000;  // per branch
  std::size_t threads = 1;
  int analytic_lmax = 30;             // 0 disables the analytic column
};

struct SliceReport {
  MapId map = MapId::FrakU3;
  int level = 1;
  BigInt n_max;
  SliceDomain domain = SliceDomain::All;
  BigInt count;       // starts still below y_j for every j <= level
  BigInt total;       // starts examined
  BigInt unresolved;  // budget exhausted or cycled before reaching this level
  std::optional<BigRat> analytic;

  BigRat fraction() const {
    BigRat r(count, total);
    r.canonicalize();
    return r;
  }
};

/// Levels 1..max_level from one pass over the starts. FrakU3/FrakU5 slices
/// run over n = 1..N; U3Grouped/U5Grouped over odd x <= N, iterated through
/// the correspondence (x = 2n-1, end y_U = 3y-1 or 5y-2).
std::vector<SliceReport> slice_fractions(MapId map, int max_level, const BigInt& n_max,
                                         const SliceOptions& options = {});
SliceReport slice_fraction(MapId map, int level, const BigInt& n_max, const SliceOptions& options = {});

struct AuditReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::vector<std::string> witnesses;  // at most a few

  bool ok() const { return violations == 0; }
};

/// Every Frak triplet from n = 1..bound lands on a valid grouped triplet,
/// distinct n give distinct images, and every odd integer up to 2*bound-1 is
/// reached.
AuditReport audit_bijection(Problem problem, const BigInt& bound);

/// The first `samples` members of every family of length L realize its word,
/// land in its y-class on its relation, and compare as its direction says.
AuditReport audit_family_vs_simulation(MapId map, int length, std::size_t samples);

}  // namespace collatz
