#pragma once

// Operation words of the auxiliary maps, their composition into one affine
// relation C = B*y - A*x, and the residue-class families they describe.

#include "collatz_spectra/maps.hpp"
#include "collatz_spectra/numtheory.hpp"

#include <string>
#include <vector>

namespace collatz {

/// A branch of length L = middle.size() + 2: the listed middle steps of a
/// Frak map followed by its end-of-branch step.
struct OperationWord {
  MapId map = MapId::FrakU3;
  std::vector<int> middle;

  int length() const { return static_cast<int>(middle.size()) + 2; }
  /// All step ids including the terminal one.
  std::vector<int> steps() const;
  /// Divisors of the steps joined with '.', e.g. "2.2.2.2.4".
  std::string label() const;

  friend bool operator==(const OperationWord&, const OperationWord&) = default;
};

/// y = (A*x + C)/B, i.e. C = B*y - A*x.
struct AffineMap {
  BigInt A = 1;
  BigInt B = 1;
  BigInt C = 0;

  /// Exact image; the caller guarantees B | A*x + C.
  BigInt apply(const BigInt& x) const;
  /// Image as a rational, valid for any x.
  BigRat apply_rational(const BigInt& x) const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// PG: start larger than end (x > y). PP: start smaller (x < y).
enum class Direction { PG, PP };

const char* direction_name(Direction d);

struct SequenceFamily {
  MapId map = MapId::FrakU3;  // FrakU3/FrakU5, or U3Grouped/U5Grouped after transform
  OperationWord word;         // always the Frak word
  ResidueClass x_class;
  ResidueClass y_class;
  AffineMap relation;
  Direction direction = Direction::PG;

  int length() const { return word.length(); }
};

AffineMap compose(const OperationWord& word);

/// Direction decided by B against A. Requires C > 0: throws
/// std::domain_error("comparator precondition violated") otherwise.
Direction compare_endpoints(const AffineMap& rel);

/// B against A without the sign condition on C. For B < A and C <= 0 the
/// start is smaller than the end only beyond x > -C/(A-B); the density of
/// such starts is unaffected. Used for 5x+1 words, whose (5n-1)/2 step makes
/// C negative.
Direction asymptotic_direction(const AffineMap& rel);

/// x-class of `word` by pulling guards backward through the steps, with the
/// relation, y-class and direction.
SequenceFamily solve_word(const OperationWord& word);

/// Image of a Frak family under the correspondence x -> 2x-1, end -> 3y-1
/// (5y-2), with the relation and direction recomputed.
SequenceFamily transform_family_to_U(const SequenceFamily& fam);

/// The integers of the branch from `x` (a member of fam.x_class, start to
/// end); U families are realized through the correspondence.
std::vector<BigInt> realize(const SequenceFamily& fam, const BigInt& x);

/// All words of length L of a Frak map, in lexicographic order of step ids.
std::vector<OperationWord> all_words(MapId frak, int length);

}  // namespace collatz
