#pragma once

// The piecewise maps of the 3x+1 and 5x+1 problems, single steps and
// trajectories, and the triplet correspondence between the auxiliary maps
// (FrakU3, FrakU5) and the grouped accelerated maps (U3Grouped, U5Grouped).

#include "collatz_spectra/numtheory.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace collatz {

enum class MapId {
  C3,         // n/2 or 3n+1
  T3,         // n/2 or (3n+1)/2
  U3Full,     // (3n+1)/2^ord2(3n+1), odd n only
  U3Grouped,  // three cases dividing by 4, 2 or 8, odd n only
  FrakU3,     // (3n+1)/4, 3n/2, (n+1)/4 on all integers
  C5,
  T5,
  U5Full,
  U5Grouped,  // five cases dividing by 4, 2, 16, 8, 32
  FrakU5,     // 5n/4, (5n-1)/2, (5n+6)/16, (5n+2)/8, (n+6)/16
};

enum class Problem { ThreeX, FiveX };

std::string_view map_name(MapId map);
std::optional<MapId> parse_map(std::string_view name);

Problem problem_of(MapId map);
/// 3 or 5.
unsigned long odd_multiplier(Problem problem);
/// FrakU3 / FrakU5.
MapId frak_map(Problem problem);
/// U3Grouped / U5Grouped.
MapId grouped_map(Problem problem);

bool is_frak(MapId map);
bool is_grouped(MapId map);
/// Maps whose domain is the odd integers.
bool odd_domain(MapId map);

/// One branch y = (mult*n + add)/div of a piecewise-affine map, taken when n
/// lies in `guard`.
struct AffineStep {
  BigInt mult;
  BigInt add;
  BigInt div;
  ResidueClass guard;
  std::string_view label;

  BigInt apply(const BigInt& n) const { return (mult * n + add) / div; }
};

/// Branch table of a piecewise-affine map (every map except U3Full/U5Full).
/// Branch ids are indices into this table.
std::span<const AffineStep> branches(MapId map);

/// End-of-branch step of a Frak map: (n+1)/4 or (n+6)/16.
int terminal_branch(MapId frak);
/// The non-terminal branches of a Frak map, in table order.
std::span<const int> middle_branches(MapId frak);

struct StepRecord {
  BigInt input;
  int branch = 0;  // index into branches(map); ord2(p*n+1) for the full U maps
  BigInt output;
};

/// Largest e with 2^e | n. Throws std::domain_error for n = 0.
int ord2(const BigInt& n);

/// One application of `map`. Throws std::domain_error("domain is odd
/// integers") for even input to a map defined on odd integers.
StepRecord step(MapId map, const BigInt& n);

enum class StopKind { MaxSteps, ValueBelow, BranchFired, CycleDetected };

struct StopRule {
  StopKind kind = StopKind::MaxSteps;
  BigInt threshold;        // ValueBelow
  int branch = 0;          // BranchFired
  std::size_t budget = 0;  // hard step limit for every kind

  static StopRule max_steps(std::size_t n) { return {StopKind::MaxSteps, 0, 0, n}; }
  static StopRule value_below(const BigInt& v, std::size_t budget) {
    return {StopKind::ValueBelow, v, 0, budget};
  }
  static StopRule branch_fired(int branch, std::size_t budget) {
    return {StopKind::BranchFired, 0, branch, budget};
  }
  static StopRule cycle_detected(std::size_t budget) {
    return {StopKind::CycleDetected, 0, 0, budget};
  }
};

enum class StopStatus {
  StepLimit,
  ValueBelow,
  BranchFired,
  CycleDetected,
  BudgetExhausted,
  LeftDomain,  // a grouped map produced an even branch end
};

std::string_view status_name(StopStatus status);

struct Trajectory {
  std::vector<StepRecord> steps;
  StopStatus status = StopStatus::StepLimit;
  std::vector<BigInt> cycle;  // filled for CycleDetected, starting at the repeated value
};

Trajectory trajectory(MapId map, const BigInt& n, const StopRule& rule);

enum class Role { EndOfBranch, Other };

/// Image of an integer of a Frak trajectory in the grouped-U trajectory:
/// 2n-1 for ordinary positions, 3n-1 (3x+1) or 5n-2 (5x+1) for branch ends.
BigInt correspond_u_from_fraku(const BigInt& n_new, Role role, Problem problem = Problem::ThreeX);

/// A duo n -> map(n) with an intermediate value inserted between them, so
/// that Frak and grouped steps line up one to one.
struct Triplet {
  BigInt first;
  BigInt intermediate;
  BigInt last;
  int branch = 0;
};

/// (n, n, FrakU(n)) for a Frak map.
Triplet frak_triplet(MapId frak, const BigInt& n);
/// (n, (p*n+1)/2, Ugrouped(n)) for a grouped map.
Triplet grouped_triplet(MapId grouped, const BigInt& n);
/// Elementwise image of a Frak triplet under the correspondence.
Triplet to_grouped_triplet(Problem problem, const Triplet& frak);

}  // namespace collatz
