#pragma once

// Branches of FrakU3/FrakU5 (runs of middle steps closed by the end-of-branch
// step), chains of consecutive branches, and the preimage tree rooted at 1.

#include "collatz_spectra/affine.hpp"
#include "collatz_spectra/maps.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace collatz {

struct Branch {
  MapId map = MapId::FrakU3;
  BigInt start;
  std::vector<StepRecord> steps;
  BigInt end;               // last value reached (the branch end when complete)
  bool complete = false;    // false when the step budget ran out first
  Direction direction = Direction::PG;  // start against end; x == y counts as PG

  /// Number of integers in the branch, start and end included.
  int length() const { return static_cast<int>(steps.size()) + 1; }
  std::vector<BigInt> values() const;
  OperationWord word() const;
  BigInt peak() const;
};

Branch branch_from(MapId frak, const BigInt& n, std::size_t budget);

/// The branch's integers in the grouped-U trajectory.
std::vector<BigInt> u_image(const Branch& b);

struct ChainLevel {
  Branch branch;
  Direction against_origin = Direction::PG;  // x_1 against y_j
  Direction against_level = Direction::PG;   // x_j against y_j
};

struct Chain {
  std::vector<ChainLevel> levels;
  bool budget_exhausted = false;
};

/// Up to max_levels consecutive branches, each starting at the previous end;
/// `budget` bounds the steps of each branch.
Chain chain_from(MapId frak, const BigInt& n, int max_levels, std::size_t budget);

struct Preimage {
  BigInt value;
  int branch = 0;
};

/// Every n with map(n) = m, in branch-table order.
std::vector<Preimage> preimages(MapId map, const BigInt& m);

/// True when no middle step reaches n (n = 2 mod 3, resp. 3 mod 5).
bool is_branch_beginner(MapId frak, const BigInt& n);

struct TreeEdge {
  BigInt from;
  BigInt to;  // map(from)
  int branch = 0;
  bool terminal = false;
  std::optional<Direction> direction;  // of the maximal branch holding this edge, once its beginner is known
};

struct BranchTree {
  MapId map = MapId::FrakU3;
  std::vector<BigInt> nodes;  // discovery order, root first
  std::vector<TreeEdge> edges;
  std::vector<Branch> branches;  // complete branches whose beginner is in the tree

  bool contains(const BigInt& n) const;
};

/// Breadth-first preimage expansion from 1, stopping at node_budget nodes.
BranchTree build_tree(MapId frak, std::size_t node_budget);

/// Graphviz text; nodes ascending, edges by source.
std::string export_dot(const BranchTree& tree);

}  // namespace collatz
