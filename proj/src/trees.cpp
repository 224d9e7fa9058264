#include "collatz_spectra/trees.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace collatz {

namespace {

void require_frak(MapId map) {
  if (!is_frak(map)) throw std::invalid_argument("branches are defined for fraku3 and fraku5");
}

Direction numeric_direction(const BigInt& x, const BigInt& y) {
  return x < y ? Direction::PP : Direction::PG;
}

constexpr std::size_t kTreeBranchBudget = 1'000'000;

}  // namespace

std::vector<BigInt> Branch::values() const {
  std::vector<BigInt> v{start};
  for (const auto& s : steps) v.push_back(s.output);
  return v;
}

OperationWord Branch::word() const {
  if (!complete) throw std::logic_error("incomplete branch has no word");
  OperationWord w{map, {}};
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) w.middle.push_back(steps[i].branch);
  return w;
}

BigInt Branch::peak() const {
  BigInt m = start;
  for (const auto& s : steps) m = std::max(m, s.output);
  return m;
}

Branch branch_from(MapId frak, const BigInt& n, std::size_t budget) {
  require_frak(frak);
  const int term = terminal_branch(frak);
  Branch b;
  b.map = frak;
  b.start = n;
  b.end = n;
  for (std::size_t i = 0; i < budget; ++i) {
    b.steps.push_back(step(frak, b.end));
    b.end = b.steps.back().output;
    if (b.steps.back().branch == term) {
      b.complete = true;
      break;
    }
  }
  b.direction = numeric_direction(b.start, b.end);
  return b;
}

std::vector<BigInt> u_image(const Branch& b) {
  const Problem problem = problem_of(b.map);
  std::vector<BigInt> v = b.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const bool end = b.complete && i + 1 == v.size();
    v[i] = correspond_u_from_fraku(v[i], end ? Role::EndOfBranch : Role::Other, problem);
  }
  return v;
}

Chain chain_from(MapId frak, const BigInt& n, int max_levels, std::size_t budget) {
  require_frak(frak);
  Chain c;
  BigInt cur = n;
  for (int level = 0; level < max_levels; ++level) {
    ChainLevel lv;
    lv.branch = branch_from(frak, cur, budget);
    lv.against_origin = numeric_direction(n, lv.branch.end);
    lv.against_level = numeric_direction(cur, lv.branch.end);
    const bool done = lv.branch.complete;
    cur = lv.branch.end;
    c.levels.push_back(std::move(lv));
    if (!done) {
      c.budget_exhausted = true;
      break;
    }
  }
  return c;
}

std::vector<Preimage> preimages(MapId map, const BigInt& m) {
  std::vector<Preimage> out;
  const auto table = branches(map);
  if (table.empty()) throw std::invalid_argument("preimages need a piecewise-affine map");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const AffineStep& s = table[i];
    const BigInt num = s.div * m - s.add;
    if (!mpz_divisible_p(num.get_mpz_t(), s.mult.get_mpz_t())) continue;
    BigInt n;
    mpz_divexact(n.get_mpz_t(), num.get_mpz_t(), s.mult.get_mpz_t());
    if (s.guard.contains(n)) out.push_back({n, static_cast<int>(i)});
  }
  return out;
}

bool is_branch_beginner(MapId frak, const BigInt& n) {
  require_frak(frak);
  const int term = terminal_branch(frak);
  for (const auto& p : preimages(frak, n)) {
    if (p.branch != term) return false;
  }
  return true;
}

bool BranchTree::contains(const BigInt& n) const {
  return std::find(nodes.begin(), nodes.end(), n) != nodes.end();
}

BranchTree build_tree(MapId frak, std::size_t node_budget) {
  require_frak(frak);
  const int term = terminal_branch(frak);
  BranchTree t;
  t.map = frak;
  if (node_budget == 0) return t;

  std::set<BigInt> seen{BigInt(1)};
  std::deque<BigInt> queue{BigInt(1)};
  t.nodes.push_back(1);
  std::map<BigInt, std::size_t> edge_of;  // source -> index in edges
  while (!queue.empty() && t.nodes.size() < node_budget) {
    const BigInt m = queue.front();
    queue.pop_front();
    for (const auto& p : preimages(frak, m)) {
      if (t.nodes.size() >= node_budget) break;
      if (p.value == m || seen.count(p.value) != 0) continue;
      seen.insert(p.value);
      t.nodes.push_back(p.value);
      queue.push_back(p.value);
      edge_of[p.value] = t.edges.size();
      t.edges.push_back({p.value, m, p.branch, p.branch == term, std::nullopt});
    }
  }

  std::vector<BigInt> beginners;
  for (const auto& n : t.nodes) {
    if (is_branch_beginner(frak, n)) beginners.push_back(n);
  }
  std::sort(beginners.begin(), beginners.end());
  for (const auto& s : beginners) {
    Branch b = branch_from(frak, s, kTreeBranchBudget);
    if (!b.complete) continue;
    const auto v = b.values();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      auto it = edge_of.find(v[i]);
      if (it != edge_of.end()) t.edges[it->second].direction = b.direction;
    }
    t.branches.push_back(std::move(b));
  }
  return t;
}

std::string export_dot(const BranchTree& tree) {
  std::ostringstream os;
  os << "digraph " << map_name(tree.map) << " {\n";
  std::vector<BigInt> nodes = tree.nodes;
  std::sort(nodes.begin(), nodes.end());
  for (const auto& n : nodes) os << "  \"" << n.get_str() << "\";\n";
  std::vector<const TreeEdge*> edges;
  for (const auto& e : tree.edges) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](const TreeEdge* a, const TreeEdge* b) { return a->from < b->from; });
  const auto table = branches(tree.map);
  for (const TreeEdge* e : edges) {
    os << "  \"" << e->from.get_str() << "\" -> \"" << e->to.get_str() << "\" [label=\""
       << table[static_cast<std::size_t>(e->branch)].label << "\"";
    if (e->terminal) os << ", style=bold";
    if (e->direction) os << ", direction=" << direction_name(*e->direction);
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace collatz
