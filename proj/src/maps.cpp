#include "collatz_spectra/maps.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace collatz {

namespace {

AffineStep make_step(long mult, long add, long div, long rep, long modulus, std::string_view label) {
  return {BigInt(mult), BigInt(add), BigInt(div), ResidueClass(rep, modulus), label};
}

const std::vector<AffineStep>& table_for(MapId map) {
  static const std::vector<AffineStep> c3 = {
      make_step(1, 0, 2, 0, 2, "n/2"),
      make_step(3, 1, 1, 1, 2, "3n+1"),
  };
  static const std::vector<AffineStep> t3 = {
      make_step(1, 0, 2, 0, 2, "n/2"),
      make_step(3, 1, 2, 1, 2, "(3n+1)/2"),
  };
  static const std::vector<AffineStep> u3g = {
      make_step(3, 1, 4, 1, 8, "(3n+1)/4"),
      make_step(3, 1, 2, 3, 4, "(3n+1)/2"),
      make_step(3, 1, 8, 5, 8, "(3n+1)/8"),
  };
  static const std::vector<AffineStep> fu3 = {
      make_step(3, 1, 4, 1, 4, "(3n+1)/4"),
      make_step(3, 0, 2, 0, 2, "3n/2"),
      make_step(1, 1, 4, 3, 4, "(n+1)/4"),
  };
  static const std::vector<AffineStep> c5 = {
      make_step(1, 0, 2, 0, 2, "n/2"),
      make_step(5, 1, 1, 1, 2, "5n+1"),
  };
  static const std::vector<AffineStep> t5 = {
      make_step(1, 0, 2, 0, 2, "n/2"),
      make_step(5, 1, 2, 1, 2, "(5n+1)/2"),
  };
  static const std::vector<AffineStep> u5g = {
      make_step(5, 1, 4, 7, 8, "(5n+1)/4"),
      make_step(5, 1, 2, 1, 4, "(5n+1)/2"),
      make_step(5, 1, 16, 3, 32, "(5n+1)/16"),
      make_step(5, 1, 8, 11, 16, "(5n+1)/8"),
      make_step(5, 1, 32, 19, 32, "(5n+1)/32"),
  };
  static const std::vector<AffineStep> fu5 = {
      make_step(5, 0, 4, 0, 4, "5n/4"),
      make_step(5, -1, 2, 1, 2, "(5n-1)/2"),
      make_step(5, 6, 16, 2, 16, "(5n+6)/16"),
      make_step(5, 2, 8, 6, 8, "(5n+2)/8"),
      make_step(1, 6, 16, 10, 16, "(n+6)/16"),
  };
  static const std::vector<AffineStep> none;

  switch (map) {
    case MapId::C3: return c3;
    case MapId::T3: return t3;
    case MapId::U3Grouped: return u3g;
    case MapId::FrakU3: return fu3;
    case MapId::C5: return c5;
    case MapId::T5: return t5;
    case MapId::U5Grouped: return u5g;
    case MapId::FrakU5: return fu5;
    case MapId::U3Full:
    case MapId::U5Full: return none;
  }
  return none;
}

constexpr std::array<std::pair<MapId, std::string_view>, 10> kNames = {{
    {MapId::C3, "c3"},
    {MapId::T3, "t3"},
    {MapId::U3Full, "u3"},
    {MapId::U3Grouped, "u3g"},
    {MapId::FrakU3, "fraku3"},
    {MapId::C5, "c5"},
    {MapId::T5, "t5"},
    {MapId::U5Full, "u5"},
    {MapId::U5Grouped, "u5g"},
    {MapId::FrakU5, "fraku5"},
}};

}  // namespace

std::string_view map_name(MapId map) {
  for (const auto& [id, name] : kNames) {
    if (id == map) return name;
  }
  return "?";
}

std::optional<MapId> parse_map(std::string_view name) {
  for (const auto& [id, n] : kNames) {
    if (n == name) return id;
  }
  return std::nullopt;
}

Problem problem_of(MapId map) {
  switch (map) {
    case MapId::C3:
    case MapId::T3:
    case MapId::U3Full:
    case MapId::U3Grouped:
    case MapId::FrakU3: return Problem::ThreeX;
    default: return Problem::FiveX;
  }
}

unsigned long odd_multiplier(Problem problem) { return problem == Problem::ThreeX ? 3 : 5; }

MapId frak_map(Problem problem) {
  return problem == Problem::ThreeX ? MapId::FrakU3 : MapId::FrakU5;
}

MapId grouped_map(Problem problem) {
  return problem == Problem::ThreeX ? MapId::U3Grouped : MapId::U5Grouped;
}

bool is_frak(MapId map) { return map == MapId::FrakU3 || map == MapId::FrakU5; }

bool is_grouped(MapId map) { return map == MapId::U3Grouped || map == MapId::U5Grouped; }

bool odd_domain(MapId map) {
  return map == MapId::U3Full || map == MapId::U5Full || is_grouped(map);
}

std::span<const AffineStep> branches(MapId map) { return table_for(map); }

int terminal_branch(MapId frak) {
  if (frak == MapId::FrakU3) return 2;
  if (frak == MapId::FrakU5) return 4;
  throw std::invalid_argument("terminal_branch needs fraku3 or fraku5");
}

std::span<const int> middle_branches(MapId frak) {
  static constexpr std::array<int, 2> m3 = {0, 1};
  static constexpr std::array<int, 4> m5 = {0, 1, 2, 3};
  if (frak == MapId::FrakU3) return m3;
  if (frak == MapId::FrakU5) return m5;
  throw std::invalid_argument("middle_branches needs fraku3 or fraku5");
}

int ord2(const BigInt& n) {
  if (n == 0) throw std::domain_error("ord2 of zero");
  return static_cast<int>(mpz_scan1(n.get_mpz_t(), 0));
}

StepRecord step(MapId map, const BigInt& n) {
  if (odd_domain(map) && mpz_even_p(n.get_mpz_t())) {
    throw std::domain_error("domain is odd integers");
  }
  if (map == MapId::U3Full || map == MapId::U5Full) {
    const unsigned long p = map == MapId::U3Full ? 3 : 5;
    BigInt m = p * n + 1;
    const int e = ord2(m);
    BigInt out;
    mpz_fdiv_q_2exp(out.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return {n, e, out};
  }

  const auto& table = table_for(map);
  // Every guard modulus divides 32.
  const unsigned long r32 = mpz_fdiv_ui(n.get_mpz_t(), 32);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const AffineStep& s = table[i];
    const unsigned long m = s.guard.modulus().get_ui();
    if (r32 % m == s.guard.rep().get_ui()) {
      BigInt num = s.mult * n + s.add;
      BigInt out;
      mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), s.div.get_mpz_t());
      return {n, static_cast<int>(i), out};
    }
  }
  throw std::logic_error("branch guards do not cover input");
}

std::string_view status_name(StopStatus status) {
  switch (status) {
    case StopStatus::StepLimit: return "step-limit";
    case StopStatus::ValueBelow: return "value-below";
    case StopStatus::BranchFired: return "branch-fired";
    case StopStatus::CycleDetected: return "cycle";
    case StopStatus::BudgetExhausted: return "budget-exhausted";
    case StopStatus::LeftDomain: return "left-domain";
  }
  return "?";
}

Trajectory trajectory(MapId map, const BigInt& n, const StopRule& rule) {
  Trajectory t;
  std::map<BigInt, std::size_t> seen;  // value -> position in the visited order
  std::vector<BigInt> order;
  if (rule.kind == StopKind::CycleDetected) {
    seen.emplace(n, 0);
    order.push_back(n);
  }

  BigInt cur = n;
  for (std::size_t i = 0; i < rule.budget; ++i) {
    t.steps.push_back(step(map, cur));
    const StepRecord& rec = t.steps.back();
    cur = rec.output;
    switch (rule.kind) {
      case StopKind::MaxSteps: break;
      case StopKind::ValueBelow:
        if (cur < rule.threshold) {
          t.status = StopStatus::ValueBelow;
          return t;
        }
        break;
      case StopKind::BranchFired:
        if (rec.branch == rule.branch) {
          t.status = StopStatus::BranchFired;
          return t;
        }
        break;
      case StopKind::CycleDetected: {
        auto it = seen.find(cur);
        if (it != seen.end()) {
          t.status = StopStatus::CycleDetected;
          t.cycle.assign(order.begin() + static_cast<std::ptrdiff_t>(it->second), order.end());
          return t;
        }
        seen.emplace(cur, order.size());
        order.push_back(cur);
        break;
      }
    }
    // Grouped maps leave their odd domain at branch ends (e.g. 21 -> 8).
    if (odd_domain(map) && mpz_even_p(cur.get_mpz_t())) {
      t.status = StopStatus::LeftDomain;
      return t;
    }
  }
  t.status = rule.kind == StopKind::MaxSteps ? StopStatus::StepLimit : StopStatus::BudgetExhausted;
  return t;
}

BigInt correspond_u_from_fraku(const BigInt& n_new, Role role, Problem problem) {
  if (role == Role::Other) return 2 * n_new - 1;
  return problem == Problem::ThreeX ? BigInt(3 * n_new - 1) : BigInt(5 * n_new - 2);
}

Triplet frak_triplet(MapId frak, const BigInt& n) {
  const StepRecord r = step(frak, n);
  return {n, n, r.output, r.branch};
}

Triplet grouped_triplet(MapId grouped, const BigInt& n) {
  const StepRecord r = step(grouped, n);
  const unsigned long p = odd_multiplier(problem_of(grouped));
  return {n, BigInt((p * n + 1) / 2), r.output, r.branch};
}

Triplet to_grouped_triplet(Problem problem, const Triplet& frak) {
  const bool end = frak.branch == terminal_branch(frak_map(problem));
  const BigInt first = correspond_u_from_fraku(frak.first, Role::Other, problem);
  // Branch 1 (3n/2, (5n-1)/2) repeats its end as the intermediate; every
  // other branch takes the end-type image of the start.
  const BigInt intermediate =
      frak.branch == 1 ? correspond_u_from_fraku(frak.last, Role::Other, problem)
                       : correspond_u_from_fraku(frak.first, Role::EndOfBranch, problem);
  const BigInt last = correspond_u_from_fraku(frak.last, end ? Role::EndOfBranch : Role::Other, problem);
  return {first, intermediate, last, frak.branch};
}

}  // namespace collatz
