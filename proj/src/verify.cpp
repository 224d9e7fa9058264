#include "collatz_spectra/verify.hpp"

#include "collatz_spectra/parallel.hpp"

#include <set>
#include <stdexcept>

namespace collatz {

namespace {

// End of the branch from n, or nothing when the budget runs out or the
// iteration cycles (1 -> 1 under FrakU3) without reaching a branch end.
std::optional<BigInt> branch_end(MapId frak, const BigInt& n, int term, std::size_t budget) {
  BigInt cur = n;
  std::set<BigInt> seen;
  for (std::size_t i = 0; i < budget; ++i) {
    const StepRecord r = step(frak, cur);
    if (r.branch == term) return r.output;
    cur = r.output;
    if (i >= 64) {
      if (!seen.insert(cur).second) return std::nullopt;
    }
  }
  return std::nullopt;
}

struct SliceTally {
  std::vector<BigInt> count;
  std::vector<BigInt> unresolved;
  explicit SliceTally(int levels)
      : count(static_cast<std::size_t>(levels) + 1, 0), unresolved(static_cast<std::size_t>(levels) + 1, 0) {}
};

}  // namespace

std::vector<SliceReport> slice_fractions(MapId map, int max_level, const BigInt& n_max,
                                         const SliceOptions& options) {
  if (max_level < 1) throw std::invalid_argument("level must be >= 1");
  if (n_max < 1) throw std::invalid_argument("N must be >= 1");
  if (!n_max.fits_ulong_p()) throw std::invalid_argument("N too large for direct iteration");
  if (!is_frak(map) && !is_grouped(map)) {
    throw std::invalid_argument("slices are defined for fraku3, fraku5, u3g and u5g");
  }
  const Problem problem = problem_of(map);
  const MapId frak = frak_map(problem);
  const int term = terminal_branch(frak);
  const bool odd = is_grouped(map);
  const unsigned long N = n_max.get_ui();
  const unsigned long starts = odd ? (N + 1) / 2 : N;

  const std::size_t workers = std::max<std::size_t>(1, options.threads);
  std::vector<SliceTally> tallies(workers, SliceTally(max_level));
  parallel_chunks(starts, workers, [&](std::size_t b, std::size_t e, std::size_t w) {
    SliceTally& t = tallies[w];
    for (std::size_t idx = b; idx < e; ++idx) {
      // Frak start n; the grouped start is x = 2n - 1.
      const BigInt n = static_cast<unsigned long>(idx + 1);
      const BigInt x = odd ? correspond_u_from_fraku(n, Role::Other, problem) : n;
      BigInt cur = n;
      for (int level = 1; level <= max_level; ++level) {
        const auto end = branch_end(frak, cur, term, options.step_budget);
        if (!end) {
          for (int j = level; j <= max_level; ++j) t.unresolved[static_cast<std::size_t>(j)] += 1;
          break;
        }
        const BigInt y = odd ? correspond_u_from_fraku(*end, Role::EndOfBranch, problem) : *end;
        if (!(x < y)) break;
        t.count[static_cast<std::size_t>(level)] += 1;
        cur = *end;
      }
    }
  });

  std::vector<SliceReport> out;
  for (int level = 1; level <= max_level; ++level) {
    SliceReport r;
    r.map = map;
    r.level = level;
    r.n_max = n_max;
    r.domain = odd ? SliceDomain::Odd : SliceDomain::All;
    r.total = starts;
    for (const auto& t : tallies) {
      r.count += t.count[static_cast<std::size_t>(level)];
      r.unresolved += t.unresolved[static_cast<std::size_t>(level)];
    }
    if (options.analytic_lmax >= 2) {
      DensityOptions d;
      d.threads = workers;
      r.analytic = rising_fraction(map, options.analytic_lmax, level, d).rising.back();
    }
    out.push_back(std::move(r));
  }
  return out;
}

SliceReport slice_fraction(MapId map, int level, const BigInt& n_max, const SliceOptions& options) {
  return slice_fractions(map, level, n_max, options).back();
}

AuditReport audit_bijection(Problem problem, const BigInt& bound) {
  if (!bound.fits_ulong_p()) throw std::invalid_argument("bound too large");
  const MapId frak = frak_map(problem);
  const MapId grouped = grouped_map(problem);
  const unsigned long p = odd_multiplier(problem);
  const unsigned long B = bound.get_ui();

  AuditReport rep;
  auto violation = [&rep](const std::string& what) {
    ++rep.violations;
    if (rep.witnesses.size() < 5) rep.witnesses.push_back(what);
  };

  std::set<std::tuple<BigInt, BigInt, BigInt>> images;
  std::set<BigInt> odd_hit;
  for (unsigned long i = 1; i <= B; ++i) {
    const BigInt n = i;
    ++rep.checked;
    const Triplet f = frak_triplet(frak, n);
    const Triplet u = to_grouped_triplet(problem, f);
    const std::string tag = "n=" + n.get_str();

    if (mpz_even_p(u.first.get_mpz_t())) {
      violation(tag + ": image start " + u.first.get_str() + " is even");
      continue;
    }
    const Triplet g = grouped_triplet(grouped, u.first);
    if (u.intermediate != BigInt((p * u.first + 1) / 2)) {
      violation(tag + ": intermediate " + u.intermediate.get_str() + " differs from (p*x+1)/2");
    }
    if (u.last != g.last) {
      violation(tag + ": image end " + u.last.get_str() + " differs from the grouped step " + g.last.get_str());
    }
    if (u.branch != g.branch) violation(tag + ": branch ids differ");
    if (!images.emplace(u.first, u.intermediate, u.last).second) {
      violation(tag + ": image triplet repeats");
    }
    odd_hit.insert(u.first);
  }
  for (unsigned long u = 1; u + 1 <= 2 * B; u += 2) {
    if (odd_hit.count(BigInt(u)) == 0) violation("odd " + std::to_string(u) + " has no preimage triplet");
  }
  return rep;
}

AuditReport audit_family_vs_simulation(MapId map, int length, std::size_t samples) {
  const FamilyTable table = enumerate_families(map, length);
  AuditReport rep;
  auto violation = [&rep](const std::string& what) {
    ++rep.violations;
    if (rep.witnesses.size() < 5) rep.witnesses.push_back(what);
  };

  for (const SequenceFamily& fam : table.families) {
    for (std::size_t q = 0; q < samples; ++q) {
      ++rep.checked;
      const BigInt x = fam.x_class.member(static_cast<unsigned long>(q));
      const std::string tag = fam.word.label() + " x=" + x.get_str();
      std::vector<BigInt> seq;
      try {
        seq = realize(fam, x);
      } catch (const std::exception& e) {
        violation(tag + ": " + e.what());
        continue;
      }
      const BigInt& y = seq.back();
      if (!fam.y_class.contains(y)) violation(tag + ": end " + y.get_str() + " outside " + fam.y_class.to_string());
      if (fam.relation.apply(x) != y) violation(tag + ": relation gives a different end");
      const Direction seen = x < y ? Direction::PP : Direction::PG;
      if (seen != fam.direction) violation(tag + ": direction " + direction_name(seen) + " observed");
    }
  }
  return rep;
}

}  // namespace collatz
