#include "collatz_spectra/families.hpp"

#include "collatz_spectra/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace collatz {

namespace {

MapId frak_of(MapId map) {
  if (is_frak(map)) return map;
  if (is_grouped(map)) return frak_map(problem_of(map));
  throw std::invalid_argument("families are defined for fraku3, fraku5, u3g and u5g");
}

int log2_exact(const BigInt& d) { return static_cast<int>(mpz_scan1(d.get_mpz_t(), 0)); }

// weights[s] = number of middle steps dividing by 2^s
std::vector<BigInt> middle_weights(MapId frak) {
  const auto table = branches(frak);
  std::vector<BigInt> w;
  for (int id : middle_branches(frak)) {
    const auto s = static_cast<std::size_t>(log2_exact(table[static_cast<std::size_t>(id)].div));
    if (w.size() <= s) w.resize(s + 1, 0);
    w[s] += 1;
  }
  return w;
}

int terminal_log2(MapId frak) {
  return log2_exact(branches(frak)[static_cast<std::size_t>(terminal_branch(frak))].div);
}

std::vector<BigInt> poly_mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
  std::vector<BigInt> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Spectra for lengths 2..lmax, spectra[L] indexed by e2.
std::vector<std::vector<BigInt>> spectra_up_to(MapId frak, int lmax) {
  const std::vector<BigInt> w = middle_weights(frak);
  const auto t = static_cast<std::size_t>(terminal_log2(frak));
  std::vector<std::vector<BigInt>> out(static_cast<std::size_t>(std::max(lmax, 2)) + 1);
  std::vector<BigInt> power{1};
  for (int L = 2; L <= lmax; ++L) {
    std::vector<BigInt> spec(t, 0);
    spec.insert(spec.end(), power.begin(), power.end());
    out[static_cast<std::size_t>(L)] = std::move(spec);
    power = poly_mul(power, w);
  }
  return out;
}

struct Scale {
  unsigned long p;
  unsigned long sa;  // start side: sb * 2^e2 < sa * p^eo means rising
  unsigned long sb;
};

Scale scale_of(MapId map) {
  const unsigned long p = odd_multiplier(problem_of(map));
  if (is_grouped(map)) return {p, p, 2};
  return {p, 1, 1};
}

// Largest e2 with sb * 2^e2 < sa * p^eo, or -1.
int keep_limit(const Scale& s, int eo) {
  const BigInt v = BigInt(s.sa) * ipow(s.p, static_cast<unsigned long>(eo));
  BigInt vm = v - 1;
  if (vm <= 0) return -1;
  const int bits = static_cast<int>(mpz_sizeinbase(vm.get_mpz_t(), 2));
  return bits - 1 - (s.sb == 2 ? 1 : 0);
}

struct Transition {
  int deo;
  int de2;
  BigInt count;
};

std::vector<Transition> transitions_for(const std::vector<std::vector<BigInt>>& spectra, int lmax) {
  std::vector<Transition> out;
  for (int L = 2; L <= lmax; ++L) {
    const auto& spec = spectra[static_cast<std::size_t>(L)];
    for (std::size_t e2 = 0; e2 < spec.size(); ++e2) {
      if (spec[e2] != 0) out.push_back({L - 2, static_cast<int>(e2), spec[e2]});
    }
  }
  return out;
}

// Cheap upper bound on the update count: every surviving cell of the
// previous level times every transition.
double estimate_work(const Scale& s, std::span<const int> lmaxes) {
  const double slope = std::log2(static_cast<double>(s.p));
  double work = 0;
  int eo_max = 0;
  double cells = 1;
  for (int lm : lmaxes) {
    const double words = static_cast<double>(lm - 1);
    const double trans = words * (words * (s.p == 3 ? 1.0 : 3.0) + 1);
    work += cells * trans;
    eo_max += lm - 2;
    cells = 0;
    for (int eo = 0; eo <= eo_max; ++eo) cells += std::max(0.0, eo * slope + 2);
  }
  return work;
}

struct Grid {
  int eo_max = 0;
  int e2_max = 0;
  std::vector<BigInt> cells;

  Grid(int eo, int e2)
      : eo_max(eo), e2_max(e2), cells(static_cast<std::size_t>(eo + 1) * static_cast<std::size_t>(e2 + 1), 0) {}
  BigInt& at(int eo, int e2) {
    return cells[static_cast<std::size_t>(eo) * static_cast<std::size_t>(e2_max + 1) + static_cast<std::size_t>(e2)];
  }
};

std::vector<LevelState> run_levels(MapId map, std::span<const int> lmaxes, std::size_t threads,
                                   std::vector<BigRat>* per_level) {
  const MapId frak = frak_of(map);
  const Scale sc = scale_of(map);
  const int lmax_all = *std::max_element(lmaxes.begin(), lmaxes.end());
  const auto spectra = spectra_up_to(frak, lmax_all);

  std::vector<LevelState> states{{0, 0, BigInt(1)}};
  int eo_cap = 0;
  for (int lm : lmaxes) {
    const std::vector<Transition> trans = transitions_for(spectra, lm);
    eo_cap += lm - 2;
    std::vector<int> limit(static_cast<std::size_t>(eo_cap) + 1);
    for (int eo = 0; eo <= eo_cap; ++eo) limit[static_cast<std::size_t>(eo)] = keep_limit(sc, eo);
    const int e2_cap = std::max(0, limit.back());

    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, states.size()));
    std::vector<Grid> grids(workers, Grid(eo_cap, e2_cap));
    parallel_chunks(states.size(), workers, [&](std::size_t b, std::size_t e, std::size_t w) {
      Grid& g = grids[w];
      for (std::size_t i = b; i < e; ++i) {
        const LevelState& st = states[i];
        for (const Transition& t : trans) {
          const int eo = st.eo + t.deo;
          const int e2 = st.e2 + t.de2;
          if (e2 > limit[static_cast<std::size_t>(eo)]) continue;  // descended: pruned
          mpz_addmul(g.at(eo, e2).get_mpz_t(), st.count.get_mpz_t(), t.count.get_mpz_t());
        }
      }
    });
    for (std::size_t w = 1; w < grids.size(); ++w) {
      for (std::size_t c = 0; c < grids[0].cells.size(); ++c) grids[0].cells[c] += grids[w].cells[c];
    }

    states.clear();
    Grid& g = grids[0];
    for (int eo = 0; eo <= eo_cap; ++eo) {
      for (int e2 = 0; e2 <= e2_cap; ++e2) {
        BigInt& c = g.at(eo, e2);
        if (c != 0) states.push_back({e2, eo, std::move(c)});
      }
    }

    if (per_level != nullptr) {
      int emax = 0;
      for (const auto& s : states) emax = std::max(emax, s.e2);
      BigInt num = 0;
      for (const auto& s : states) num += s.count << static_cast<mp_bitcnt_t>(emax - s.e2);
      BigRat f(num, BigInt(1) << static_cast<mp_bitcnt_t>(emax));
      f.canonicalize();
      per_level->push_back(f);
    }
  }
  return states;
}

}  // namespace

std::vector<IncrementGroup> FamilyTable::groups() const {
  std::map<BigInt, BigInt> m;
  for (const auto& f : families) m[f.x_class.modulus()] += 1;
  std::vector<IncrementGroup> out;
  for (auto& [mod, n] : m) out.push_back({mod, n});
  return out;
}

int max_enumeration_length(MapId map) {
  return problem_of(frak_of(map)) == Problem::ThreeX ? 22 : 12;
}

FamilyTable enumerate_families(MapId map, int length) {
  const MapId frak = frak_of(map);
  if (length < 2) throw std::invalid_argument("word length must be >= 2");
  if (length > max_enumeration_length(map)) {
    throw std::length_error("length " + std::to_string(length) +
                            " is too large for explicit enumeration; use the density DP "
                            "(rising_fraction / pp_distribution_table)");
  }
  FamilyTable table;
  table.map = map;
  table.length = length;
  for (const OperationWord& w : all_words(frak, length)) {
    SequenceFamily f = solve_word(w);
    table.families.push_back(is_grouped(map) ? transform_family_to_U(f) : std::move(f));
  }
  std::sort(table.families.begin(), table.families.end(), [](const auto& a, const auto& b) {
    if (a.x_class.modulus() != b.x_class.modulus()) return a.x_class.modulus() < b.x_class.modulus();
    return a.x_class.rep() < b.x_class.rep();
  });
  return table;
}

BigRat distribution_DL(MapId map, int length) {
  if (length < 2) throw std::invalid_argument("word length must be >= 2");
  const bool three = problem_of(frak_of(map)) == Problem::ThreeX;
  const BigRat first = three ? BigRat(1, 4) : BigRat(1, 16);
  const BigRat ratio = three ? BigRat(3, 4) : BigRat(15, 16);
  return first * rat_pow(ratio, static_cast<unsigned long>(length - 2));
}

BigRat cumulative_SL(MapId map, int length) {
  if (length < 2) throw std::invalid_argument("word length must be >= 2");
  const bool three = problem_of(frak_of(map)) == Problem::ThreeX;
  const BigRat first = three ? BigRat(1, 4) : BigRat(1, 16);
  const BigRat ratio = three ? BigRat(3, 4) : BigRat(15, 16);
  return geometric_sum(first, ratio, length - 1);
}

std::vector<BigInt> word_spectrum(MapId map, int length) {
  if (length < 2) throw std::invalid_argument("word length must be >= 2");
  return spectra_up_to(frak_of(map), length)[static_cast<std::size_t>(length)];
}

bool descends(MapId map, int e2, int eo) { return e2 > keep_limit(scale_of(map), eo); }

DensityReport rising_fraction(MapId map, int lmax, int levels, const DensityOptions& options) {
  if (levels < 1) throw std::invalid_argument("levels must be >= 1");
  const std::vector<int> lmaxes(static_cast<std::size_t>(levels), lmax);
  return rising_fraction_levels(map, lmaxes, options);
}

DensityReport rising_fraction_levels(MapId map, std::span<const int> lmax_per_level,
                                     const DensityOptions& options) {
  if (lmax_per_level.empty()) throw std::invalid_argument("levels must be >= 1");
  for (int lm : lmax_per_level) {
    if (lm < 2) throw std::invalid_argument("lmax must be >= 2");
  }
  frak_of(map);
  const Scale sc = scale_of(map);

  DensityReport rep;
  rep.map = map;
  rep.lmax_requested = lmax_per_level.front();

  // Lower every level's bound together until the work estimate fits.
  std::vector<int> use(lmax_per_level.begin(), lmax_per_level.end());
  int cap = *std::max_element(use.begin(), use.end());
  auto capped = [&](int c) {
    std::vector<int> v;
    for (int lm : lmax_per_level) v.push_back(std::min(lm, c));
    return v;
  };
  while (cap > 2 && estimate_work(sc, capped(cap)) > static_cast<double>(options.work_budget)) --cap;
  use = capped(cap);
  rep.partial = use != std::vector<int>(lmax_per_level.begin(), lmax_per_level.end());
  rep.lmax_achieved = use.front();

  run_levels(map, use, std::max<std::size_t>(1, options.threads), &rep.rising);
  rep.coverage = cumulative_SL(map, rep.lmax_achieved);
  for (int L = 2; L <= rep.lmax_achieved; ++L) {
    rep.terms.push_back({L, distribution_DL(map, L), cumulative_SL(map, L)});
  }
  return rep;
}

std::vector<LevelState> survivor_states(MapId map, int lmax, int levels, const DensityOptions& options) {
  if (levels < 1 || lmax < 2) throw std::invalid_argument("need lmax >= 2 and levels >= 1");
  const std::vector<int> lmaxes(static_cast<std::size_t>(levels), lmax);
  return run_levels(map, lmaxes, std::max<std::size_t>(1, options.threads), nullptr);
}

std::vector<PpRow> pp_distribution_table(MapId map, int lmin, int lmax) {
  if (lmin < 2 || lmax < lmin) throw std::invalid_argument("need 2 <= lmin <= lmax");
  const MapId frak = frak_of(map);
  const Scale sc = scale_of(map);
  const auto spectra = spectra_up_to(frak, lmax);
  const auto alphabet = static_cast<unsigned long>(middle_branches(frak).size());

  std::vector<PpRow> rows;
  BigRat cumulative = 0;
  for (int L = 2; L <= lmax; ++L) {
    PpRow row;
    row.length = L;
    row.equations = ipow(alphabet, static_cast<unsigned long>(L - 2));
    const int limit = keep_limit(sc, L - 2);
    const auto& spec = spectra[static_cast<std::size_t>(L)];
    for (int e2 = 0; e2 < static_cast<int>(spec.size()) && e2 <= limit; ++e2) {
      const BigInt& c = spec[static_cast<std::size_t>(e2)];
      if (c == 0) continue;
      const int mod_exp = e2 + (is_grouped(map) ? 1 : 0);
      row.groups.push_back({BigInt(1) << static_cast<mp_bitcnt_t>(mod_exp), c});
      row.density += BigRat(c, BigInt(1) << static_cast<mp_bitcnt_t>(e2));
    }
    row.density.canonicalize();
    cumulative += row.density;
    row.cumulative = cumulative;
    row.s_l = cumulative_SL(map, L);
    if (L >= lmin) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace collatz
