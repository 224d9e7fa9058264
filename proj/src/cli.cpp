#include "collatz_spectra/cli.hpp"

#include "collatz_spectra/decimal.hpp"
#include "collatz_spectra/families.hpp"
#include "collatz_spectra/parallel.hpp"
#include "collatz_spectra/stopping.hpp"
#include "collatz_spectra/table.hpp"
#include "collatz_spectra/trees.hpp"
#include "collatz_spectra/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace collatz::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string format = "csv";
  int precision = 7;
  bool exact = false;
  std::string out_file;
  std::size_t threads = default_threads();

  Format fmt() const {
    auto f = parse_format(format);
    if (!f) throw UsageError("unknown format '" + format + "'");
    return *f;
  }
  std::string num(const BigRat& v) const { return exact ? to_fraction(v) : to_decimal(v, precision); }
};

void add_output_options(CLI::App* sub, Output& o) {
  sub->add_option("--format", o.format, "csv, tsv, markdown or dot")->capture_default_str();
  sub->add_option("--precision", o.precision, "significant digits")->capture_default_str()->check(CLI::Range(1, 60));
  sub->add_flag("--exact", o.exact, "print rationals as num/den");
  sub->add_option("--out", o.out_file, "write to FILE instead of stdout");
  sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
}

MapId map_arg(const std::string& s) {
  auto m = parse_map(s);
  if (!m) throw UsageError("unknown map '" + s + "'");
  return *m;
}

std::pair<int, int> range_arg(const std::string& s, const char* what) {
  auto to_int = [&](const std::string& t) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (...) {
      used = 0;
    }
    if (used != t.size() || t.empty()) throw UsageError(std::string("bad ") + what + " '" + s + "'");
    return v;
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const int v = to_int(s);
    return {v, v};
  }
  const int a = to_int(s.substr(0, dots));
  const int b = to_int(s.substr(dots + 2));
  if (b < a) throw UsageError(std::string("empty ") + what + " range '" + s + "'");
  return {a, b};
}

std::string join_seq(const std::vector<BigInt>& v, const char* sep = "->") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += sep;
    s += v[i].get_str();
  }
  return s;
}

// --- families -------------------------------------------------------------

struct FamiliesArgs {
  std::string map;
  std::string lengths = "2..6";
  bool summary = false;
  bool pp = false;
};

int cmd_families(const FamiliesArgs& a, const Output& o, std::string& text) {
  const MapId map = map_arg(a.map);
  if (!is_frak(map) && !is_grouped(map)) throw UsageError("families needs fraku3, fraku5, u3g or u5g");
  const auto [lo, hi] = range_arg(a.lengths, "length");
  if (lo < 2) throw UsageError("lengths start at 2");
  Table t;

  if (a.pp) {
    t.header = {"L", "equations", "moduli", "counts", "density", "cumulative", "S_L"};
    for (const PpRow& r : pp_distribution_table(map, lo, hi)) {
      std::string mods, counts;
      for (const auto& g : r.groups) {
        mods += (mods.empty() ? "" : " ") + g.modulus.get_str();
        counts += (counts.empty() ? "" : " ") + g.count.get_str();
      }
      t.add({std::to_string(r.length), r.equations.get_str(), mods, counts, o.num(r.density), o.num(r.cumulative),
             o.num(r.s_l)});
    }
    text = t.render(o.fmt());
    return kOk;
  }

  if (hi > max_enumeration_length(map)) {
    throw UsageError("length " + std::to_string(hi) + " is beyond explicit enumeration (max " +
                     std::to_string(max_enumeration_length(map)) + "); use --pp or the density command");
  }

  if (a.summary) {
    t.header = {"L", "equations", "modulus", "count", "density", "D_L", "S_L"};
    for (int L = lo; L <= hi; ++L) {
      const FamilyTable ft = enumerate_families(map, L);
      for (const auto& g : ft.groups()) {
        t.add({std::to_string(L), std::to_string(ft.families.size()), g.modulus.get_str(), g.count.get_str(),
               o.num(BigRat(g.count, g.modulus)), o.num(distribution_DL(map, L)), o.num(cumulative_SL(map, L))});
      }
    }
    text = t.render(o.fmt());
    return kOk;
  }

  t.header = {"L", "word", "x_rep", "x_mod", "y_rep", "y_mod", "direction", "sequence", "D_L", "S_L", "pp_cumulative"};
  BigRat pp = 0;
  for (int L = 2; L <= hi; ++L) {
    const FamilyTable ft = enumerate_families(map, L);
    for (const auto& f : ft.families) {
      // U densities are relative to the odd integers.
      if (f.direction == Direction::PP) pp += BigRat(is_grouped(map) ? 2 : 1) / f.x_class.modulus();
    }
    if (L < lo) continue;
    pp.canonicalize();
    for (const auto& f : ft.families) {
      t.add({std::to_string(L), f.word.label(), f.x_class.rep().get_str(), f.x_class.modulus().get_str(),
             f.y_class.rep().get_str(), f.y_class.modulus().get_str(), direction_name(f.direction),
             join_seq(realize(f, f.x_class.rep())), o.num(distribution_DL(map, L)), o.num(cumulative_SL(map, L)),
             o.num(pp)});
    }
  }
  text = t.render(o.fmt());
  return kOk;
}

// --- density --------------------------------------------------------------

struct DensityArgs {
  std::string map;
  int lmax = 30;
  int levels = 1;
  std::vector<int> lmax_levels;
  std::uint64_t budget = DensityOptions{}.work_budget;
};

int cmd_density(const DensityArgs& a, const Output& o, std::string& text) {
  const MapId map = map_arg(a.map);
  if (!is_frak(map) && !is_grouped(map)) throw UsageError("density needs fraku3, fraku5, u3g or u5g");
  std::vector<int> lmaxes = a.lmax_levels;
  if (lmaxes.empty()) {
    if (a.lmax < 2 || a.levels < 1) throw UsageError("need --lmax >= 2 and --levels >= 1");
    lmaxes.assign(static_cast<std::size_t>(a.levels), a.lmax);
  }
  for (int lm : lmaxes) {
    if (lm < 2) throw UsageError("every lmax must be >= 2");
  }
  DensityOptions opt;
  opt.threads = o.threads;
  opt.work_budget = a.budget;
  const DensityReport rep = rising_fraction_levels(map, lmaxes, opt);

  Table t;
  t.header = {"level", "lmax", "f", "S_L", "partial"};
  for (std::size_t j = 0; j < rep.rising.size(); ++j) {
    t.add({std::to_string(j + 1), std::to_string(std::min(lmaxes[j], rep.lmax_achieved)), o.num(rep.rising[j]),
           o.num(rep.coverage), rep.partial ? "yes" : "no"});
  }
  text = t.render(o.fmt());
  return rep.partial ? kBudget : kOk;
}

// --- stopping -------------------------------------------------------------

struct StoppingArgs {
  std::string map = "t3";
  std::string k = "0..10";
  std::string flavor = "strict";
  unsigned long empirical = 0;
};

int cmd_stopping(const StoppingArgs& a, const Output& o, std::string& text) {
  const MapId map = map_arg(a.map);
  if (map != MapId::T3 && map != MapId::T5) throw UsageError("stopping needs t3 or t5");
  const auto flavor = parse_flavor(a.flavor);
  if (!flavor) throw UsageError("flavor must be strict or terras");
  const auto [lo, hi] = range_arg(a.k, "k");
  if (lo < 0) throw UsageError("k must be >= 0");
  const SurvivorTriangle tri = build_triangle(map, hi, *flavor);

  Table t;
  t.header = {"k", "F", "G"};
  if (a.empirical > 0) t.header.insert(t.header.end(), {"N", "empirical", "predicted", "exceptions"});
  for (int k = lo; k <= hi; ++k) {
    std::vector<std::string> row{std::to_string(k), o.num(distribution_F(tri, k)), o.num(distribution_G(map, k))};
    if (a.empirical > 0) {
      const EmpiricalF e = empirical_F(map, k, BigInt(a.empirical), *flavor, o.threads);
      row.insert(row.end(), {std::to_string(a.empirical), o.num(e.fraction()), o.num(e.predicted_fraction()),
                             e.exceptions.get_str()});
    }
    t.add(std::move(row));
  }
  text = t.render(o.fmt());
  return kOk;
}

// --- tree / chain ---------------------------------------------------------

struct TreeArgs {
  std::string map = "fraku3";
  std::size_t budget = 64;
};

int cmd_tree(const TreeArgs& a, const Output& o, std::string& text) {
  const MapId map = map_arg(a.map);
  if (!is_frak(map)) throw UsageError("tree needs fraku3 or fraku5");
  const BranchTree tree = build_tree(map, a.budget);
  if (o.format == "dot") {
    text = export_dot(tree);
    return kOk;
  }
  Table t;
  t.header = {"from", "to", "step", "terminal", "direction"};
  const auto table = branches(map);
  for (const auto& e : tree.edges) {
    t.add({e.from.get_str(), e.to.get_str(), std::string(table[static_cast<std::size_t>(e.branch)].label),
           e.terminal ? "yes" : "no", e.direction ? direction_name(*e.direction) : ""});
  }
  text = t.render(o.fmt());
  return kOk;
}

struct ChainArgs {
  std::string map = "fraku3";
  std::string start;
  int levels = 1;
  std::size_t budget = 1'000'000;
};

int cmd_chain(const ChainArgs& a, const Output& o, std::string& text) {
  const MapId map = map_arg(a.map);
  if (!is_frak(map)) throw UsageError("chain needs fraku3 or fraku5");
  BigInt start;
  if (start.set_str(a.start, 10) != 0) throw UsageError("bad start '" + a.start + "'");
  if (a.levels < 1) throw UsageError("levels must be >= 1");
  const Chain c = chain_from(map, start, a.levels, a.budget);

  Table t;
  t.header = {"level", "start", "end", "L", "complete", "against_start", "against_level", "sequence"};
  for (std::size_t j = 0; j < c.levels.size(); ++j) {
    const ChainLevel& lv = c.levels[j];
    t.add({std::to_string(j + 1), lv.branch.start.get_str(), lv.branch.end.get_str(),
           std::to_string(lv.branch.length()), lv.branch.complete ? "yes" : "no", direction_name(lv.against_origin),
           direction_name(lv.against_level), join_seq(lv.branch.values())});
  }
  text = t.render(o.fmt());
  return c.budget_exhausted ? kBudget : kOk;
}

// --- slices / audit -------------------------------------------------------

struct SlicesArgs {
  std::string map = "fraku3";
  int levels = 3;
  unsigned long until = 10000;
  int lmax = 30;
  std::size_t budget = 100'000;
};

int cmd_slices(const SlicesArgs& a, const Output& o, std::string& text) {
  const MapId map = map_arg(a.map);
  if (a.levels < 1 || a.until < 1) throw UsageError("need --levels >= 1 and --until >= 1");
  SliceOptions opt;
  opt.step_budget = a.budget;
  opt.threads = o.threads;
  opt.analytic_lmax = a.lmax;
  const auto reports = slice_fractions(map, a.levels, BigInt(a.until), opt);

  Table t;
  t.header = {"level", "N", "count", "total", "fraction", "analytic", "unresolved"};
  bool unresolved = false;
  for (const auto& r : reports) {
    t.add({std::to_string(r.level), r.n_max.get_str(), r.count.get_str(), r.total.get_str(), o.num(r.fraction()),
           r.analytic ? o.num(*r.analytic) : "", r.unresolved.get_str()});
  }
  // n = 1 cycles at every level for the all-integer slices; only budget
  // exhaustion past that is reported as a partial result.
  for (const auto& r : reports) unresolved = unresolved || r.unresolved > 1;
  text = t.render(o.fmt());
  return unresolved ? kBudget : kOk;
}

struct AuditArgs {
  std::string map = "fraku3";
  unsigned long bound = 0;
  int length = 0;
  std::size_t samples = 5;
};

int cmd_audit(const AuditArgs& a, const Output& o, std::string& text) {
  const MapId map = map_arg(a.map);
  if (!is_frak(map) && !is_grouped(map)) throw UsageError("audit needs fraku3, fraku5, u3g or u5g");
  if (a.bound == 0 && a.length == 0) throw UsageError("audit needs --bound and/or --length");
  Table t;
  t.header = {"audit", "checked", "violations", "witness"};
  bool ok = true;
  auto emit = [&](const std::string& name, const AuditReport& r) {
    ok = ok && r.ok();
    t.add({name, std::to_string(r.checked), std::to_string(r.violations), r.witnesses.empty() ? "" : r.witnesses[0]});
  };
  if (a.bound > 0) emit("bijection", audit_bijection(problem_of(map), BigInt(a.bound)));
  if (a.length > 0) emit("families", audit_family_vs_simulation(map, a.length, a.samples));
  text = t.render(o.fmt());
  return ok ? kOk : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact residue-class spectra of the 3x+1 and 5x+1 maps", "collatz-spectra"};
  app.require_subcommand(1);
  Output o;

  FamiliesArgs fa;
  auto* fam = app.add_subcommand("families", "sequence families by length");
  fam->add_option("--map", fa.map)->required();
  fam->add_option("--L,--length", fa.lengths, "length or range a..b")->capture_default_str();
  fam->add_flag("--summary", fa.summary, "counts per modulus with D_L and S_L");
  fam->add_flag("--pp", fa.pp, "rising (x < y) families per length, from the exact DP");
  add_output_options(fam, o);

  DensityArgs da;
  auto* den = app.add_subcommand("density", "rising fraction over chained levels");
  den->add_option("--map", da.map)->required();
  den->add_option("--lmax", da.lmax)->capture_default_str();
  den->add_option("--levels", da.levels)->capture_default_str();
  den->add_option("--lmax-levels", da.lmax_levels, "one lmax per level, e.g. 50,30")->delimiter(',');
  den->add_option("--budget", da.budget, "work budget (state updates)")->capture_default_str();
  add_output_options(den, o);

  StoppingArgs sa;
  auto* stp = app.add_subcommand("stopping", "distribution F(k) of stopping times");
  stp->add_option("--map", sa.map)->capture_default_str();
  stp->add_option("--k", sa.k, "k or range a..b")->capture_default_str();
  stp->add_option("--flavor", sa.flavor, "strict or terras")->capture_default_str();
  stp->add_option("--empirical", sa.empirical, "also count n <= N by direct iteration");
  add_output_options(stp, o);

  TreeArgs ta;
  auto* tre = app.add_subcommand("tree", "preimage tree rooted at 1");
  tre->add_option("--map", ta.map)->capture_default_str();
  tre->add_option("--budget", ta.budget, "node budget")->capture_default_str();
  add_output_options(tre, o);

  ChainArgs ca;
  auto* chn = app.add_subcommand("chain", "consecutive branches from a start");
  chn->add_option("--map", ca.map)->capture_default_str();
  chn->add_option("--start", ca.start)->required();
  chn->add_option("--levels", ca.levels)->capture_default_str();
  chn->add_option("--budget", ca.budget, "step budget per branch")->capture_default_str();
  add_output_options(chn, o);

  SlicesArgs la;
  auto* slc = app.add_subcommand("slices", "measured rising fractions over 1..N");
  slc->add_option("--map", la.map)->capture_default_str();
  slc->add_option("--levels", la.levels)->capture_default_str();
  slc->add_option("--until", la.until)->capture_default_str();
  slc->add_option("--lmax", la.lmax, "lmax of the analytic column (0: none)")->capture_default_str();
  slc->add_option("--budget", la.budget, "step budget per branch")->capture_default_str();
  add_output_options(slc, o);

  AuditArgs aa;
  auto* aud = app.add_subcommand("audit", "consistency audits");
  aud->add_option("--map", aa.map)->capture_default_str();
  aud->add_option("--bound", aa.bound, "bijection audit over 1..bound");
  aud->add_option("--length", aa.length, "family audit for this length");
  aud->add_option("--samples", aa.samples)->capture_default_str();
  add_output_options(aud, o);

  bool tree_format_given = false;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    tree_format_given = tre->count("--format") > 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::string text;
  int code = kOk;
  try {
    if (*fam) code = cmd_families(fa, o, text);
    if (*den) code = cmd_density(da, o, text);
    if (*stp) code = cmd_stopping(sa, o, text);
    if (*tre) {
      if (!tree_format_given) o.format = "dot";
      code = cmd_tree(ta, o, text);
    }
    if (*chn) code = cmd_chain(ca, o, text);
    if (*slc) code = cmd_slices(la, o, text);
    if (*aud) code = cmd_audit(aa, o, text);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }

  if (o.out_file.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out_file, std::ios::binary);
    if (!f) {
      err << "error: cannot write " << o.out_file << "\n";
      return kFailure;
    }
    f << text;
  }
  if (code == kBudget) err << "warning: budget exhausted, output is partial\n";
  return code;
}

}  // namespace collatz::cli
