#include "collatz_spectra/affine.hpp"

#include <stdexcept>

namespace collatz {

std::vector<int> OperationWord::steps() const {
  std::vector<int> out = middle;
  out.push_back(terminal_branch(map));
  return out;
}

std::string OperationWord::label() const {
  const auto table = branches(map);
  std::string s;
  for (int id : steps()) {
    if (!s.empty()) s += '.';
    s += table[static_cast<std::size_t>(id)].div.get_str();
  }
  return s;
}

BigInt AffineMap::apply(const BigInt& x) const {
  BigInt num = A * x + C;
  BigInt out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), B.get_mpz_t());
  return out;
}

BigRat AffineMap::apply_rational(const BigInt& x) const {
  BigRat r(BigInt(A * x + C), B);
  r.canonicalize();
  return r;
}

const char* direction_name(Direction d) { return d == Direction::PP ? "PP" : "PG"; }

AffineMap compose(const OperationWord& word) {
  const auto table = branches(word.map);
  AffineMap m;
  for (int id : word.steps()) {
    const AffineStep& s = table[static_cast<std::size_t>(id)];
    // (s.mult * (A x + C)/B + s.add) / s.div
    m.C = s.mult * m.C + s.add * m.B;
    m.A *= s.mult;
    m.B *= s.div;
  }
  return m;
}

Direction asymptotic_direction(const AffineMap& rel) {
  if (rel.A == rel.B) throw std::logic_error("A == B cannot occur for coprime prime powers");
  return rel.B > rel.A ? Direction::PG : Direction::PP;
}

Direction compare_endpoints(const AffineMap& rel) {
  if (rel.C <= 0) throw std::domain_error("comparator precondition violated");
  return asymptotic_direction(rel);
}

namespace {

Direction family_direction(const AffineMap& rel) {
  return rel.C > 0 ? compare_endpoints(rel) : asymptotic_direction(rel);
}

BigInt inverse_mod(const BigInt& a, const BigInt& m) {
  if (m == 1) return 0;
  BigInt inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::logic_error("step multiplier not invertible");
  }
  return inv;
}

}  // namespace

SequenceFamily solve_word(const OperationWord& word) {
  const auto table = branches(word.map);
  const std::vector<int> ids = word.steps();

  // Constraint on the value after the current step: rep (mod modulus).
  BigInt rep = 0;
  BigInt modulus = 1;
  for (auto it = ids.rbegin(); it != ids.rend(); ++it) {
    const AffineStep& s = table[static_cast<std::size_t>(*it)];
    // mult*v + add = div*w with w = rep (mod modulus)
    //   => v = mult^-1 (div*rep - add) (mod div*modulus)
    const BigInt next_mod = s.div * modulus;
    rep = mod_floor(BigInt(inverse_mod(s.mult, next_mod) * (s.div * rep - s.add)), next_mod);
    modulus = next_mod;
    if (!s.guard.contains(rep)) throw std::logic_error("infeasible word");
  }

  SequenceFamily fam;
  fam.map = word.map;
  fam.word = word;
  fam.x_class = ResidueClass(rep, modulus);
  fam.relation = compose(word);
  fam.y_class = ResidueClass(fam.relation.apply(rep), fam.relation.A);
  fam.direction = family_direction(fam.relation);
  return fam;
}

SequenceFamily transform_family_to_U(const SequenceFamily& fam) {
  if (!is_frak(fam.map)) throw std::invalid_argument("transform_family_to_U needs a Frak family");
  const Problem problem = problem_of(fam.map);
  const unsigned long p = odd_multiplier(problem);
  const unsigned long shift = (p - 1) / 2;  // 3y-1, 5y-2

  SequenceFamily out;
  out.map = grouped_map(problem);
  out.word = fam.word;
  const AffineMap& r = fam.relation;
  out.relation.A = p * r.A;
  out.relation.B = 2 * r.B;
  out.relation.C = p * r.A + 2 * p * r.C - 2 * shift * r.B;
  out.x_class = ResidueClass(correspond_u_from_fraku(fam.x_class.rep(), Role::Other, problem),
                             out.relation.B);
  out.y_class = ResidueClass(correspond_u_from_fraku(fam.y_class.rep(), Role::EndOfBranch, problem),
                             out.relation.A);

  if (out.relation.C > 0) {
    out.direction = compare_endpoints(out.relation);
  } else {
    // Decide on an explicit member beyond the crossover point |C'|.
    out.direction = asymptotic_direction(out.relation);
    const BigInt q = abs(out.relation.C) / out.x_class.modulus() + 1;
    const BigInt x = out.x_class.member(q);
    const BigInt y = out.relation.apply(x);
    const Direction seen = x < y ? Direction::PP : Direction::PG;
    if (seen != out.direction) throw std::logic_error("transformed family direction mismatch");
  }
  return out;
}

std::vector<BigInt> realize(const SequenceFamily& fam, const BigInt& x) {
  if (!fam.x_class.contains(x)) throw std::invalid_argument("start is not in the family's x-class");
  const Problem problem = problem_of(fam.map);
  const MapId frak = frak_map(problem);

  BigInt cur = x;
  if (!is_frak(fam.map)) {
    BigInt twice = x + 1;
    mpz_divexact_ui(cur.get_mpz_t(), twice.get_mpz_t(), 2);
  }
  std::vector<BigInt> seq{cur};
  for (int id : fam.word.steps()) {
    const StepRecord r = step(frak, cur);
    if (r.branch != id) throw std::logic_error("member does not follow the family's word");
    cur = r.output;
    seq.push_back(cur);
  }
  if (!is_frak(fam.map)) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const Role role = i + 1 == seq.size() ? Role::EndOfBranch : Role::Other;
      seq[i] = correspond_u_from_fraku(seq[i], role, problem);
    }
  }
  return seq;
}

std::vector<OperationWord> all_words(MapId frak, int length) {
  if (length < 2) throw std::invalid_argument("word length must be >= 2");
  const auto alphabet = middle_branches(frak);
  const auto middle_len = static_cast<std::size_t>(length - 2);

  std::vector<OperationWord> out;
  std::vector<std::size_t> digits(middle_len, 0);
  while (true) {
    OperationWord w{frak, {}};
    w.middle.reserve(middle_len);
    for (std::size_t d : digits) w.middle.push_back(alphabet[d]);
    out.push_back(std::move(w));
    // odometer increment, last position fastest
    std::size_t pos = middle_len;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < alphabet.size()) break;
      digits[pos] = 0;
      if (pos == 0) return out;
    }
    if (middle_len == 0) return out;
  }
}

}  // namespace collatz
