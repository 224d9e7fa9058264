#pragma once

// Slow, independent reference computations used only by the tests. None of
// these call into the library.

#include <gmpxx.h>

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Int = long;  // gmpxx mixes with long, not long long

// Pascal's triangle by additions only.
inline std::vector<std::vector<mpz_class>> pascal(int rows) {
  std::vector<std::vector<mpz_class>> t(static_cast<std::size_t>(rows) + 1);
  for (int n = 0; n <= rows; ++n) {
    auto& r = t[static_cast<std::size_t>(n)];
    r.assign(static_cast<std::size_t>(n) + 1, 1);
    for (int k = 1; k < n; ++k) {
      r[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)] +
                                       t[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
    }
  }
  return t;
}

// Number of ways to write `total` as an ordered sum of `parts` values taken
// from `alphabet` (coefficient of t^total in (sum t^a)^parts), by recursion.
inline mpz_class compositions(const std::vector<int>& alphabet, int parts, int total) {
  std::map<int, mpz_class> cur{{0, 1}};
  for (int i = 0; i < parts; ++i) {
    std::map<int, mpz_class> next;
    for (const auto& [s, c] : cur)
      for (int a : alphabet) next[s + a] += c;
    cur.swap(next);
  }
  auto it = cur.find(total);
  return it == cur.end() ? mpz_class(0) : it->second;
}

inline Int gcd_brute(Int a, Int b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  if (a == 0) return b;
  if (b == 0) return a;
  for (Int d = a < b ? a : b; d > 1; --d) {
    if (a % d == 0 && b % d == 0) return d;
  }
  return 1;
}

inline mpq_class geometric_terms(const mpq_class& a, const mpq_class& r, int n) {
  mpq_class sum = 0, term = a;
  for (int i = 0; i < n; ++i) {
    sum += term;
    term *= r;
  }
  return sum;
}

inline Int mod(Int n, Int m) {
  Int r = n % m;
  return r < 0 ? r + m : r;
}

// FrakU3 written out case by case. Returns {branch, image}.
inline std::pair<int, Int> frak3(Int n) {
  if (mod(n, 2) == 0) return {1, 3 * n / 2};
  if (mod(n, 4) == 1) return {0, (3 * n + 1) / 4};
  return {2, (n + 1) / 4};
}

inline std::pair<int, Int> frak5(Int n) {
  if (mod(n, 2) == 1) return {1, (5 * n - 1) / 2};
  if (mod(n, 4) == 0) return {0, 5 * n / 4};
  if (mod(n, 16) == 2) return {2, (5 * n + 6) / 16};
  if (mod(n, 8) == 6) return {3, (5 * n + 2) / 8};
  return {4, (n + 6) / 16};
}

inline std::pair<int, Int> frak(int p, Int n) { return p == 3 ? frak3(n) : frak5(n); }
inline int frak_terminal(int p) { return p == 3 ? 2 : 4; }

// Word (branch ids incl. the terminal one) and end of the branch from n.
struct Walk {
  std::vector<int> word;
  Int end = 0;
};

inline Walk walk(int p, Int n, std::size_t max_len) {
  Walk w;
  Int cur = n;
  while (w.word.size() < max_len) {
    auto [b, next] = frak(p, cur);
    w.word.push_back(b);
    cur = next;
    if (b == frak_terminal(p)) {
      w.end = cur;
      return w;
    }
  }
  w.word.clear();
  return w;
}

// Families of length L found by scanning starts 1..limit: word -> the two
// smallest starts realizing it (second is -1 if only one was seen).
struct Found {
  Int first = -1;
  Int second = -1;
  Int first_end = 0;
};

inline std::map<std::vector<int>, Found> scan_families(int p, int L, Int limit) {
  std::map<std::vector<int>, Found> out;
  for (Int x = 1; x <= limit; ++x) {
    // L integers, L - 1 steps
    Walk w = walk(p, x, static_cast<std::size_t>(L - 1));
    if (static_cast<int>(w.word.size()) != L - 1) continue;
    Found& f = out[w.word];
    if (f.first < 0) {
      f.first = x;
      f.first_end = w.end;
    } else if (f.second < 0) {
      f.second = x;
    }
  }
  return out;
}

// T3/T5 by cases.
inline mpz_class t_step(int p, const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return n / 2;
  return (p * n + 1) / 2;
}

inline long stopping_time(int p, const mpz_class& n, long budget) {
  mpz_class cur = n;
  for (long k = 1; k <= budget; ++k) {
    cur = t_step(p, cur);
    if (cur < n) return k;
  }
  return -1;
}

// For each residue r mod 2^k, iterate a huge member r + 2^k * 2^(3k+20):
// additive constants are negligible there, so chi > k exactly when the class
// coefficient stays above the power of two. Counted by the number of odd steps.
inline std::vector<mpz_class> survivors_by_odd_steps(int p, int k) {
  std::vector<mpz_class> counts(static_cast<std::size_t>(k) + 1, 0);
  const mpz_class big = mpz_class(1) << static_cast<unsigned>(4 * k + 20);
  const long period = 1L << k;
  for (long r = 0; r < period; ++r) {
    const mpz_class n = mpz_class(r) + big;
    mpz_class cur = n;
    int odd = 0;
    bool alive = true;
    for (int j = 0; j < k; ++j) {
      if (mpz_odd_p(cur.get_mpz_t())) ++odd;
      cur = t_step(p, cur);
      if (cur < n) {
        alive = false;
        break;
      }
    }
    if (alive) counts[static_cast<std::size_t>(odd)] += 1;
  }
  return counts;
}

inline std::string parity_word(int p, mpz_class n, int k) {
  std::string s;
  for (int j = 0; j < k; ++j) {
    s += mpz_odd_p(n.get_mpz_t()) ? '1' : '0';
    n = t_step(p, n);
  }
  return s;
}

// Tab-separated golden file: header row plus data rows.
struct Tsv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw std::runtime_error("no column " + name);
  }
};

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline Tsv read_tsv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  Tsv t;
  std::string line;
  bool first = true;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    if (first) {
      t.header = split(line, '\t');
      first = false;
    } else {
      t.rows.push_back(split(line, '\t'));
    }
  }
  return t;
}

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace oracle
