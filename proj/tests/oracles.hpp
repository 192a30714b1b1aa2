#pragma once
// Test-side oracles. Nothing here calls the library code it is used to
// check: the pocrim enumerator works from raw tables, the soundness check
// quantifies over elements directly.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lukprover/algebra.hpp"
#include "lukprover/eq.hpp"
#include "lukprover/formula.hpp"
#include "lukprover/hilbert.hpp"
#include "lukprover/sequent.hpp"
#include "lukprover/theory.hpp"

namespace luk {
// readable gtest messages
inline void PrintTo(const Formula& f, std::ostream* os) { *os << print(f); }
}  // namespace luk

namespace oracle {

using luk::Formula;

// ---------------------------------------------------------------------------
// Random formulas

struct FormulaGen {
  std::mt19937 rng;
  std::vector<std::string> vars{"A", "B", "C"};
  bool derived = true;  // also produce /\, \/, =>, !!, ^, 0
  bool constants = true;

  explicit FormulaGen(unsigned seed) : rng(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  Formula leaf() {
    if (constants && pick(6) == 0) return pick(2) || !derived ? Formula::one() : Formula::zero();
    return Formula::var(vars[static_cast<std::size_t>(pick(static_cast<int>(vars.size())))]);
  }

  Formula operator()(int depth) {
    if (depth == 0 || pick(4) == 0) return leaf();
    int k = derived ? pick(7) : pick(2);
    Formula a = (*this)(depth - 1);
    if (k == 6) return Formula::neg(a);
    Formula b = (*this)(depth - 1);
    switch (k) {
      case 0: return Formula::imp(a, b);
      case 1: return Formula::tensor(a, b);
      case 2: return Formula::wconj(a, b);
      case 3: return Formula::sdisj(a, b);
      case 4: return Formula::simp(a, b);
      default: return Formula::nor(a, b);
    }
  }
};

// ---------------------------------------------------------------------------
// Brute-force pocrims. Element 0 is the identity and the least element;
// x -o y is the least z with z + x >= y.

struct RawAlgebra {
  int n = 0;
  std::vector<std::vector<bool>> ge;  // ge[a][b]: a >= b
  std::vector<std::vector<int>> add, res;
};

inline bool raw_flags_hoop(const RawAlgebra& m) {
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < m.n; ++b)
      if (m.add[a][m.res[a][b]] != m.add[b][m.res[b][a]]) return false;
  return true;
}

inline std::optional<int> raw_top(const RawAlgebra& m) {
  for (int t = 0; t < m.n; ++t) {
    bool all = true;
    for (int a = 0; a < m.n; ++a) all = all && m.ge[t][a];
    if (all) return t;
  }
  return std::nullopt;
}

inline bool raw_involutive(const RawAlgebra& m) {
  auto top = raw_top(m);
  if (!top) return false;
  for (int a = 0; a < m.n; ++a)
    if (m.res[m.res[a][*top]][*top] != a) return false;
  return true;
}

inline bool raw_idempotent(const RawAlgebra& m) {
  for (int a = 0; a < m.n; ++a)
    if (m.add[a][a] != a) return false;
  return true;
}

// Relabelling-invariant key: least (order, add) table over permutations
// fixing 0.
inline std::vector<int> raw_key(const RawAlgebra& m) {
  std::vector<int> perm(static_cast<std::size_t>(m.n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  do {
    std::vector<int> inv(perm.size());
    for (int i = 0; i < m.n; ++i) inv[static_cast<std::size_t>(perm[i])] = i;
    std::vector<int> key;
    for (int a = 0; a < m.n; ++a)
      for (int b = 0; b < m.n; ++b) {
        key.push_back(m.ge[perm[a]][perm[b]] ? 1 : 0);
        key.push_back(inv[static_cast<std::size_t>(m.add[perm[a]][perm[b]])]);
      }
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

/// All pocrims of size n up to isomorphism.
inline std::vector<RawAlgebra> raw_pocrims(int n) {
  std::vector<RawAlgebra> out;
  std::set<std::vector<int>> seen;
  // Partial orders with 0 least.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::vector<std::vector<bool>>> orders;
  std::vector<int> rel(pairs.size(), 0);  // 0 incomparable, 1 i<j, 2 j<i
  while (true) {
    std::vector<std::vector<bool>> ge(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int a = 0; a < n; ++a) ge[a][a] = true, ge[a][0] = true;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [i, j] = pairs[k];
      if (rel[k] == 1) ge[j][i] = true;
      if (rel[k] == 2) ge[i][j] = true;
    }
    bool trans = true;
    for (int a = 0; a < n && trans; ++a)
      for (int b = 0; b < n && trans; ++b)
        for (int c = 0; c < n && trans; ++c)
          if (ge[a][b] && ge[b][c] && !ge[a][c]) trans = false;
    if (trans) orders.push_back(ge);
    std::size_t k = 0;
    while (k < rel.size() && ++rel[k] == 3) rel[k++] = 0;
    if (k == rel.size()) break;
  }
  // Commutative tables with identity 0.
  std::vector<std::pair<int, int>> cells;
  for (int a = 1; a < n; ++a)
    for (int b = a; b < n; ++b) cells.emplace_back(a, b);
  for (const auto& ge : orders) {
    std::vector<int> val(cells.size(), 0);
    while (true) {
      RawAlgebra m;
      m.n = n;
      m.ge = ge;
      m.add.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
      for (int a = 0; a < n; ++a) m.add[0][a] = m.add[a][0] = a;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        auto [a, b] = cells[k];
        m.add[a][b] = m.add[b][a] = val[k];
      }
      bool ok = true;
      for (int a = 0; a < n && ok; ++a)
        for (int b = 0; b < n && ok; ++b)
          for (int c = 0; c < n && ok; ++c) {
            if (m.add[m.add[a][b]][c] != m.add[a][m.add[b][c]]) ok = false;
            if (ge[a][b] && !ge[m.add[a][c]][m.add[b][c]]) ok = false;
          }
      if (ok) {
        m.res.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
        for (int x = 0; x < n && ok; ++x)
          for (int y = 0; y < n && ok; ++y) {
            std::vector<int> s;
            for (int z = 0; z < n; ++z)
              if (ge[m.add[z][x]][y]) s.push_back(z);
            auto least = std::find_if(s.begin(), s.end(), [&](int z) {
              return std::all_of(s.begin(), s.end(), [&](int w) { return ge[w][z]; });
            });
            if (least == s.end()) ok = false;
            else m.res[x][y] = *least;
          }
      }
      if (ok && seen.insert(raw_key(m)).second) out.push_back(m);
      std::size_t k = 0;
      while (k < val.size() && ++val[k] == n) val[k++] = 0;
      if (k == val.size()) break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Semantic soundness of the calculus: every axiom of t is valid and every
// rule preserves validity, quantifying over elements (context values
// included). Returns the violations found.

inline std::vector<std::string> soundness_violations(const luk::FiniteAlgebra& m, luk::TheoryId t) {
  std::vector<std::string> out;
  const int n = m.n;
  auto ge = [&](int a, int b) { return m.geq(a, b); };
  auto note = [&](const std::string& what) {
    if (out.size() < 5) out.push_back(t.name() + " size " + std::to_string(n) + ": " + what);
  };
  for (int g = 0; g < n; ++g)
    for (int a = 0; a < n; ++a) {
      if (!ge(m.add(g, a), a)) note("ASM");
      if (t.has_con() && !ge(m.add(g, a), m.add(a, a))) note("CON");
      if (t.has_efq() && (!m.top || !ge(m.add(g, *m.top), a))) note("EFQ");
      if (t.has_dne() && (!m.top || !ge(m.add(g, m.res(m.res(a, *m.top), *m.top)), a))) note("DNE");
      for (int b = 0; b < n; ++b) {
        if (t.has_cwc() && !ge(m.add(g, m.add(a, m.res(a, b))), m.add(b, m.res(b, a)))) note("CWC");
        // ImpI: g + a >= b  =>  g >= a -o b
        if (ge(m.add(g, a), b) && !ge(g, m.res(a, b))) note("ImpI");
        for (int d = 0; d < n; ++d) {
          // ImpE: g >= a, d >= a -o b  =>  g + d >= b
          if (ge(g, a) && ge(d, m.res(a, b)) && !ge(m.add(g, d), b)) note("ImpE");
          // TensorI: g >= a, d >= b  =>  g + d >= a + b
          if (ge(g, a) && ge(d, b) && !ge(m.add(g, d), m.add(a, b))) note("TensorI");
          for (int c = 0; c < n; ++c)
            // TensorE: g >= a + b, d + a + b >= c  =>  g + d >= c
            if (ge(g, m.add(a, b)) && ge(m.add(d, m.add(a, b)), c) && !ge(m.add(g, d), c)) note("TensorE");
        }
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Mutations of chain scripts. For every rewrite step by a >= lemma:
//   flip      the lemma is applied in the other direction at the same place
//   polarity  the rewrite is moved to a position of the opposite polarity
//             where the lemma also matches
// The mutated step's result is recomputed so that only the mutation itself
// can be at fault.

struct Mutant {
  std::string script;
  std::string kind;  // "flip" or "polarity"
  std::size_t chain = 0, step = 0;
  luk::EqScript mutated;
};

inline std::optional<luk::LemmaEntry> lemma_of(const luk::EqScript& s, const luk::Registry& reg, const std::string& id) {
  for (const auto& h : s.hypotheses)
    if (h.id == id) return h;
  return reg.find(id);
}

inline std::vector<Mutant> mutants(const std::vector<luk::EqScript>& scripts, const luk::Registry& reg) {
  using K = luk::Justification::Kind;
  std::vector<Mutant> out;
  for (const auto& s : scripts) {
    for (std::size_t ci = 0; ci < s.chains.size(); ++ci) {
      Formula cur = s.chains[ci].start;
      for (std::size_t k = 0; k < s.chains[ci].steps.size(); ++k) {
        const luk::EqStep& st = s.chains[ci].steps[k];
        const Formula before = cur;
        cur = st.result;
        if (st.just.kind != K::Rewrite) continue;
        auto e = lemma_of(s, reg, st.just.lemma);
        if (!e || e->relation != luk::Relation::Geq) continue;
        auto here = luk::occurrence_polarity(before, st.just.position);

        Mutant flip{s.id, "flip", ci, k, s};
        luk::EqStep& fs = flip.mutated.chains[ci].steps[k];
        fs.just.reversed = !fs.just.reversed;
        try {
          fs.result = luk::apply_rewrite(before, *e, fs.just.reversed, fs.just.position, fs.just.with).formula;
        } catch (const std::invalid_argument&) {
        }
        out.push_back(std::move(flip));

        if (!here) continue;
        for (const auto& p : luk::positions(before)) {
          auto pol = luk::occurrence_polarity(before, p);
          if (!pol || *pol == *here) continue;
          luk::RewriteResult r;
          try {
            r = luk::apply_rewrite(before, *e, st.just.reversed, p, st.just.with);
          } catch (const std::invalid_argument&) {
            continue;
          }
          Mutant mv{s.id, "polarity", ci, k, s};
          luk::EqStep& ms = mv.mutated.chains[ci].steps[k];
          ms.just.position = p;
          ms.just.locate = false;
          ms.result = r.formula;
          out.push_back(std::move(mv));
        }
      }
    }
  }
  return out;
}

struct MutationTally {
  std::size_t total = 0, killed = 0;
  std::vector<std::string> survivors;
};

/// A mutant is killed when check_script rejects it at the mutated step.
inline MutationTally run_mutants(const std::vector<Mutant>& ms, const luk::Registry& reg) {
  MutationTally t;
  for (const auto& m : ms) {
    ++t.total;
    luk::ScriptResult r = luk::check_script(m.mutated, reg);
    // messages read "lemma <id>: step <k>[ of the converse chain] (...): ..."
    std::string where = "lemma " + m.mutated.id + ": step " + std::to_string(m.step + 1) +
                        (m.chain ? " of the converse chain" : "");
    const std::string& msg = r.verdict.message;
    bool at_step = msg.rfind(where, 0) == 0 && msg.size() > where.size() &&
                   (msg[where.size()] == ' ' || msg[where.size()] == ':');
    if (!r.verdict.ok && at_step) {
      ++t.killed;
    } else if (t.survivors.size() < 10) {
      t.survivors.push_back(m.script + " " + m.kind + " " + where + " " +
                            (r.verdict.ok ? std::string("accepted") : r.verdict.message));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Sequent -> Hilbert -> sequent, with every stage rechecked.

inline std::string roundtrip_error(const luk::ProofTree& p, luk::TheoryId t) {
  if (auto v = luk::check_proof(p, t); !v) return "input proof rejected: " + v.message;
  luk::HilbertDerivation d = luk::sequent_to_hilbert(p);
  if (auto v = luk::check_derivation(d, luk::HilbertSystemId::of(t)); !v) return "derivation rejected: " + v.message;
  const Formula want = luk::expand_derived(luk::curry_sequent(p.conclusion));
  if (d.lines.empty() || !(luk::expand_derived(d.lines.back().formula) == want)) return "derivation ends elsewhere";
  luk::ProofTree back = luk::hilbert_to_sequent(d, t);
  if (auto v = luk::check_proof(back, t); !v) return "replayed proof rejected: " + v.message;
  if (!back.conclusion.context.empty() || !(luk::expand_derived(back.conclusion.goal) == want))
    return "replayed proof concludes " + back.conclusion.str();
  return {};
}

}  // namespace oracle
