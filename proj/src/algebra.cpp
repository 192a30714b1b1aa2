#include "lukprover/algebra.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <sstream>

namespace luk {

namespace {

std::string triple(int a, int b, int c) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

std::string pair(int a, int b) { return "(" + std::to_string(a) + ", " + std::to_string(b) + ")"; }

}  // namespace

std::string ClassFlags::str() const {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ' ';
    out += name;
  };
  add(pocrim, "pocrim");
  add(hoop, "hoop");
  add(bounded, "bounded");
  add(involutive, "involutive");
  add(idempotent, "idempotent");
  return out.empty() ? "none" : out;
}

ClassFlags check_class(const FiniteAlgebra& m) {
  ClassFlags f;
  const int n = m.n;
  auto fail = [&](std::string why) {
    f.violation = std::move(why);
    return f;
  };
  if (n < 1) return fail("empty carrier");
  auto nn = static_cast<std::size_t>(n * n);
  if (m.add_table.size() != nn || m.res_table.size() != nn) return fail("table size is not n*n");
  for (std::size_t i = 0; i < nn; ++i)
    if (m.add_table[i] < 0 || m.add_table[i] >= n || m.res_table[i] < 0 || m.res_table[i] >= n)
      return fail("table entry out of range");
  if (m.top && (*m.top < 0 || *m.top >= n)) return fail("top out of range");

  for (int a = 0; a < n; ++a) {
    if (m.add(0, a) != a || m.add(a, 0) != a) return fail("0 is not the identity at " + std::to_string(a));
    for (int b = 0; b < n; ++b)
      if (m.add(a, b) != m.add(b, a)) return fail("add not commutative at " + pair(a, b));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (m.add(m.add(a, b), c) != m.add(a, m.add(b, c)))
          return fail("add not associative at " + triple(a, b, c));
  for (int a = 0; a < n; ++a) {
    if (!m.geq(a, a)) return fail("order not reflexive at " + std::to_string(a));
    if (!m.geq(a, 0)) return fail("0 is not least: " + std::to_string(a));
    for (int b = 0; b < n; ++b) {
      if (a != b && m.geq(a, b) && m.geq(b, a)) return fail("order not antisymmetric at " + pair(a, b));
      for (int c = 0; c < n; ++c)
        if (m.geq(a, b) && m.geq(b, c) && !m.geq(a, c)) return fail("order not transitive at " + triple(a, b, c));
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (m.geq(m.add(a, b), c) != m.geq(a, m.res(b, c))) return fail("residuation fails at " + triple(a, b, c));
        if (m.geq(a, b) && !m.geq(m.add(a, c), m.add(b, c))) return fail("add not monotone at " + triple(a, b, c));
      }
  f.pocrim = true;

  f.hoop = true;
  for (int a = 0; a < n && f.hoop; ++a)
    for (int b = 0; b < n; ++b)
      if (m.add(a, m.res(a, b)) != m.add(b, m.res(b, a))) {
        f.hoop = false;
        break;
      }
  if (m.top) {
    f.bounded = true;
    for (int a = 0; a < n; ++a)
      if (!m.geq(*m.top, a)) f.bounded = false;
  }
  if (f.bounded) {
    f.involutive = true;
    int t = *m.top;
    for (int a = 0; a < n; ++a)
      if (m.res(m.res(a, t), t) != a) f.involutive = false;
  }
  f.idempotent = true;
  for (int a = 0; a < n; ++a)
    if (m.add(a, a) != a) f.idempotent = false;
  return f;
}

bool FlagFilter::admits(const ClassFlags& f) const {
  if (!f.pocrim) return false;
  auto ok = [](const std::optional<bool>& want, bool have) { return !want || *want == have; };
  return ok(hoop, f.hoop) && ok(bounded, f.bounded) && ok(involutive, f.involutive) &&
         ok(idempotent, f.idempotent);
}

FlagFilter class_of(TheoryId t) {
  FlagFilter f;
  if (t.base == Base::Lukasiewicz) f.hoop = true;
  if (t.base == Base::Full) f.idempotent = true;
  if (t.level != Level::Minimal) f.bounded = true;
  if (t.level == Level::Classical) f.involutive = true;
  return f;
}

FiniteAlgebra lukasiewicz_chain(int k) {
  if (k < 2) throw std::invalid_argument("lukasiewicz_chain needs k >= 2");
  FiniteAlgebra m;
  m.n = k;
  m.add_table.resize(static_cast<std::size_t>(k * k));
  m.res_table.resize(static_cast<std::size_t>(k * k));
  // Element i stands for the rational i/(k-1); sums and differences of
  // numerators are exact.
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      m.add_table[static_cast<std::size_t>(a * k + b)] = std::min(k - 1, a + b);
      m.res_table[static_cast<std::size_t>(a * k + b)] = std::max(0, b - a);
    }
  m.top = k - 1;
  return m;
}

// ---------------------------------------------------------------------------
// Evaluation. Formulas are compiled to a postfix program over variable slots
// so that validity checks do not touch maps in the inner loop.

namespace {

struct Op {
  Kind kind;
  int slot;  // variable slot for Var
};

struct Program {
  std::vector<Op> ops;
};

void compile_into(const Formula& f, const std::map<std::string, int>& slots, Program& p) {
  for (const auto& c : f.children()) compile_into(c, slots, p);
  int slot = -1;
  if (f.is(Kind::Var)) {
    auto it = slots.find(f.name());
    if (it == slots.end()) throw EvalError("unassigned variable " + f.name());
    slot = it->second;
  }
  p.ops.push_back({f.kind(), slot});
}

int run(const Program& p, const FiniteAlgebra& m, const std::vector<int>& vals, std::vector<int>& stack) {
  stack.clear();
  for (const Op& op : p.ops) {
    int b, a;
    switch (op.kind) {
      case Kind::Var: stack.push_back(vals[static_cast<std::size_t>(op.slot)]); break;
      case Kind::One:
        if (!m.top) throw EvalError("the constant 1 needs a bounded algebra");
        stack.push_back(*m.top);
        break;
      case Kind::Zero: stack.push_back(0); break;
      case Kind::Neg:
        if (!m.top) throw EvalError("negation needs a bounded algebra");
        stack.back() = m.res(stack.back(), *m.top);
        break;
      default:
        b = stack.back();
        stack.pop_back();
        a = stack.back();
        switch (op.kind) {
          case Kind::Imp: stack.back() = m.res(a, b); break;
          case Kind::Tensor: stack.back() = m.add(a, b); break;
          case Kind::WConj: stack.back() = m.add(a, m.res(a, b)); break;
          case Kind::SDisj: stack.back() = m.res(m.res(b, a), a); break;
          case Kind::SImp: stack.back() = m.res(a, m.add(a, b)); break;
          case Kind::Nor:
            if (!m.top) throw EvalError("NOR needs a bounded algebra");
            stack.back() = m.add(m.res(a, *m.top), m.res(b, a));
            break;
          default: break;
        }
    }
  }
  return stack.back();
}

const char* kFreeOne = "1'";  // not producible by the parser

}  // namespace

int eval(const Formula& f, const FiniteAlgebra& m, const Assignment& v) {
  std::map<std::string, int> slots;
  std::vector<int> vals;
  for (const auto& name : variables(f)) {
    auto it = v.find(name);
    if (it == v.end()) throw EvalError("unassigned variable " + name);
    if (it->second < 0 || it->second >= m.n) throw EvalError("assignment out of range for " + name);
    slots[name] = static_cast<int>(vals.size());
    vals.push_back(it->second);
  }
  Program p;
  compile_into(f, slots, p);
  std::vector<int> stack;
  return run(p, m, vals, stack);
}

Formula free_falsum(const Formula& f) {
  if (f.is(Kind::One)) return Formula::var(kFreeOne);
  if (f.is(Kind::Neg)) return Formula::imp(free_falsum(f.left()), Formula::var(kFreeOne));
  if (f.is(Kind::Nor))
    return Formula::tensor(Formula::imp(free_falsum(f.left()), Formula::var(kFreeOne)),
                           Formula::imp(free_falsum(f.right()), free_falsum(f.left())));
  if (f.arity() == 0) return f;
  std::vector<Formula> kids;
  for (const auto& c : f.children()) kids.push_back(free_falsum(c));
  return Formula::make(f.kind(), std::move(kids));
}

Sequent free_falsum(const Sequent& s) {
  Sequent out{{}, free_falsum(s.goal)};
  for (const auto& c : s.context) out.context.push_back(free_falsum(c));
  return out;
}

bool valid(const Sequent& s, const FiniteAlgebra& m, Assignment* witness) {
  std::set<std::string> names = variables(s.goal);
  for (const auto& c : s.context) names.merge(variables(c));
  std::map<std::string, int> slots;
  for (const auto& name : names) slots.emplace(name, static_cast<int>(slots.size()));
  std::vector<Program> ctx(s.context.size());
  for (std::size_t i = 0; i < s.context.size(); ++i) compile_into(s.context[i], slots, ctx[i]);
  Program goal;
  compile_into(s.goal, slots, goal);

  std::vector<int> vals(names.size(), 0);
  std::vector<int> stack;
  while (true) {
    int lhs = 0;
    for (const auto& p : ctx) lhs = m.add(lhs, run(p, m, vals, stack));
    if (!m.geq(lhs, run(goal, m, vals, stack))) {
      if (witness) {
        witness->clear();
        for (const auto& [name, slot] : slots) (*witness)[name] = vals[static_cast<std::size_t>(slot)];
      }
      return false;
    }
    std::size_t i = vals.size();
    while (i > 0) {
      --i;
      if (++vals[i] < m.n) break;
      vals[i] = 0;
      if (i == 0) return true;
    }
    if (vals.empty()) return true;
  }
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

using Mask = unsigned;
using Clock = std::chrono::steady_clock;

struct Enumerator {
  int n;
  const FlagFilter& filter;
  const std::function<bool(const FiniteAlgebra&)>& visit;
  std::set<std::vector<int>>& seen;

  std::vector<Mask> below;  // strictly-below sets; natural labelling
  std::vector<int> add;     // -1 = unassigned
  std::vector<std::pair<int, int>> cells;
  std::optional<Clock::time_point> deadline;
  bool stop = false;
  bool timed_out = false;
  unsigned tick = 0;

  bool out_of_time() {
    if (deadline && (++tick & 0x3ffu) == 0 && Clock::now() > *deadline) timed_out = stop = true;
    return stop;
  }

  bool le(int a, int b) const { return a == b || (below[static_cast<std::size_t>(b)] >> a & 1u); }
  int& at(int a, int b) { return add[static_cast<std::size_t>(a * n + b)]; }
  int get(int a, int b) const { return add[static_cast<std::size_t>(a * n + b)]; }

  void posets(int k) {
    if (stop) return;
    if (k == n) {
      fill_tables();
      return;
    }
    // Candidate down-sets of {0..k-1} containing 0, largest first so the
    // chain comes out first.
    std::vector<Mask> cands;
    Mask full = (k >= 32) ? ~0u : ((1u << k) - 1u);
    for (Mask s = full;; --s) {
      if (s & 1u) {
        bool closed = true;
        for (int j = 0; j < k && closed; ++j)
          if ((s >> j & 1u) && (below[static_cast<std::size_t>(j)] & ~s)) closed = false;
        if (closed) cands.push_back(s);
      }
      if (s == 0) break;
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](Mask a, Mask b) { return __builtin_popcount(a) > __builtin_popcount(b); });
    bool need_top = filter.bounded.value_or(false) && k == n - 1;
    for (Mask s : cands) {
      if (need_top && s != full) continue;
      below[static_cast<std::size_t>(k)] = s;
      posets(k + 1);
      if (stop) return;
    }
  }

  bool consistent(int a, int b, int v) {
    // integral: v >= a and v >= b
    if (!le(a, v) || !le(b, v)) return false;
    if (filter.idempotent.value_or(false) && a == b && v != a) return false;
    // monotonicity against assigned cells (including row 0)
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        int w = get(x, y);
        if (w < 0) continue;
        if (le(x, a) && le(y, b) && !le(w, v)) return false;
        if (le(a, x) && le(b, y) && !le(v, w)) return false;
      }
    return true;
  }

  bool associative_so_far() const {
    for (int x = 1; x < n; ++x)
      for (int y = 1; y < n; ++y) {
        int xy = get(x, y);
        if (xy < 0) continue;
        for (int z = 1; z < n; ++z) {
          int yz = get(y, z);
          if (yz < 0) continue;
          int l = get(xy, z), r = get(x, yz);
          if (l >= 0 && r >= 0 && l != r) return false;
        }
      }
    return true;
  }

  void fill_tables() {
    add.assign(static_cast<std::size_t>(n * n), -1);
    for (int x = 0; x < n; ++x) at(0, x) = at(x, 0) = x;
    cells.clear();
    for (int a = 1; a < n; ++a)
      for (int b = a; b < n; ++b) cells.emplace_back(a, b);
    assign(0);
  }

  void assign(std::size_t i) {
    if (stop || out_of_time()) return;
    if (i == cells.size()) {
      finish();
      return;
    }
    auto [a, b] = cells[i];
    for (int v = 0; v < n; ++v) {
      if (!consistent(a, b, v)) continue;
      at(a, b) = at(b, a) = v;
      if (associative_so_far()) assign(i + 1);
      at(a, b) = at(b, a) = -1;
      if (stop) return;
    }
  }

  void finish() {
    FiniteAlgebra m;
    m.n = n;
    m.add_table = add;
    m.res_table.assign(static_cast<std::size_t>(n * n), 0);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int least = -1;
        for (int a = 0; a < n; ++a) {
          if (!le(c, get(a, b))) continue;
          if (least < 0 || le(a, least)) least = a;
        }
        if (least < 0) return;
        for (int a = 0; a < n; ++a)
          if (le(c, get(a, b)) && !le(least, a)) return;  // no minimum
        m.res_table[static_cast<std::size_t>(b * n + c)] = least;
      }
    for (int t = 0; t < n; ++t) {
      bool greatest = true;
      for (int a = 0; a < n; ++a)
        if (!le(a, t)) greatest = false;
      if (greatest) m.top = t;
    }
    ClassFlags f = check_class(m);
    if (!filter.admits(f)) return;
    FiniteAlgebra c = canonical_form(m);
    std::vector<int> key = c.add_table;
    key.insert(key.end(), c.res_table.begin(), c.res_table.end());
    key.push_back(c.top.value_or(-1));
    if (!seen.insert(std::move(key)).second) return;
    if (!visit(m)) stop = true;
  }
};

// Iso-invariant signature used to restrict the permutations tried when
// computing canonical forms.
std::vector<std::vector<int>> signatures(const FiniteAlgebra& m) {
  std::vector<std::vector<int>> sig(static_cast<std::size_t>(m.n));
  for (int a = 0; a < m.n; ++a) {
    int down = 0, up = 0, fixed = 0;
    for (int b = 0; b < m.n; ++b) {
      if (m.geq(a, b)) ++down;
      if (m.geq(b, a)) ++up;
      if (m.add(a, b) == a) ++fixed;
    }
    sig[static_cast<std::size_t>(a)] = {a == 0 ? 0 : 1, down, up, fixed, m.add(a, a) == a ? 0 : 1,
                                        m.top && *m.top == a ? 1 : 0};
  }
  return sig;
}

}  // namespace

FiniteAlgebra canonical_form(const FiniteAlgebra& m) {
  const int n = m.n;
  auto sig = signatures(m);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sig[static_cast<std::size_t>(a)] < sig[static_cast<std::size_t>(b)]; });
  // Permute only within blocks of equal signature.
  std::vector<std::pair<int, int>> blocks;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && sig[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] == sig[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  std::optional<FiniteAlgebra> best;
  std::vector<int> key_best;
  auto consider = [&]() {
    // order[new] = old
    std::vector<int> inv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    FiniteAlgebra c;
    c.n = n;
    c.add_table.resize(static_cast<std::size_t>(n * n));
    c.res_table.resize(static_cast<std::size_t>(n * n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int oa = order[static_cast<std::size_t>(a)], ob = order[static_cast<std::size_t>(b)];
        c.add_table[static_cast<std::size_t>(a * n + b)] = inv[static_cast<std::size_t>(m.add(oa, ob))];
        c.res_table[static_cast<std::size_t>(a * n + b)] = inv[static_cast<std::size_t>(m.res(oa, ob))];
      }
    if (m.top) c.top = inv[static_cast<std::size_t>(*m.top)];
    std::vector<int> key = c.add_table;
    key.insert(key.end(), c.res_table.begin(), c.res_table.end());
    key.push_back(c.top.value_or(-1));
    if (!best || key < key_best) {
      best = std::move(c);
      key_best = std::move(key);
    }
  };
  std::function<void(std::size_t)> rec = [&](std::size_t bi) {
    if (bi == blocks.size()) {
      consider();
      return;
    }
    auto [lo, hi] = blocks[bi];
    auto first = order.begin() + lo, last = order.begin() + hi;
    std::sort(first, last);
    do {
      rec(bi + 1);
    } while (std::next_permutation(first, last));
  };
  rec(0);
  return *best;
}

bool enumerate(int size_max, const FlagFilter& filter, const std::function<bool(const FiniteAlgebra&)>& visit,
               std::optional<std::chrono::steady_clock::time_point> deadline) {
  for (int n = 1; n <= size_max; ++n) {
    std::set<std::vector<int>> seen;
    Enumerator e{n, filter, visit, seen, std::vector<Mask>(static_cast<std::size_t>(n), 0u), {}, {}, deadline};
    if (n == 1) {
      FiniteAlgebra m;
      m.n = 1;
      m.add_table = {0};
      m.res_table = {0};
      m.top = 0;
      if (filter.admits(check_class(m)) && !visit(m)) return true;
      continue;
    }
    e.posets(1);
    if (e.timed_out) return false;
    if (e.stop) return true;
  }
  return true;
}

std::vector<FiniteAlgebra> enumerate(int size_max, const FlagFilter& filter) {
  std::vector<FiniteAlgebra> out;
  enumerate(size_max, filter, [&](const FiniteAlgebra& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::optional<Countermodel> find_countermodel(const Sequent& s, TheoryId t, int size_max, double seconds,
                                              bool* exhausted) {
  Sequent probe = t.level == Level::Minimal ? free_falsum(s) : s;
  std::optional<Countermodel> found;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  if (seconds > 0)
    deadline = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
  bool done = enumerate(size_max, class_of(t), [&](const FiniteAlgebra& m) {
    Assignment w;
    if (!valid(probe, m, &w)) {
      // In minimal theories the witness includes the value chosen for 1.
      found = Countermodel{m, w};
      return false;
    }
    return true;
  }, deadline);
  if (exhausted) *exhausted = done && !found;
  return found;
}

bool valid_in_class(const Sequent& s, TheoryId t, int size_max) {
  Sequent probe = t.level == Level::Minimal ? free_falsum(s) : s;
  bool ok = true;
  enumerate(size_max, class_of(t), [&](const FiniteAlgebra& m) {
    ok = valid(probe, m);
    return ok;
  });
  return ok;
}

// ---------------------------------------------------------------------------
// Text format

std::string write_algebra(const FiniteAlgebra& m) {
  std::ostringstream out;
  out << "size " << m.n << '\n';
  if (m.top) out << "top " << *m.top << '\n';
  auto table = [&](const char* name, const std::vector<int>& t) {
    out << name << ":\n";
    for (int a = 0; a < m.n; ++a) {
      for (int b = 0; b < m.n; ++b) out << (b ? " " : "") << t[static_cast<std::size_t>(a * m.n + b)];
      out << '\n';
    }
  };
  table("add", m.add_table);
  table("res", m.res_table);
  return out.str();
}

FiniteAlgebra read_algebra(std::istream& in) {
  FiniteAlgebra m;
  std::string word;
  std::size_t offset = 0;
  auto expect_word = [&](const std::string& w) {
    if (!(in >> word) || word != w) throw ParseError("expected '" + w + "' in algebra file", offset);
    ++offset;
  };
  expect_word("size");
  if (!(in >> m.n) || m.n < 1) throw ParseError("bad size", offset);
  if (!(in >> word)) throw ParseError("truncated algebra file", offset);
  if (word == "top") {
    int t;
    if (!(in >> t)) throw ParseError("bad top", offset);
    m.top = t;
    if (!(in >> word)) throw ParseError("truncated algebra file", offset);
  }
  if (word != "add:") throw ParseError("expected 'add:'", offset);
  auto read_table = [&](std::vector<int>& t) {
    t.resize(static_cast<std::size_t>(m.n * m.n));
    for (auto& x : t)
      if (!(in >> x)) throw ParseError("truncated table", offset);
  };
  read_table(m.add_table);
  expect_word("res:");
  read_table(m.res_table);
  return m;
}

std::string format_assignment(const Assignment& v) {
  std::string out;
  for (const auto& [k, x] : v) {
    if (!out.empty()) out += ", ";
    out += k + " := " + std::to_string(x);
  }
  return out;
}

Assignment parse_assignment(std::string_view text) {
  Assignment v;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string item(text.substr(pos, end - pos));
    pos = end + 1;
    std::size_t eq = item.find(":=");
    if (item.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    if (eq == std::string::npos) throw ParseError("expected 'name := value'", pos);
    std::string name = item.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t\r\n"));
    name.erase(name.find_last_not_of(" \t\r\n") + 1);
    try {
      v[name] = std::stoi(item.substr(eq + 2));
    } catch (const std::exception&) {
      throw ParseError("bad value for " + name, pos);
    }
  }
  return v;
}

}  // namespace luk
