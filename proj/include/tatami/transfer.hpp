#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tatami/algebra.hpp"
#include "tatami/polynomial.hpp"
#include "tatami/search.hpp"

namespace tatami {

/// Per-row frontier signature of a column: 0 vertical dimer (paired
/// greedily top-down within each run), 1 tile flush with the column's right
/// edge spanning only this row, 2 horizontal dimer crossing into the next column.
class ColumnState {
 public:
  ColumnState() = default;
  explicit ColumnState(std::vector<std::uint8_t> sig) : sig_(std::move(sig)) {}

  /// From text such as "0012002".
  static ColumnState parse(const std::string& s) {
    std::vector<std::uint8_t> v;
    for (char ch : s) {
      if (ch < '0' || ch > '2') throw std::invalid_argument("column signature digits must be 0, 1 or 2");
      v.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return ColumnState(std::move(v));
  }

  int height() const { return static_cast<int>(sig_.size()); }
  std::uint8_t operator[](int i) const { return sig_[static_cast<std::size_t>(i)]; }
  const std::vector<std::uint8_t>& sig() const { return sig_; }

  bool valid() const {
    int run = 0;
    for (auto s : sig_) {
      if (s > 2) return false;
      if (s == 0) {
        ++run;
      } else {
        if (run % 2) return false;
        run = 0;
      }
    }
    return run % 2 == 0;
  }

  bool has_crossing() const { return std::find(sig_.begin(), sig_.end(), 2) != sig_.end(); }

  /// Two bits per row, row 1 in the lowest bits.
  std::uint32_t packed() const {
    std::uint32_t p = 0;
    for (std::size_t i = 0; i < sig_.size(); ++i) p |= static_cast<std::uint32_t>(sig_[i]) << (2 * i);
    return p;
  }

  std::string to_string() const {
    std::string s;
    for (auto x : sig_) s.push_back(static_cast<char>('0' + x));
    return s;
  }

  friend auto operator<=>(const ColumnState&, const ColumnState&) = default;

 private:
  std::vector<std::uint8_t> sig_;
};

struct Transition {
  ColumnState from;
  ColumnState to;
  int monomers_added = 0;
  int vdimers_added = 0;
};

/// All valid signatures of height r, lexicographic.
inline std::vector<ColumnState> enumerate_states(int r) {
  if (r < 1) throw std::invalid_argument("state height must be >= 1");
  std::vector<ColumnState> out;
  std::vector<std::uint8_t> cur;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(cur.size()) == r) {
      out.emplace_back(cur);
      return;
    }
    // digits in increasing order give lexicographic output; a 0 opens a pair
    if (static_cast<int>(cur.size()) + 2 <= r) {
      cur.push_back(0);
      cur.push_back(0);
      self(self);
      cur.pop_back();
      cur.pop_back();
    }
    for (std::uint8_t d : {std::uint8_t{1}, std::uint8_t{2}}) {
      cur.push_back(d);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

namespace detail {

// Corners on the shared column line at the vertex between rows i and i+1
// (0-based i), from a column signature seen from its right edge.
inline int right_edge_corners(const std::vector<std::uint8_t>& sig, std::size_t i) {
  int n = 0;
  // row i's bottom end, row i+1's top end
  for (int side = 0; side < 2; ++side) {
    std::size_t row = i + static_cast<std::size_t>(side);
    std::uint8_t s = sig[row];
    if (s == 1) {
      ++n;
    } else if (s == 0) {
      // position within the run decides top or bottom of the pair
      std::size_t start = row;
      while (start > 0 && sig[start - 1] == 0) --start;
      bool top_of_pair = (row - start) % 2 == 0;
      if ((side == 0 && !top_of_pair) || (side == 1 && top_of_pair)) ++n;
    }
  }
  return n;
}

}  // namespace detail

/// Legal successors of u: the column after u, encoded by its own signature.
inline std::vector<Transition> transitions_from(const ColumnState& u) {
  const int r = u.height();
  std::vector<Transition> out;
  // kind of new tile per row: 0 = pre-occupied, 1 = monomer, 2 = new crossing, 3 = vdimer top, 4 = vdimer bottom
  std::vector<std::uint8_t> kind(static_cast<std::size_t>(r));
  std::vector<std::uint8_t> sig(static_cast<std::size_t>(r));
  auto emit = [&] {
    // left corners from u, right corners from the new column's tiles
    for (int i = 0; i + 1 < r; ++i) {
      int left = detail::right_edge_corners(u.sig(), static_cast<std::size_t>(i));
      if (left < 2) continue;
      auto k0 = kind[static_cast<std::size_t>(i)], k1 = kind[static_cast<std::size_t>(i + 1)];
      int right = 0;
      if (k0 == 1 || k0 == 2 || k0 == 4) ++right;
      if (k1 == 1 || k1 == 2 || k1 == 3) ++right;
      if (right == 2) return;
    }
    Transition t{u, ColumnState(sig), 0, 0};
    for (auto k : kind) {
      t.monomers_added += k == 1;
      t.vdimers_added += k == 3;
    }
    out.push_back(std::move(t));
  };
  auto rec = [&](auto&& self, int i) -> void {
    if (i == r) {
      emit();
      return;
    }
    auto ui = static_cast<std::size_t>(i);
    if (u[i] == 2) {
      kind[ui] = 0;
      sig[ui] = 1;
      self(self, i + 1);
      return;
    }
    if (i + 1 < r && u[i + 1] != 2) {
      kind[ui] = 3;
      kind[ui + 1] = 4;
      sig[ui] = sig[ui + 1] = 0;
      self(self, i + 2);
    }
    kind[ui] = 1;
    sig[ui] = 1;
    self(self, i + 1);
    kind[ui] = 2;
    sig[ui] = 2;
    self(self, i + 1);
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), [](const Transition& a, const Transition& b) { return a.to < b.to; });
  return out;
}

/// Precomputed automaton for one height.
class ColumnAutomaton {
 public:
  struct Edge {
    int to;
    int monomers;
    int vdimers;
  };

  explicit ColumnAutomaton(int r) : r_(r), states_(enumerate_states(r)) {
    for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i].packed(), static_cast<int>(i));
    edges_.resize(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i)
      for (const auto& t : transitions_from(states_[i]))
        edges_[i].push_back({index_.at(t.to.packed()), t.monomers_added, t.vdimers_added});
  }

  int height() const { return r_; }
  const std::vector<ColumnState>& states() const { return states_; }
  const std::vector<Edge>& edges(int s) const { return edges_[static_cast<std::size_t>(s)]; }
  int index(const ColumnState& s) const { return index_.at(s.packed()); }

  int monomers_in(int s) const {
    const auto& v = states_[static_cast<std::size_t>(s)].sig();
    return static_cast<int>(std::count(v.begin(), v.end(), 1));
  }
  int vdimers_in(int s) const {
    const auto& v = states_[static_cast<std::size_t>(s)].sig();
    return static_cast<int>(std::count(v.begin(), v.end(), 0)) / 2;
  }

 private:
  int r_;
  std::vector<ColumnState> states_;
  std::unordered_map<std::uint32_t, int> index_;
  std::vector<std::vector<Edge>> edges_;
};

enum class SeriesWeights { None, Monomer, MonomerAndVDimer };

/// T(r,c) for c = 0..C, optionally refined by monomer count m and vertical
/// dimer count v: entries[c][m][v]. Marker degrees above the caps are dropped.
struct SeriesTable {
  int r = 0;
  SeriesWeights weights = SeriesWeights::None;
  std::vector<std::vector<std::vector<BigInt>>> entries;

  BigInt total(int c) const {
    BigInt s = 0;
    for (const auto& row : entries[static_cast<std::size_t>(c)])
      for (const auto& x : row) s += x;
    return s;
  }

  /// T(r,c,m), summed over v.
  BigInt at(int c, int m) const {
    const auto& e = entries[static_cast<std::size_t>(c)];
    if (m < 0 || m >= static_cast<int>(e.size())) return 0;
    BigInt s = 0;
    for (const auto& x : e[static_cast<std::size_t>(m)]) s += x;
    return s;
  }

  std::vector<BigInt> totals() const {
    std::vector<BigInt> out;
    for (std::size_t c = 0; c < entries.size(); ++c) out.push_back(total(static_cast<int>(c)));
    return out;
  }

  /// Nonzero T(r,c,m) as a table, for comparison with the enumerator.
  std::map<int, BigInt> by_monomers(int c) const {
    std::map<int, BigInt> out;
    const auto& e = entries[static_cast<std::size_t>(c)];
    for (std::size_t m = 0; m < e.size(); ++m) {
      BigInt s = at(c, static_cast<int>(m));
      if (s != 0) out[static_cast<int>(m)] = s;
    }
    return out;
  }
};

struct SeriesOptions {
  SeriesWeights weights = SeriesWeights::None;
  int max_monomers = -1;  // -1: keep all
  int max_vdimers = -1;
};

class CountOverflow : public std::overflow_error {
 public:
  CountOverflow() : std::overflow_error("64-bit count overflow") {}
};

namespace detail {

// 64-bit counter that throws instead of wrapping.
struct CheckedCount {
  std::uint64_t v = 0;
  CheckedCount& operator+=(const CheckedCount& o) {
    if (__builtin_add_overflow(v, o.v, &v)) throw CountOverflow();
    return *this;
  }
  bool is_zero() const { return v == 0; }
  BigInt big() const { return BigInt(v); }
};

struct BigCount {
  BigInt v = 0;
  BigCount& operator+=(const BigCount& o) {
    v += o.v;
    return *this;
  }
  bool is_zero() const { return v == 0; }
  const BigInt& big() const { return v; }
};

template <class Count>
SeriesTable run_series(const ColumnAutomaton& a, int C, const SeriesOptions& opt) {
  const int r = a.height();
  const bool wm = opt.weights != SeriesWeights::None;
  const bool wv = opt.weights == SeriesWeights::MonomerAndVDimer;
  const int mcap = wm ? (opt.max_monomers >= 0 ? std::min(opt.max_monomers, r * std::max(C, 0)) : r * std::max(C, 0)) : 0;
  const int vcap = wv ? (opt.max_vdimers >= 0 ? std::min(opt.max_vdimers, r * std::max(C, 0) / 2) : r * std::max(C, 0) / 2) : 0;
  const std::size_t M = static_cast<std::size_t>(mcap) + 1, V = static_cast<std::size_t>(vcap) + 1;
  const std::size_t S = a.states().size();
  using Layer = std::vector<Count>;  // [state][m][v] flattened
  auto idx = [&](std::size_t s, std::size_t m, std::size_t v) { return (s * M + m) * V + v; };

  SeriesTable table;
  table.r = r;
  table.weights = opt.weights;
  table.entries.resize(static_cast<std::size_t>(std::max(C, 0)) + 1,
                       std::vector<std::vector<BigInt>>(M, std::vector<BigInt>(V, 0)));
  table.entries[0][0][0] = 1;
  if (C < 1) return table;

  Layer cur(S * M * V), next(S * M * V);
  for (std::size_t s = 0; s < S; ++s) {
    int m = wm ? a.monomers_in(static_cast<int>(s)) : 0;
    int v = wv ? a.vdimers_in(static_cast<int>(s)) : 0;
    if (m <= mcap && v <= vcap) cur[idx(s, static_cast<std::size_t>(m), static_cast<std::size_t>(v))].v = 1;
  }
  std::vector<char> terminal(S);
  for (std::size_t s = 0; s < S; ++s) terminal[s] = !a.states()[s].has_crossing();

  for (int c = 1;; ++c) {
    auto& e = table.entries[static_cast<std::size_t>(c)];
    for (std::size_t s = 0; s < S; ++s) {
      if (!terminal[s]) continue;
      for (std::size_t m = 0; m < M; ++m)
        for (std::size_t v = 0; v < V; ++v) {
          const Count& x = cur[idx(s, m, v)];
          if (!x.is_zero()) e[m][v] += x.big();
        }
    }
    if (c == C) break;
    for (auto& x : next) x = Count{};
    for (std::size_t s = 0; s < S; ++s) {
      for (const auto& edge : a.edges(static_cast<int>(s))) {
        const std::size_t dm = wm ? static_cast<std::size_t>(edge.monomers) : 0;
        const std::size_t dv = wv ? static_cast<std::size_t>(edge.vdimers) : 0;
        const std::size_t t = static_cast<std::size_t>(edge.to);
        for (std::size_t m = 0; m + dm < M; ++m)
          for (std::size_t v = 0; v + dv < V; ++v) {
            const Count& x = cur[idx(s, m, v)];
            if (!x.is_zero()) next[idx(t, m + dm, v + dv)] += x;
          }
      }
    }
    std::swap(cur, next);
  }
  return table;
}

}  // namespace detail

/// Iterates the column automaton for c = 0..C. Exact: counts run in 64-bit
/// arithmetic and restart in arbitrary precision on overflow.
inline SeriesTable count_series(const ColumnAutomaton& a, int C, const SeriesOptions& opt = {}) {
  try {
    return detail::run_series<detail::CheckedCount>(a, C, opt);
  } catch (const CountOverflow&) {
    return detail::run_series<detail::BigCount>(a, C, opt);
  }
}

inline SeriesTable count_series(int r, int C, const SeriesOptions& opt = {}) {
  return count_series(ColumnAutomaton(r), C, opt);
}

// ---------------------------------------------------------------------------
// Rational generating functions

class InsufficientTerms : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonIntegralNormalization : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest linear recurrence over Q (Berlekamp-Massey).
struct Recurrence {
  IntPolynomial connection;  // primitive, connection(0) = 1
  int length = 0;            // linear complexity L; the relation holds for n >= L
};

/// Fits the shortest recurrence to the whole series; the fit is found on a
/// prefix and must hold on the held-out tail. Requires >= 2L + 4 terms.
inline Recurrence minimal_recurrence(const std::vector<BigInt>& series) {
  using Q = boost::multiprecision::cpp_rational;
  const std::size_t N = series.size();
  std::vector<Q> C{Q(1)}, B{Q(1)};
  int L = 0, shift = 1;
  Q b = 1;
  for (std::size_t n = 0; n < N; ++n) {
    Q d = Q(series[n]);
    for (int i = 1; i <= L && i < static_cast<int>(C.size()); ++i) d += C[static_cast<std::size_t>(i)] * Q(series[n - static_cast<std::size_t>(i)]);
    if (d == 0) {
      ++shift;
      continue;
    }
    std::vector<Q> T = C;
    Q coef = d / b;
    if (C.size() < B.size() + static_cast<std::size_t>(shift)) C.resize(B.size() + static_cast<std::size_t>(shift), Q(0));
    for (std::size_t i = 0; i < B.size(); ++i) C[i + static_cast<std::size_t>(shift)] -= coef * B[i];
    if (2 * L <= static_cast<int>(n)) {
      L = static_cast<int>(n) + 1 - L;
      B = std::move(T);
      b = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  if (N < static_cast<std::size_t>(2 * L + 4))
    throw InsufficientTerms("series of " + std::to_string(N) + " terms is too short for a recurrence of length " +
                            std::to_string(L));
  // clear denominators
  BigInt lcm = 1;
  for (const auto& q : C) lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(q));
  std::vector<BigInt> ic;
  for (const auto& q : C) ic.push_back(boost::multiprecision::numerator(q) * (lcm / boost::multiprecision::denominator(q)));
  IntPolynomial conn(std::move(ic));
  BigInt g = content(conn);
  if (conn[0] < 0) g = -g;
  std::vector<BigInt> cc = conn.coeffs();
  for (auto& x : cc) x /= g;
  conn = IntPolynomial(std::move(cc));
  if (conn[0] != 1)
    throw NonIntegralNormalization("primitive recurrence has constant term " + conn[0].str());
  // held-out check over every index
  for (std::size_t n = static_cast<std::size_t>(L); n < N; ++n) {
    BigInt acc = 0;
    for (int i = 0; i <= conn.degree(); ++i) acc += conn[i] * series[n - static_cast<std::size_t>(i)];
    if (acc != 0) throw std::logic_error("recurrence fails to validate at index " + std::to_string(n));
  }
  return {conn, L};
}

/// T_r(z) = numerator / denominator, coprime, denominator(0) = 1.
struct RationalGF {
  int r = 0;
  IntPolynomial numerator;
  IntPolynomial denominator;
  int validated_terms = 0;
};

struct GenfunOptions {
  int max_height = 8;
  int seed_terms = 0;  // 0: seeded from the predicted denominator degree
};

/// Recovers T_r(z) from the series by recurrence fitting, then re-expands
/// f/g against a freshly computed series of deg f + deg g + 16 terms.
inline RationalGF rational_gf(int r, const GenfunOptions& opt = {}) {
  if (r < 1) throw std::invalid_argument("height must be >= 1");
  if (r > opt.max_height)
    throw BudgetExceeded("height " + std::to_string(r) + " exceeds the transfer height budget of " +
                         std::to_string(opt.max_height));
  ColumnAutomaton a(r);
  int terms = opt.seed_terms > 0 ? opt.seed_terms : 2 * (2 * conjecture2_degree(r) + 8) + 4;
  for (;;) {
    std::vector<BigInt> s = count_series(a, terms - 1).totals();
    Recurrence rec;
    try {
      rec = minimal_recurrence(s);
    } catch (const InsufficientTerms&) {
      terms *= 2;
      continue;
    }
    IntPolynomial g = rec.connection;
    IntPolynomial f = series_mul(IntPolynomial(s), g, rec.length);
    IntPolynomial d = gcd(f, g);
    if (d.degree() > 0) {
      f = divide_exact(f, d);
      g = divide_exact(g, d);
    }
    if (g[0] < 0) {
      f = -f;
      g = -g;
    }
    if (g[0] != 1) throw NonIntegralNormalization("reduced denominator has g(0) = " + g[0].str());
    const int check = std::max(f.degree(), 0) + g.degree() + 16;
    const int n_fresh = std::max(check, static_cast<int>(s.size()));
    std::vector<BigInt> fresh = count_series(ColumnAutomaton(r), n_fresh - 1).totals();
    if (series_expand(f, g, static_cast<int>(fresh.size())) != fresh)
      throw std::logic_error("rational generating function failed validation for r = " + std::to_string(r));
    return {r, f, g, static_cast<int>(fresh.size())};
  }
}

/// T(n,z): coefficient of z^i counts n x n tilings with n monomers and i vertical dimers.
inline IntPolynomial square_vdimer_polynomial(int n, int max_n = 10) {
  if (n < 1) throw std::invalid_argument("square size must be >= 1");
  if (n > max_n) throw BudgetExceeded("square size " + std::to_string(n) + " exceeds budget " + std::to_string(max_n));
  SeriesOptions opt{SeriesWeights::MonomerAndVDimer, n, -1};
  SeriesTable t = count_series(n, n, opt);
  return IntPolynomial(t.entries[static_cast<std::size_t>(n)][static_cast<std::size_t>(n)]);
}

}  // namespace tatami
