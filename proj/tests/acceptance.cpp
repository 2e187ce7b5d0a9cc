// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [N ...]   (no arguments runs every criterion)

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "tatami/algebra.hpp"
#include "tatami/boundary.hpp"
#include "tatami/enumerator.hpp"
#include "tatami/flips.hpp"
#include "tatami/regions.hpp"
#include "tatami/structure.hpp"
#include "tatami/transfer.hpp"
#include "tatami/verify.hpp"

using namespace tatami;

namespace {

constexpr int kAreaLimit = 36;

struct Outcome {
  bool pass = true;
  std::string detail;
  bool fatal = true;  // false: reported only, never fails the run
};

// Collects the first few failure messages and a running tally.
struct Tally {
  long checked = 0;
  long failed = 0;
  std::vector<std::string> notes;

  void fail(const std::string& why) {
    ++failed;
    if (notes.size() < 5) notes.push_back(why);
  }
  Outcome outcome(const std::string& summary) const {
    std::string d = summary;
    for (const auto& n : notes) d += "; " + n;
    return {failed == 0, d};
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string str(const BigInt& v) { return v.str(); }

std::string grid(int r, int c) { return std::to_string(r) + "x" + std::to_string(c); }

// ---- 1, 2: generating functions ------------------------------------------

Outcome gf_exact() {
  struct Want {
    int r;
    IntPolynomial f, g;
  };
  const std::vector<Want> printed{
      {1, {1, 1}, {1, -1, -1}},
      {2, {1, 0, 2, -1}, {1, -2, 0, -2, 1}},
      {3, {1, 2, 8, 3, -6, -3, -4, 2, 1}, {1, -1, -2, 0, -2, 1, 1}},
  };
  Tally t;
  for (const auto& w : printed) {
    const auto t0 = std::chrono::steady_clock::now();
    const RationalGF got = rational_gf(w.r);
    const double s = seconds_since(t0);
    ++t.checked;
    const std::string shown = "(" + got.numerator.to_string() + ") / (" + got.denominator.to_string() + ")";
    if (got.numerator != w.f || got.denominator != w.g)
      t.fail("T_" + std::to_string(w.r) + " = " + shown + ", expected (" + w.f.to_string() + ") / (" + w.g.to_string() + ")");
    if (gcd(got.numerator, got.denominator).degree() != 0) t.fail("T_" + std::to_string(w.r) + " not reduced");
    if (got.denominator[0] != 1) t.fail("T_" + std::to_string(w.r) + " has g(0) != 1");
    if (s >= 1.0) t.fail("T_" + std::to_string(w.r) + " took " + std::to_string(s) + " s");
    // independent check of the expansion against exhaustive counts
    std::vector<long long> f, g;
    for (const auto& x : got.numerator.coeffs()) f.push_back(static_cast<long long>(x));
    for (const auto& x : got.denominator.coeffs()) g.push_back(static_cast<long long>(x));
    const auto series = oracle::series_div(f, g, 7);
    for (int c = 1; c < 7; ++c)
      if (series[static_cast<std::size_t>(c)] != oracle::total(w.r, c))
        t.fail("T_" + std::to_string(w.r) + " expansion differs from brute force at c=" + std::to_string(c));
  }
  return t.outcome("T_1, T_2, T_3 against the printed forms");
}

Outcome gf_degrees() {
  const std::vector<std::pair<int, int>> table{{1, 2}, {3, 4}, {8, 6}, {14, 11}, {18, 14}, {27, 22}, {28, 22}, {44, 37}};
  Tally t;
  std::string got_all;
  for (int r = 1; r <= 8; ++r) {
    const RationalGF g = rational_gf(r, {8, 0});
    const std::pair<int, int> got{g.numerator.degree(), g.denominator.degree()};
    got_all += (r > 1 ? " " : "") + std::string("(") + std::to_string(got.first) + "," + std::to_string(got.second) + ")";
    ++t.checked;
    if (got != table[static_cast<std::size_t>(r - 1)])
      t.fail("r=" + std::to_string(r) + " has (" + std::to_string(got.first) + "," + std::to_string(got.second) + "), table gives (" +
             std::to_string(table[static_cast<std::size_t>(r - 1)].first) + "," +
             std::to_string(table[static_cast<std::size_t>(r - 1)].second) + ")");
  }
  return t.outcome("degrees for r=1..8: " + got_all);
}

// ---- 3: enumerator against transfer ----------------------------------------

Outcome engines_agree() {
  Tally t;
  for (int h = 1; h * h <= kAreaLimit; ++h) {
    const int cmax = kAreaLimit / h;
    const SeriesTable series = count_series(h, cmax, {SeriesWeights::Monomer});
    for (int c = h; c <= cmax; ++c) {
      const auto want = series.by_monomers(c);
      ++t.checked;
      if (count_by_monomers(h, c, kAreaLimit) != want) t.fail(grid(h, c) + " per-monomer counts differ");
      if (c == h) continue;
      ++t.checked;
      if (count_by_monomers(c, h, kAreaLimit) != want) t.fail(grid(c, h) + " per-monomer counts differ");
    }
  }
  return t.outcome(std::to_string(t.checked) + " grids with r*c <= 36");
}

// ---- 4 to 8: counting theorems and claims ----------------------------------

BigInt weighted(int r, int c, int m, int max_m = -1) {
  return count_series(r, c, {SeriesWeights::Monomer, max_m < 0 ? m : max_m}).at(c, m);
}

Outcome square_max_monomers() {
  const std::vector<long long> printed{1, 4, 12, 32, 80, 192, 448, 1024, 2304, 5120};
  Tally t;
  std::string shown;
  for (int n = 1; n <= 10; ++n) {
    const BigInt want = BigInt(n) << (n - 1);
    if (want != printed[static_cast<std::size_t>(n - 1)]) t.fail("n 2^(n-1) differs from the listed value at n=" + std::to_string(n));
    const BigInt tr = weighted(n, n, n);
    shown += (n > 1 ? " " : "") + str(tr);
    ++t.checked;
    if (tr != want) t.fail("transfer T(" + std::to_string(n) + ",n,n) = " + str(tr));
    if (n <= 7) {
      const CountTable e = count_by_monomers(n, n, n * n);
      const BigInt got = e.count(n) ? e.at(n) : BigInt(0);
      ++t.checked;
      if (got != want) t.fail("enumerated T(" + std::to_string(n) + ",n,n) = " + str(got));
    }
  }
  return t.outcome("T(n,n,n): " + shown);
}

Outcome single_monomer_squares() {
  Tally t;
  for (int n : {3, 5, 7}) {
    const BigInt v = weighted(n, n, 1);
    ++t.checked;
    if (v != 10) t.fail("T(" + std::to_string(n) + "," + std::to_string(n) + ",1) = " + str(v));
  }
  return t.outcome("T(n,n,1) for n = 3, 5, 7");
}

Outcome nine_by_thirteen() {
  const auto t0 = std::chrono::steady_clock::now();
  const BigInt v = weighted(9, 13, 1);
  std::ostringstream d;
  d << "T(9,13,1) = " << v << " in " << seconds_since(t0) << " s";
  return {v == 0, d.str()};
}

Outcome tnnm() {
  Tally t;
  for (int n = 1; n <= 8; ++n) {
    const SeriesTable s = count_series(n, n, {SeriesWeights::Monomer, n});
    for (int m = n % 2; m < n; m += 2) {
      const BigInt want = BigInt(m) * (BigInt(1) << m) + BigInt(m + 1) * (BigInt(1) << (m + 1));
      ++t.checked;
      if (s.at(n, m) != want)
        t.fail("T(" + std::to_string(n) + "," + std::to_string(n) + "," + std::to_string(m) + ") = " + str(s.at(n, m)) + ", formula " + str(want));
    }
  }
  return t.outcome(std::to_string(t.checked) + " (n,m) pairs with m < n <= 8");
}

Outcome parity_and_bound() {
  Tally t;
  for (int r = 1; r <= 7; ++r) {
    const SeriesTable s = count_series(r, 7, {SeriesWeights::Monomer});
    for (int c = r; c <= 7; ++c) {
      ++t.checked;
      const auto row = s.by_monomers(c);
      int top = -1;
      for (const auto& [m, n] : row) {
        if ((m - r * c) % 2 != 0) t.fail(grid(r, c) + " has m=" + std::to_string(m) + " of the wrong parity");
        if (m > std::max(r + 1, c + 1)) t.fail(grid(r, c) + " has m=" + std::to_string(m) + " above the bound");
        top = std::max(top, m);
      }
      const int want = (r % 2 == 0 && c % 2 == 1) ? c + 1 : c;
      if (top != want) t.fail(grid(r, c) + " maximum is " + std::to_string(top) + ", expected " + std::to_string(want));
    }
  }
  return t.outcome(std::to_string(t.checked) + " grids with r <= c <= 7");
}

// ---- 9, 10: boundaries and structure ---------------------------------------

std::vector<std::pair<int, int>> small_grids() {
  std::vector<std::pair<int, int>> out;
  for (int r = 1; r <= kAreaLimit; ++r)
    for (int c = 1; r * c <= kAreaLimit; ++c) out.push_back({r, c});
  return out;
}

Outcome boundary_determinism() {
  Tally t;
  for (auto [r, c] : small_grids())
    for_each_tiling(
        r, c,
        [&](const TilingSearch& s) {
          const Tiling tiling = s.to_tiling();
          const BoundaryLabels b = boundary_of(tiling);
          ++t.checked;
          try {
            if (!(reconstruct_from_boundary(b, kAreaLimit) == tiling)) t.fail(grid(r, c) + " reconstructs a different tiling");
          } catch (const std::exception& e) {
            t.fail(grid(r, c) + " reconstruction threw: " + e.what());
          }
          const std::size_t n = enumerate_with_boundary(b, kAreaLimit).size();
          if (n != 1) t.fail(grid(r, c) + " boundary admits " + std::to_string(n) + " tilings");
          return true;
        },
        kAreaLimit);
  return t.outcome(std::to_string(t.checked) + " tilings over " + std::to_string(small_grids().size()) + " grids");
}

Outcome structure_round_trips() {
  Tally t;
  long trivial_total = 0;
  for (auto [r, c] : small_grids()) {
    long trivial = 0;
    for_each_tiling(
        r, c,
        [&](const TilingSearch& s) {
          const Tiling tiling = s.to_tiling();
          const FeatureDiagram d = extract_features(tiling);
          ++t.checked;
          if (d.trivial()) {
            ++trivial;
          } else if (render(d, kAreaLimit) != std::vector<Tiling>{tiling}) {
            t.fail(grid(r, c) + " diagram does not render back to its tiling\n" + encode_text(tiling));
          }
          return true;
        },
        kAreaLimit);
    // the trivial diagram renders every trivial tiling, each once
    long rendered = 0;
    for_each_render(
        FeatureDiagram{r, c, {}},
        [&](const TilingSearch& s) {
          ++rendered;
          if (!extract_features(s.to_tiling()).trivial()) t.fail(grid(r, c) + " trivial render produced a non-trivial tiling");
          return true;
        },
        kAreaLimit);
    if (rendered != trivial)
      t.fail(grid(r, c) + " trivial diagram renders " + std::to_string(rendered) + " tilings, " + std::to_string(trivial) + " expected");
    trivial_total += trivial;
  }
  long diagrams = 0;
  for (auto [r, c] : {std::pair{4, 5}, std::pair{5, 6}}) {
    const auto cands = candidate_features(r, c);
    auto check = [&](FeatureDiagram d) {
      d.normalize();
      ++diagrams;
      const bool valid = validate_diagram(d).valid();
      const bool realised = !render(d).empty();
      if (valid != realised)
        t.fail(grid(r, c) + " validation says " + (valid ? "valid" : "invalid") + " but render is " + (realised ? "nonempty" : "empty") +
               "\n" + encode_diagram(d));
    };
    check({r, c, {}});
    for (std::size_t i = 0; i < cands.size(); ++i) {
      check({r, c, {cands[i]}});
      for (std::size_t j = i + 1; j < cands.size(); ++j) check({r, c, {cands[i], cands[j]}});
    }
  }
  return t.outcome(std::to_string(t.checked) + " tilings (" + std::to_string(trivial_total) + " trivial), " + std::to_string(diagrams) +
                   " diagrams on 4x5 and 5x6");
}

// ---- 11: flips --------------------------------------------------------------

Outcome flip_suite() {
  Tally t;
  long flips = 0;
  for (int n = 1; n <= 6; ++n)
    for_each_tiling(n, n, [&](const TilingSearch& s) {
      if (s.monomers() != n) return true;
      const Tiling tiling = s.to_tiling();
      const std::string text = "\n" + encode_text(tiling);
      ++t.checked;
      for (Cell m : tiling.monomer_cells())
        for (const Diagonal& d : find_diagonals(tiling, m)) {
          ++flips;
          if (!(flip_diagonal(flip_diagonal(tiling, d), reversed(d)) == tiling)) t.fail("flip is not undone by its reverse" + text);
        }
      try {
        const Canonicalization c = canonicalize(tiling);
        Tiling cur = tiling;
        std::vector<Cell> landed;
        for (const Diagonal& d : c.flips) {
          if (std::find(landed.begin(), landed.end(), d.monomer) != landed.end()) t.fail("a monomer moves twice" + text);
          cur = flip_diagonal(cur, d);
          landed.push_back(d.end());
        }
        if (!(cur == c.trivial) || !is_trivial_tiling(cur)) t.fail("flip sequence does not end at a trivial tiling" + text);
        for (auto it = c.flips.rbegin(); it != c.flips.rend(); ++it) cur = flip_diagonal(cur, reversed(*it));
        if (!(cur == tiling)) t.fail("reversal does not restore the input" + text);
      } catch (const std::exception& e) {
        t.fail(std::string("canonicalize failed: ") + e.what() + text);
      }
      if (n >= 2) {
        std::vector<Cell> corners;
        for (Cell x : tiling.monomer_cells())
          if ((x.row == 1 || x.row == n) && (x.col == 1 || x.col == n)) corners.push_back(x);
        const bool adjacent = corners.size() == 2 && (corners[0].row == corners[1].row || corners[0].col == corners[1].col);
        if (!adjacent) t.fail("corner monomers are not two adjacent corners" + text);
      }
      return true;
    });
  return t.outcome(std::to_string(t.checked) + " tilings, " + std::to_string(flips) + " diagonals; corner check for n >= 2");
}

// ---- 12: algebra --------------------------------------------------------------

Outcome algebra() {
  Tally t;
  for (int n = 1; n <= 60; ++n) {
    IntPolynomial prod{1};
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) prod *= cyclotomic(d);
    ++t.checked;
    if (prod != IntPolynomial::monomial(1, n) - IntPolynomial{1}) t.fail("cyclotomic product fails at n=" + std::to_string(n));
  }
  for (int n = 1; n <= 30; ++n) {
    IntPolynomial direct{1};
    for (int k = 1; k <= n; ++k) direct *= IntPolynomial{1} + IntPolynomial::monomial(1, k);
    ++t.checked;
    try {
      if (expand(nj2_factorization(n)) != direct) t.fail("factorization fails at n=" + std::to_string(n));
    } catch (const std::exception& e) {
      t.fail("factorization fails at n=" + std::to_string(n) + ": " + e.what());
    }
  }
  for (int n = 0; n <= 16; ++n) {
    std::vector<long long> brute(static_cast<std::size_t>(n * (n + 1) / 2 + 1), 0);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      int s = 0;
      for (int k = 0; k < n; ++k)
        if (mask >> k & 1u) s += k + 1;
      ++brute[static_cast<std::size_t>(s)];
    }
    const IntPolynomial p = subset_sum_gf(n);
    ++t.checked;
    if (p.degree() + 1 != static_cast<int>(brute.size())) t.fail("subset-sum degree differs at n=" + std::to_string(n));
    for (std::size_t i = 0; i < brute.size(); ++i)
      if (p[static_cast<int>(i)] != brute[i]) t.fail("subset-sum coefficient differs at n=" + std::to_string(n));
  }
  return t.outcome("cyclotomic n <= 60, factorization n <= 30, subset sums n <= 16");
}

// ---- 13: conjectures ------------------------------------------------------------

Outcome conjectures() {
  const VerifyReport rep = run_suite("conjectures");
  Outcome o{true, "", false};
  for (const ClaimReport& c : rep.claims) {
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += c.id + " " + to_string(c.status);
    if (!c.counterexample.empty()) o.detail += " (" + c.counterexample + ")";
    if (!c.confirmed()) o.pass = false;
  }
  return o;
}

// ---- 14: regions ----------------------------------------------------------------

Outcome regions() {
  Tally t;
  const MinMonomerResult sq = min_monomers(CellRegion::rectangle(3, 3));
  const FeatureDiagram d = extract_features(sq.witness);
  const bool pinwheel = d.features.size() == 1 &&
                        (d.features[0].kind == SourceKind::VortexCW || d.features[0].kind == SourceKind::VortexCCW);
  if (sq.m_star != 1 || !pinwheel) t.fail("3x3 gives m*=" + std::to_string(sq.m_star) + (pinwheel ? "" : " without a pinwheel"));
  if (const int m = min_monomers(CellRegion::rectangle(2, 3)).m_star; m != 0) t.fail("2x3 gives m*=" + std::to_string(m));
  if (const int m = min_monomers(parse_region("##.\n###\n")).m_star; m != 1) t.fail("L-fixture gives m*=" + std::to_string(m));
  t.checked = 3;
  std::mt19937 rng(7177);
  std::uniform_int_distribution<int> side(1, 6);
  std::bernoulli_distribution keep(0.7);
  for (int trial = 0; trial < 50;) {
    CellRegion region{side(rng), side(rng), {}};
    for (int i = 0; i < region.rows * region.cols; ++i) region.mask.push_back(keep(rng) ? 1 : 0);
    if (region.size() < 1 || region.size() > 20) continue;
    ++trial;
    ++t.checked;
    const auto want = oracle::by_monomers(region.rows, region.cols, region.mask);
    const MinMonomerResult res = min_monomers(region);
    const std::string shown = "\n" + encode_region(region);
    if (res.m_star % 2 != region.size() % 2) t.fail("m* has the wrong parity" + shown);
    if (want.empty() || res.m_star != want.begin()->first) t.fail("m* differs from brute force" + shown);
    if (res.witness.monomers() != res.m_star || !tatami_valid(res.witness) || res.witness.cell_count() != region.size())
      t.fail("witness does not certify m*" + shown);
    for (const auto& [m, n] : want)
      if (m % 2 != region.size() % 2) t.fail("brute force finds a tiling of the wrong parity" + shown);
  }
  return t.outcome("fixtures and 50 random regions of <= 20 cells");
}

const std::vector<std::function<Outcome()>> kCriteria{
    gf_exact,         gf_degrees,           engines_agree,         square_max_monomers, single_monomer_squares,
    nine_by_thirteen, tnnm,                 parity_and_bound,      boundary_determinism, structure_round_trips,
    flip_suite,       algebra,              conjectures,           regions,
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(kCriteria.size())) {
      std::cerr << "unknown criterion '" << argv[i] << "'\n";
      return 2;
    }
    which.push_back(n);
  }
  if (which.empty())
    for (int n = 1; n <= static_cast<int>(kCriteria.size()); ++n) which.push_back(n);
  int status = 0;
  for (int n : which) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = kCriteria[static_cast<std::size_t>(n - 1)]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::ostringstream secs;
    secs.precision(2);
    secs << std::fixed << seconds_since(t0);
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << (o.fatal ? "" : " (non-fatal)") << " [" << secs.str()
              << " s] " << o.detail << std::endl;
    if (!o.pass && o.fatal) status = 1;
  }
  return status;
}
