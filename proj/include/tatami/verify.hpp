#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tatami/algebra.hpp"
#include "tatami/enumerator.hpp"
#include "tatami/features.hpp"
#include "tatami/flips.hpp"
#include "tatami/grid.hpp"
#include "tatami/transfer.hpp"

namespace tatami {

enum class ClaimStatus { Confirmed, Refuted, SkippedBudget };
enum class ClaimKind { Theorem, Claim, Conjecture };

inline const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Confirmed: return "confirmed";
    case ClaimStatus::Refuted: return "refuted";
    case ClaimStatus::SkippedBudget: return "skipped-budget";
  }
  return "?";
}

inline const char* to_string(ClaimKind k) {
  switch (k) {
    case ClaimKind::Theorem: return "theorem";
    case ClaimKind::Claim: return "claim";
    case ClaimKind::Conjecture: return "conjecture";
  }
  return "?";
}

struct ClaimReport {
  std::string id;
  ClaimKind kind = ClaimKind::Theorem;
  nlohmann::json parameters = nlohmann::json::object();
  ClaimStatus status = ClaimStatus::Confirmed;
  nlohmann::json evidence = nlohmann::json::object();
  std::string counterexample;  // set when refuted
  double seconds = 0;

  bool confirmed() const { return status == ClaimStatus::Confirmed; }
  // a refuted conjecture is a finding, not a failure
  bool fatal() const { return status == ClaimStatus::Refuted && kind != ClaimKind::Conjecture; }

  void refute(std::string why) {
    if (status != ClaimStatus::Refuted) counterexample = std::move(why);
    status = ClaimStatus::Refuted;
  }
};

inline nlohmann::json to_json(const ClaimReport& r, bool with_timing = true) {
  nlohmann::json j{{"id", r.id},
                   {"kind", to_string(r.kind)},
                   {"parameters", r.parameters},
                   {"status", to_string(r.status)},
                   {"evidence", r.evidence}};
  if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
  if (with_timing) j["seconds"] = r.seconds;
  return j;
}

struct VerifyConfig {
  int max_cells = kDefaultCellBudget;
  int max_height = 10;
};

namespace detail {

inline std::string big_str(const BigInt& v) { return v.str(); }

template <class Fn>
ClaimReport timed(std::string id, ClaimKind kind, Fn&& body) {
  ClaimReport r;
  r.id = std::move(id);
  r.kind = kind;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const BudgetExceeded& e) {
    r.status = ClaimStatus::SkippedBudget;
    r.evidence["budget"] = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// T(r,c,m) for all m from the monomer-weighted transfer series, r <= c.
inline std::map<int, BigInt> transfer_row(int r, int c, int max_monomers = -1) {
  SeriesOptions opt{SeriesWeights::Monomer, max_monomers, -1};
  return count_series(r, c, opt).by_monomers(c);
}

// A tiling of r x c with exactly m monomers, encoded, when one exists within budget.
inline std::string tiling_with_monomers(int r, int c, int m, int budget) {
  if (r * c > budget) return "";
  std::string out;
  for_each_tiling(r, c, [&](const TilingSearch& s) {
    if (s.monomers() != m) return true;
    out = encode_text(s.to_tiling());
    return false;
  });
  return out;
}

inline void check_height(int r, const VerifyConfig& cfg) {
  if (r > cfg.max_height)
    throw BudgetExceeded("height " + std::to_string(r) + " exceeds " + std::to_string(cfg.max_height));
}

}  // namespace detail

/// Parity and upper bound on monomer counts, and which bound is attained.
inline ClaimReport check_theorem1(int max_side, const VerifyConfig& cfg = {}) {
  return detail::timed("theorem1.parity-and-bound", ClaimKind::Theorem, [&](ClaimReport& rep) {
    rep.parameters = {{"max_side", max_side}};
    detail::check_height(max_side, cfg);
    int grids = 0;
    for (int r = 1; r <= max_side; ++r) {
      SeriesTable t = count_series(r, max_side, {SeriesWeights::Monomer, -1, -1});
      for (int c = r; c <= max_side; ++c) {
        const auto row = t.by_monomers(c);
        ++grids;
        int top = 0;
        for (const auto& [m, v] : row) {
          top = std::max(top, m);
          if ((m - r * c) % 2 != 0 || m > std::max(r + 1, c + 1))
            rep.refute("r=" + std::to_string(r) + " c=" + std::to_string(c) + " m=" + std::to_string(m) + "\n" +
                       detail::tiling_with_monomers(r, c, m, cfg.max_cells));
        }
        const int want = (r % 2 == 0 && c % 2 == 1) ? c + 1 : c;
        if (top != want)
          rep.refute("r=" + std::to_string(r) + " c=" + std::to_string(c) + " max m=" + std::to_string(top) +
                     " expected " + std::to_string(want));
        rep.evidence["max_m"][std::to_string(r) + "x" + std::to_string(c)] = top;
      }
    }
    rep.evidence["grids"] = grids;
  });
}

/// T(n,n,n) = n 2^(n-1), by enumeration and by transfer, and the
/// recurrence T(n,n,n) = 2^n + 4 T(n-2,n-2,n-2).
inline ClaimReport check_theorem2(int max_enum, int max_transfer, const VerifyConfig& cfg = {}) {
  return detail::timed("theorem2.square-max-monomers", ClaimKind::Theorem, [&](ClaimReport& rep) {
    rep.parameters = {{"max_enumeration", max_enum}, {"max_transfer", max_transfer}};
    std::map<int, BigInt> via_transfer;
    detail::check_height(max_transfer, cfg);
    for (int n = 1; n <= max_transfer; ++n) {
      const BigInt want = BigInt(n) << (n - 1);
      const BigInt got = detail::transfer_row(n, n, n)[n];
      via_transfer[n] = got;
      rep.evidence["transfer"][std::to_string(n)] = got.str();
      if (got != want) rep.refute("transfer T(" + std::to_string(n) + "," + std::to_string(n) + "," + std::to_string(n) + ") = " + got.str());
    }
    for (int n = 1; n <= max_enum; ++n) {
      const BigInt got = count_by_monomers(n, n, std::max(cfg.max_cells, n * n))[n];
      rep.evidence["enumeration"][std::to_string(n)] = got.str();
      if (got != (BigInt(n) << (n - 1)))
        rep.refute("enumerated T(" + std::to_string(n) + "," + std::to_string(n) + "," + std::to_string(n) + ") = " + got.str());
    }
    for (int n = 3; n <= max_transfer; ++n)
      if (via_transfer[n] != (BigInt(1) << n) + 4 * via_transfer[n - 2])
        rep.refute("recurrence fails at n=" + std::to_string(n));
  });
}

/// T(n,n,1) = 10 for odd n >= 3; for n = 3 also the split into corner and
/// centre monomers.
inline ClaimReport check_tnn1(const std::vector<int>& odd_n, const VerifyConfig& cfg = {}) {
  return detail::timed("claim.tnn1", ClaimKind::Claim, [&](ClaimReport& rep) {
    rep.parameters = {{"n", odd_n}};
    for (int n : odd_n) {
      detail::check_height(n, cfg);
      const BigInt got = detail::transfer_row(n, n, 1)[1];
      rep.evidence["T"][std::to_string(n)] = got.str();
      if (got != 10) rep.refute("T(" + std::to_string(n) + "," + std::to_string(n) + ",1) = " + got.str());
    }
    if (std::find(odd_n.begin(), odd_n.end(), 3) != odd_n.end()) {
      int corner = 0, centre = 0, other = 0;
      for_each_tiling(3, 3, [&](const TilingSearch& s) {
        if (s.monomers() != 1) return true;
        Cell m = s.to_tiling().monomer_cells().front();
        if (m == Cell{2, 2}) ++centre;
        else if ((m.row == 1 || m.row == 3) && (m.col == 1 || m.col == 3)) ++corner;
        else ++other;
        return true;
      });
      rep.evidence["n3_split"] = {{"corner", corner}, {"centre", centre}, {"other", other}};
      if (corner != 8 || centre != 2 || other != 0) rep.refute("3x3 single-monomer split differs");
    }
  });
}

/// T(n,n,m) = m 2^m + (m+1) 2^(m+1) for m < n, m = n mod 2.
inline ClaimReport check_tnnm(int max_n, const VerifyConfig& cfg = {}) {
  return detail::timed("claim.tnnm", ClaimKind::Claim, [&](ClaimReport& rep) {
    rep.parameters = {{"max_n", max_n}};
    detail::check_height(max_n, cfg);
    for (int n = 1; n <= max_n; ++n) {
      const auto row = detail::transfer_row(n, n, n);
      for (int m = n % 2; m < n; m += 2) {
        const BigInt want = BigInt(m) * (BigInt(1) << m) + BigInt(m + 1) * (BigInt(1) << (m + 1));
        const auto it = row.find(m);
        const BigInt got = it == row.end() ? BigInt(0) : it->second;
        rep.evidence["T"][std::to_string(n) + "," + std::to_string(m)] = got.str();
        if (got != want)
          rep.refute("T(" + std::to_string(n) + "," + std::to_string(n) + "," + std::to_string(m) + ") = " + got.str() +
                     ", formula gives " + want.str());
      }
    }
  });
}

/// T(n,n+d,m) constant over the given n (all at or beyond the predicted onset).
inline ClaimReport check_stabilization(int d, int m, const std::vector<int>& ns, const VerifyConfig& cfg = {}) {
  return detail::timed("conjecture.stabilization.d" + std::to_string(d) + ".m" + std::to_string(m), ClaimKind::Conjecture,
                       [&](ClaimReport& rep) {
                         rep.parameters = {{"d", d}, {"m", m}, {"n", ns}};
                         std::vector<std::string> vals;
                         std::string common;
                         for (int n : ns) {
                           detail::check_height(n, cfg);
                           const auto row = detail::transfer_row(n, n + d, m);
                           const auto it = row.find(m);
                           const std::string v = it == row.end() ? "0" : it->second.str();
                           vals.push_back(v);
                           if ((n * (n + d) - m) % 2 != 0) {
                             if (v != "0") rep.refute("nonzero count at n=" + std::to_string(n) + " against parity");
                           } else if (common.empty()) {
                             common = v;
                           } else if (v != common) {
                             rep.refute("values differ across the window at n=" + std::to_string(n));
                           }
                         }
                         rep.evidence["values"] = vals;
                       });
}

/// Maximum-monomer tilings have no vortices or bidimers (ignoring sources
/// whose rays never leave them); n x n tilings with
/// n monomers have exactly two corner monomers in adjacent corners and four
/// distinct rotations.
inline ClaimReport check_corollaries(int max_side, const VerifyConfig& cfg = {}) {
  return detail::timed("corollaries.structure", ClaimKind::Theorem, [&](ClaimReport& rep) {
    rep.parameters = {{"max_side", max_side}};
    long scanned = 0, squares = 0;
    for (int r = 1; r <= max_side; ++r)
      for (int c = r; c <= max_side; ++c) {
        if (r * c > cfg.max_cells) throw BudgetExceeded("grid " + std::to_string(r) + "x" + std::to_string(c));
        const int top = (r % 2 == 0 && c % 2 == 1) ? c + 1 : c;
        for_each_tiling(r, c, [&](const TilingSearch& s) {
          if (s.monomers() != top) return true;
          ++scanned;
          const Tiling t = s.to_tiling();
          for (const auto& f : extract_features(t).features)
            if (f.kind != SourceKind::Loner && f.kind != SourceKind::Vee && !degenerate_feature(f, r, c)) {
              rep.refute("interior source in a maximum-monomer tiling\n" + encode_text(t));
              break;
            }
          return true;
        });
      }
    for (int n = 1; n <= max_side; ++n)
      for_each_tiling(n, n, [&](const TilingSearch& s) {
        if (s.monomers() != n) return true;
        ++squares;
        const Tiling t = s.to_tiling();
        std::vector<Cell> corners;
        for (Cell x : t.monomer_cells())
          if ((x.row == 1 || x.row == n) && (x.col == 1 || x.col == n)) corners.push_back(x);
        const bool ok = n == 1 || (corners.size() == 2 && detail::adjacent(Cell{corners[0].row == 1 ? 1 : 2, corners[0].col == 1 ? 1 : 2},
                                                                            Cell{corners[1].row == 1 ? 1 : 2, corners[1].col == 1 ? 1 : 2}));
        if (!ok) rep.refute("corner monomers not two adjacent corners\n" + encode_text(t));
        if (n > 1) {
          std::vector<Tiling> rots{t};
          Tiling cur = t;
          for (int k = 0; k < 3; ++k) rots.push_back(cur = transform(cur, Transform::Rotate90));
          std::sort(rots.begin(), rots.end());
          if (std::adjacent_find(rots.begin(), rots.end()) != rots.end()) rep.refute("rotations coincide\n" + encode_text(t));
        }
        return true;
      });
    rep.evidence["max_monomer_tilings"] = scanned;
    rep.evidence["square_tilings"] = squares;
  });
}

/// Each n x n tiling with n monomers reaches a trivial tiling by flips that
/// move every monomer at most once; replaying the flips backwards restores it.
inline ClaimReport check_flips(int max_n, const VerifyConfig& cfg = {}) {
  return detail::timed("lemma.flips", ClaimKind::Theorem, [&](ClaimReport& rep) {
    rep.parameters = {{"max_n", max_n}};
    long done = 0;
    for (int n = 1; n <= max_n; ++n) {
      if (n * n > cfg.max_cells) throw BudgetExceeded("square " + std::to_string(n));
      for_each_tiling(n, n, [&](const TilingSearch& s) {
        if (s.monomers() != n) return true;
        const Tiling t = s.to_tiling();
        try {
          const Canonicalization c = canonicalize(t);
          Tiling cur = t;
          std::vector<Cell> landed;
          for (const Diagonal& dg : c.flips) {
            if (std::find(landed.begin(), landed.end(), dg.monomer) != landed.end()) throw std::runtime_error("monomer moved twice");
            cur = flip_diagonal(cur, dg);
            landed.push_back(dg.end());
          }
          if (!(cur == c.trivial) || !is_trivial_tiling(cur)) throw std::runtime_error("end point is not trivial");
          for (auto it = c.flips.rbegin(); it != c.flips.rend(); ++it) cur = flip_diagonal(cur, reversed(*it));
          if (!(cur == t)) throw std::runtime_error("reversal does not restore the input");
        } catch (const std::exception& e) {
          rep.refute(std::string(e.what()) + "\n" + encode_text(t));
        }
        ++done;
        return true;
      });
    }
    rep.evidence["tilings"] = done;
  });
}

/// Sign/argument symmetry and predicted degree of the denominator of T_r(z).
inline std::vector<ClaimReport> check_conjectures12(int max_r, const VerifyConfig& cfg = {}) {
  ClaimReport c1 = detail::timed("conjecture.denominator-symmetry", ClaimKind::Conjecture, [&](ClaimReport&) {});
  ClaimReport c2 = detail::timed("conjecture.denominator-degree", ClaimKind::Conjecture, [&](ClaimReport&) {});
  c1.parameters = c2.parameters = {{"max_r", max_r}};
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 1; r <= max_r; ++r) {
    if (r > cfg.max_height) {
      c1.status = c2.status = ClaimStatus::SkippedBudget;
      break;
    }
    const RationalGF g = rational_gf(r, {cfg.max_height, 0});
    const bool s = conjecture1_check(r, g.denominator), d = conjecture2_check(r, g.denominator);
    c1.evidence[std::to_string(r)] = s;
    c2.evidence[std::to_string(r)] = {{"degree", g.denominator.degree()}, {"predicted", conjecture2_degree(r)}};
    if (!s) c1.refute("r=" + std::to_string(r) + " denominator " + g.denominator.to_string());
    if (!d) c2.refute("r=" + std::to_string(r) + " denominator degree " + std::to_string(g.denominator.degree()));
  }
  c1.seconds = c2.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {c1, c2};
}

/// T(n,z) divisible by the chain of subset-sum polynomials S_{floor((n-1)/2^j)}.
inline ClaimReport check_conjecture3(int lo, int hi, const VerifyConfig& cfg = {}) {
  return detail::timed("conjecture.subset-sum-divisibility", ClaimKind::Conjecture, [&](ClaimReport& rep) {
    rep.parameters = {{"n_min", lo}, {"n_max", hi}};
    for (int n = lo; n <= hi; ++n) {
      const IntPolynomial p = square_vdimer_polynomial(n, cfg.max_height);
      const Conjecture3Result res = conjecture3_check(n, p);
      rep.evidence[std::to_string(n)] = {{"divisors", res.divisor_indices},
                                         {"quotient", res.quotient ? res.quotient->to_string() : std::string()}};
      if (!res.divisible()) rep.refute("n=" + std::to_string(n) + " fails at j=" + std::to_string(res.nondivisible_at));
    }
  });
}

/// Cyclotomic product, nj2 factorization and subset-sum coefficients.
inline ClaimReport check_algebra(int max_cyclotomic, int max_nj2, int max_subset) {
  return detail::timed("algebra.identities", ClaimKind::Theorem, [&](ClaimReport& rep) {
    rep.parameters = {{"cyclotomic", max_cyclotomic}, {"nj2", max_nj2}, {"subset_sum", max_subset}};
    for (int n = 1; n <= max_cyclotomic; ++n) {
      IntPolynomial prod{1};
      for (int d = 1; d <= n; ++d)
        if (n % d == 0) prod *= cyclotomic(d);
      if (prod != IntPolynomial::monomial(1, n) - IntPolynomial{1}) rep.refute("cyclotomic product fails at n=" + std::to_string(n));
    }
    for (int n = 1; n <= max_nj2; ++n) {
      try {
        nj2_factorization(n);
      } catch (const std::logic_error&) {
        rep.refute("nj2 factorization fails at n=" + std::to_string(n));
      }
    }
    for (int n = 0; n <= max_subset; ++n) {
      std::vector<long long> brute(static_cast<std::size_t>(n * (n + 1) / 2 + 1), 0);
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int s = 0;
        for (int k = 0; k < n; ++k)
          if (mask >> k & 1u) s += k + 1;
        ++brute[static_cast<std::size_t>(s)];
      }
      const IntPolynomial p = subset_sum_gf(n);
      for (std::size_t i = 0; i < brute.size(); ++i)
        if (p[static_cast<int>(i)] != brute[i]) rep.refute("subset-sum coefficient mismatch at n=" + std::to_string(n));
    }
  });
}

struct VerifyReport {
  std::vector<ClaimReport> claims;

  bool ok() const {
    return std::none_of(claims.begin(), claims.end(), [](const ClaimReport& c) { return c.fatal(); });
  }
};

inline nlohmann::json to_json(const VerifyReport& r, bool with_timing = true) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : r.claims) arr.push_back(to_json(c, with_timing));
  return {{"claims", arr}, {"ok", r.ok()}};
}

/// suite: "theorems", "conjectures" or "all".
inline VerifyReport run_suite(const std::string& suite, const VerifyConfig& cfg = {}) {
  if (suite != "theorems" && suite != "conjectures" && suite != "all") throw std::invalid_argument("unknown suite '" + suite + "'");
  VerifyReport rep;
  const bool th = suite != "conjectures", cj = suite != "theorems";
  if (th) {
    rep.claims.push_back(check_theorem1(7, cfg));
    rep.claims.push_back(check_theorem2(7, 10, cfg));
    rep.claims.push_back(check_tnn1({3, 5, 7}, cfg));
    rep.claims.push_back(check_tnnm(8, cfg));
    rep.claims.push_back(check_corollaries(6, cfg));
    rep.claims.push_back(check_flips(6, cfg));
    rep.claims.push_back(check_algebra(60, 30, 16));
  }
  if (cj) {
    for (auto& c : check_conjectures12(8, cfg)) rep.claims.push_back(std::move(c));
    rep.claims.push_back(check_conjecture3(2, 8, cfg));
    rep.claims.push_back(check_stabilization(0, 1, {3, 5, 7, 9}, cfg));
    rep.claims.push_back(check_stabilization(1, 1, {6, 7, 8}, cfg));
    rep.claims.push_back(check_stabilization(2, 2, {8, 9}, cfg));
  }
  std::sort(rep.claims.begin(), rep.claims.end(), [](const ClaimReport& a, const ClaimReport& b) { return a.id < b.id; });
  return rep;
}

}  // namespace tatami
