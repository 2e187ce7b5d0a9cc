#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "tatami/enumerator.hpp"
#include "tatami/features.hpp"
#include "tatami/regions.hpp"
#include "tatami/structure.hpp"
#include "tatami/transfer.hpp"
#include "tatami/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tatami;

namespace {

constexpr const char* kEngineVersion = "tatami-engine/1";

enum Exit { kOk = 0, kUsage = 1, kRefused = 2, kBudget = 3 };

struct Config {
  int max_cells = kDefaultCellBudget;
  int max_height = 10;
  std::string format = "text";
  std::string cache_dir;
  std::string engine = "auto";
};

class Refused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

json big(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

std::string big_text(const json& j) { return j.is_string() ? j.get<std::string>() : std::to_string(j.get<std::int64_t>()); }

json poly_json(const IntPolynomial& p) {
  json a = json::array();
  for (int i = 0; i <= p.degree(); ++i) a.push_back(big(p[i]));
  return a;
}

json tiling_json(const Tiling& t) {
  json lines = json::array();
  std::istringstream in(encode_text(t));
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return {{"rows", t.rows()}, {"cols", t.cols()}, {"monomers", t.monomers()}, {"tiling", lines}};
}

// FNV-1a; stable across platforms, unlike std::hash
std::string key_hash(const std::string& key) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : key) h = (h ^ ch) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

template <class Fn>
json cached(const Config& cfg, const std::string& key, Fn&& compute) {
  if (cfg.cache_dir.empty()) return compute();
  const std::string full = key + "|" + kEngineVersion;
  const fs::path dir(cfg.cache_dir);
  const fs::path file = dir / (key_hash(full) + ".json");
  if (std::ifstream in(file); in) {
    try {
      json doc = json::parse(in);
      if (doc.value("key", "") == full) return doc["value"];
    } catch (const json::exception&) {
      // unreadable entries are recomputed and overwritten
    }
  }
  json value = compute();
  fs::create_directories(dir);
  const fs::path tmp = dir / (file.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary);
    out << json{{"key", full}, {"value", value}}.dump() << '\n';
  }
  fs::rename(tmp, file);
  return value;
}

void emit(const Config& cfg, const json& j, const std::string& text) {
  if (cfg.format == "json")
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

// ---- count

json compute_count(int r, int c, bool by_m, bool by_v, std::optional<int> only_m, const Config& cfg) {
  json out{{"r", r}, {"c", c}};
  const bool fits_enum = static_cast<long>(r) * c <= cfg.max_cells;
  const int h = std::min(r, c), w = std::max(r, c);
  std::string engine = cfg.engine;
  if (engine == "auto") engine = fits_enum ? "enumerate" : "transfer";
  out["engine"] = engine;
  // (m, v) -> count; v = -1 when not split by vertical dimers
  std::map<std::pair<int, int>, BigInt> cells;
  if (engine == "enumerate") {
    if (by_v) {
      cells = count_by_monomers_and_vdimers(r, c, cfg.max_cells);
    } else {
      for (const auto& [m, n] : count_by_monomers(r, c, cfg.max_cells)) cells[{m, -1}] = n;
    }
  } else if (engine == "transfer") {
    if (h > cfg.max_height)
      throw BudgetExceeded("both dimensions exceed the transfer height budget of " + std::to_string(cfg.max_height));
    SeriesOptions opt{by_v ? SeriesWeights::MonomerAndVDimer : SeriesWeights::Monomer, only_m ? *only_m : -1, -1};
    const SeriesTable t = count_series(h, w, opt);
    const auto& e = t.entries[static_cast<std::size_t>(w)];
    for (std::size_t m = 0; m < e.size(); ++m)
      for (std::size_t v = 0; v < e[m].size(); ++v) {
        if (e[m][v] == 0) continue;
        int vv = by_v ? static_cast<int>(v) : -1;
        // the automaton runs with height min(r,c); transposing swaps dimer orientations
        if (by_v && h != r) vv = (r * c - static_cast<int>(m)) / 2 - vv;
        cells[{static_cast<int>(m), vv}] += e[m][v];
      }
  } else {
    throw std::invalid_argument("unknown engine '" + engine + "'");
  }
  BigInt total = 0;
  json rows = json::array();
  for (const auto& [mv, n] : cells) {
    if (only_m && mv.first != *only_m) continue;
    total += n;
    json row{{"m", mv.first}, {"count", big(n)}};
    if (by_v) row["v"] = mv.second;
    rows.push_back(row);
  }
  out["total"] = big(total);
  if (by_m || by_v) out["by_monomers"] = rows;
  if (only_m) out["only_m"] = *only_m;
  return out;
}

std::string count_text(const json& j) {
  std::ostringstream s;
  if (j.contains("by_monomers")) {
    for (const auto& row : j["by_monomers"]) {
      s << row["m"].get<int>();
      if (row.contains("v")) s << ' ' << row["v"].get<int>();
      s << ' ' << big_text(row["count"]) << '\n';
    }
    s << "total " << big_text(j["total"]) << '\n';
  } else {
    s << big_text(j["total"]) << '\n';
  }
  return s.str();
}

// ---- genfun

json compute_genfun(int r, int seed_terms, const Config& cfg) {
  const RationalGF g = rational_gf(r, {cfg.max_height, seed_terms});
  return {{"r", r},
          {"numerator", poly_json(g.numerator)},
          {"denominator", poly_json(g.denominator)},
          {"validated_terms", g.validated_terms}};
}

IntPolynomial poly_from(const json& a) {
  std::vector<BigInt> c;
  for (const auto& x : a) c.push_back(BigInt(big_text(x)));
  return IntPolynomial(c);
}

std::string genfun_text(const json& j) {
  return "T_" + std::to_string(j["r"].get<int>()) + "(z) = (" + poly_from(j["numerator"]).to_string() + ") / (" +
         poly_from(j["denominator"]).to_string() + ")\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact enumeration, structure and algebra of tatami tilings"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--max-cells", cfg.max_cells, "cell budget for enumeration")->check(CLI::PositiveNumber);
  app.add_option("--max-height", cfg.max_height, "height budget for the transfer engine")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cache-dir", cfg.cache_dir, "directory for cached results");

  int r = 0, c = 0;
  auto* count = app.add_subcommand("count", "count tilings of an r x c grid");
  bool by_m = false, by_v = false;
  std::optional<int> only_m;
  count->add_option("r", r)->required()->check(CLI::NonNegativeNumber);
  count->add_option("c", c)->required()->check(CLI::NonNegativeNumber);
  count->add_flag("--by-monomers", by_m, "split by monomer count");
  count->add_flag("--vdimers", by_v, "split by monomer and vertical dimer count");
  count->add_option("--only-m", only_m, "report only this monomer count");
  count->add_option("--engine", cfg.engine, "auto, enumerate or transfer")->check(CLI::IsMember({"auto", "enumerate", "transfer"}));

  auto* enumerate = app.add_subcommand("enumerate", "list every tiling of an r x c grid");
  std::optional<int> want_m;
  bool canonical = false;
  enumerate->add_option("r", r)->required()->check(CLI::NonNegativeNumber);
  enumerate->add_option("c", c)->required()->check(CLI::NonNegativeNumber);
  enumerate->add_option("--monomers", want_m, "only tilings with this many monomers");
  enumerate->add_flag("--canonical-order", canonical, "sort by text encoding");

  auto* genfun = app.add_subcommand("genfun", "rational generating function in the column count");
  int seed_terms = 0;
  genfun->add_option("r", r)->required()->check(CLI::PositiveNumber);
  genfun->add_option("--seed-terms", seed_terms, "series terms before recurrence fitting");

  auto* tdiagram = app.add_subcommand("tdiagram", "extract and validate the feature diagram of a tiling");
  std::string path;
  bool is_diagram = false;
  tdiagram->add_option("file", path, "tiling text, or a diagram with --diagram ('-' for stdin)")->required();
  tdiagram->add_flag("--diagram", is_diagram, "input is a diagram: validate and render it");

  auto* reconstruct = app.add_subcommand("reconstruct", "rebuild a tiling from its boundary ring");
  reconstruct->add_option("file", path, "boundary ring ('-' for stdin)")->required();

  auto* minmon = app.add_subcommand("minmon", "fewest monomers over tilings of a region");
  minmon->add_option("file", path, "region mask ('-' for stdin)")->required();

  auto* verify = app.add_subcommand("verify", "check theorems and conjectures");
  std::string suite = "all";
  verify->add_option("suite", suite, "theorems, conjectures or all")->check(CLI::IsMember({"theorems", "conjectures", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*count) {
      const std::string key = "count|" + std::to_string(r) + "|" + std::to_string(c) + "|" + std::to_string(by_m) + "|" +
                              std::to_string(by_v) + "|" + (only_m ? std::to_string(*only_m) : "-") + "|" + cfg.engine +
                              "|" + std::to_string(cfg.max_cells) + "|" + std::to_string(cfg.max_height);
      const json j = cached(cfg, key, [&] { return compute_count(r, c, by_m, by_v, only_m, cfg); });
      emit(cfg, j, count_text(j));
    } else if (*enumerate) {
      json arr = json::array();
      std::string text;
      for (const Tiling& t : enumerate_tilings(r, c, {cfg.max_cells, canonical})) {
        if (want_m && t.monomers() != *want_m) continue;
        if (cfg.format == "json") arr.push_back(tiling_json(t));
        else text += encode_text(t) + "\n";
      }
      emit(cfg, arr, text);
    } else if (*genfun) {
      const std::string key = "genfun|" + std::to_string(r) + "|" + std::to_string(seed_terms);
      const json j = cached(cfg, key, [&] { return compute_genfun(r, seed_terms, cfg); });
      emit(cfg, j, genfun_text(j));
    } else if (*tdiagram) {
      const std::string in = read_input(path);
      if (!is_diagram) {
        const Tiling t = decode_text(in);
        if (!tatami_valid(t)) throw Refused("input is not a tatami tiling");
        const FeatureDiagram d = extract_features(t);
        const Validation v = validate_diagram(d);
        json j{{"diagram", encode_diagram(d)}, {"valid", v.valid()}};
        emit(cfg, j, encode_diagram(d) + (v.valid() ? "valid\n" : "invalid\n"));
      } else {
        const FeatureDiagram d = decode_diagram(in);
        const Validation v = validate_diagram(d);
        json viol = json::array();
        std::string text = v.valid() ? "valid\n" : "invalid\n";
        for (const auto& x : v.violations) {
          viol.push_back({{"kind", to_string(x.kind)}, {"first", x.first_feature}, {"second", x.second_feature}});
          text += std::string(to_string(x.kind)) + " " + std::to_string(x.first_feature) + " " +
                  std::to_string(x.second_feature) + "\n";
        }
        json tilings = json::array();
        const auto rendered = render(d, cfg.max_cells);
        for (const Tiling& t : rendered) {
          tilings.push_back(tiling_json(t));
          text += "\n" + encode_text(t);
        }
        emit(cfg, {{"valid", v.valid()}, {"violations", viol}, {"tilings", tilings}}, text);
        if (rendered.empty()) return kRefused;
      }
    } else if (*reconstruct) {
      const BoundaryLabels b = decode_boundary(read_input(path));
      const Tiling t = reconstruct_from_boundary(b, cfg.max_cells);
      emit(cfg, tiling_json(t), encode_text(t));
    } else if (*minmon) {
      const CellRegion region = parse_region(read_input(path));
      const MinMonomerResult res = min_monomers(region, cfg.max_cells);
      json j = tiling_json(res.witness);
      j["m_star"] = res.m_star;
      j["nodes_explored"] = big(res.nodes_explored);
      emit(cfg, j, std::to_string(res.m_star) + "\n" + encode_text(res.witness));
    } else if (*verify) {
      const VerifyReport rep = run_suite(suite, {cfg.max_cells, cfg.max_height});
      std::string text;
      for (const auto& cl : rep.claims)
        text += cl.id + " " + to_string(cl.kind) + " " + to_string(cl.status) + "\n";
      text += rep.ok() ? "ok\n" : "refuted\n";
      emit(cfg, to_json(rep), text);
      if (!rep.ok()) return kRefused;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const NotRealizable& e) {
    std::cerr << "not realizable: " << e.what() << '\n';
    return kRefused;
  } catch (const InvariantFailure& e) {
    std::cerr << "internal invariant failure: " << e.what() << '\n';
    return kRefused;
  } catch (const Refused& e) {
    std::cerr << e.what() << '\n';
    return kRefused;
  } catch (const StructuralError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}
