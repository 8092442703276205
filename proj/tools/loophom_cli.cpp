// loophom: batch front end over the loophom library.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "loophom/loophom.hpp"

using namespace loophom;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kInconclusive = 3 };

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<Table> tables;

  void set(const std::string& k, const std::string& v) { meta.emplace_back(k, v); }
  Table& table(std::string name, std::vector<std::string> columns) {
    tables.push_back(Table{std::move(name), std::move(columns), {}});
    return tables.back();
  }

  std::string tsv() const {
    std::ostringstream os;
    for (const auto& [k, v] : meta) os << "# " << k << '\t' << v << '\n';
    for (const auto& t : tables) {
      os << "## " << t.name << '\n';
      for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "\t" : "") << t.columns[i];
      os << '\n';
      for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "\t" : "") << r[i];
        os << '\n';
      }
    }
    return os.str();
  }

  std::string json() const {
    nlohmann::ordered_json doc;
    doc["meta"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta) doc["meta"][k] = v;
    doc["tables"] = nlohmann::ordered_json::object();
    for (const auto& t : tables) {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& r : t.rows) {
        nlohmann::ordered_json row;
        for (std::size_t i = 0; i < t.columns.size(); ++i) row[t.columns[i]] = r[i];
        arr.push_back(std::move(row));
      }
      doc["tables"][t.name] = std::move(arr);
    }
    return doc.dump(2) + "\n";
  }
};

struct Config {
  std::string model;
  std::string file;
  std::optional<int> min_degree, max_degree, cutoff, p;
  std::string format = "tsv";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

DGA resolve(const Config& c) {
  if (!c.model.empty() && !c.file.empty()) throw UsageError("give either --model or an input file, not both");
  if (!c.model.empty()) return builtin_model(c.model);
  if (!c.file.empty()) return load_dga(c.file);
  throw UsageError("no input: give --model ID or an algebra file");
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string format_coords(const SparseVector& v, int degree) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [i, q] : v) {
    if (!s.empty()) s += " ";
    s += (q < 0 ? "-" : "+");
    Rational m = abs(q);
    if (m != 1) s += format_rational(m) + "*";
    s += class_name(HomologyClassId{degree, i});
  }
  return s;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "" : ",") + n;
  return s;
}

// Smallest weight cutoff making every slice up to `pmax` complete, or a fixed
// fallback when degree-1 letters make that impossible.
int auto_cutoff(const DGA& a, int pmax, bool& exhaustible) {
  exhaustible = true;
  if (a.letters().empty() || pmax < 0) return 0;
  const int s = a.min_suspended_degree();
  if (s <= 0) {
    exhaustible = false;
    return 4;
  }
  return std::max(0, pmax / s);
}

void require_range(const Config& c) {
  if (c.min_degree && c.max_degree && *c.min_degree > *c.max_degree)
    throw UsageError("degenerate range: --min " + std::to_string(*c.min_degree) + " > --max " +
                     std::to_string(*c.max_degree));
  if (c.cutoff && *c.cutoff < 0) throw UsageError("--cutoff must be >= 0");
  if (c.p && *c.p < 0) throw UsageError("--p must be >= 0");
}

bool ensure_valid(const DGA& a, Report& r) {
  auto v = validate_dga(a);
  if (v.passed) return true;
  r.set("error", "model fails validation; run `loophom validate` for the violation list");
  return false;
}

int cmd_validate(const Config& c, Report& r) {
  DGA a = resolve(c);
  auto v = validate_dga(a);
  r.set("model", a.name());
  r.set("passed", yes_no(v.passed));
  auto& t = r.table("violations", {"rule", "witness", "discrepancy"});
  for (const auto& x : v.violations) t.rows.push_back({x.rule, join_names(x.witness), x.discrepancy});
  auto& w = r.table("warnings", {"message"});
  for (const auto& x : v.warnings) w.rows.push_back({x});
  return v.passed ? kOk : kFailure;
}

int cmd_loop_homology(const Config& c, Report& r) {
  require_range(c);
  DGA a = resolve(c);
  r.set("model", a.name());
  if (!ensure_valid(a, r)) return kFailure;
  const int lo = c.min_degree.value_or(-a.top_degree());
  const int hi = c.max_degree.value_or(lo + 8);
  if (lo > hi) throw UsageError("degenerate range: --min > --max");
  bool exhaustible = true;
  const int cutoff = c.cutoff ? *c.cutoff : auto_cutoff(a, hi + 1 + a.basis().max_degree(), exhaustible);
  auto lh = loop_homology(a, lo, hi, cutoff);
  r.set("weight_cutoff", std::to_string(cutoff));
  r.set("exact", yes_no(lh.exact));
  r.set("identity", lh.identity ? class_name(*lh.identity) : "none");
  auto& b = r.table("betti", {"degree", "betti", "exact"});
  for (const auto& d : lh.degrees) b.rows.push_back({std::to_string(d.degree), std::to_string(d.betti), yes_no(d.exact)});
  auto& p = r.table("products", {"left", "right", "product"});
  for (const auto& [key, coords] : lh.products)
    p.rows.push_back({class_name(key.first), class_name(key.second), format_coords(coords, key.first.degree + key.second.degree)});
  return lh.exact ? kOk : kInconclusive;
}

int cmd_bracket(const Config& c, Report& r) {
  require_range(c);
  DGA a = resolve(c);
  r.set("model", a.name());
  if (!ensure_valid(a, r)) return kFailure;
  const int p = c.p.value_or(2);
  if (p < 1) throw UsageError("--p must be >= 1 for the bracket");
  find_symplectic_basis(a);  // throws StructureError with a readable message
  BracketEngine engine(a, p);
  H0Space source(a, p);
  r.set("filtration", std::to_string(p));
  r.set("source_dim", std::to_string(source.dim()));
  r.set("target_dim", std::to_string(engine.target().dim()));
  auto& t = r.table("bracket", {"left", "right", "filtration", "bracket"});
  std::vector<std::vector<SparseVector>> table(static_cast<std::size_t>(source.dim()));
  for (int i = 0; i < source.dim(); ++i)
    for (int j = 0; j < source.dim(); ++j) {
      auto v = engine.bracket_coordinates(source.representative(i), source.representative(j));
      t.rows.push_back({class_name({0, i}), class_name({0, j}), std::to_string(p - 1), format_coords(v, 0)});
      table[static_cast<std::size_t>(i)].push_back(std::move(v));
    }
  bool antisymmetric = true;
  for (int i = 0; i < source.dim(); ++i)
    for (int j = 0; j < source.dim(); ++j)
      if (add_scaled(table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                     table[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)], 1)
              .size())
        antisymmetric = false;
  r.set("antisymmetric", yes_no(antisymmetric));
  bool ok = antisymmetric;
  if (a.name() == "torus(2)") {
    // Goldman oracle on lattice classes with coordinates in [-1, 1].
    auto& g = r.table("goldman", {"u", "v", "agree"});
    bool all = true;
    for (int u1 = -1; u1 <= 1; ++u1)
      for (int u2 = -1; u2 <= 1; ++u2)
        for (int v1 = -1; v1 <= 1; ++v1)
          for (int v2 = -1; v2 <= 1; ++v2) {
            auto x = holonomy_class(a, GroupRingElement::monomial({u1, u2}), p);
            auto y = holonomy_class(a, GroupRingElement::monomial({v1, v2}), p);
            auto expected = holonomy_class(a, goldman_torus({u1, u2}, {v1, v2}), p - 1);
            DualCochain diff = engine.bracket(x, y);
            diff.values = add_scaled(diff.values, expected.values, -1);
            bool agree = engine.target().is_zero(diff);
            all = all && agree;
            g.rows.push_back({"(" + std::to_string(u1) + "," + std::to_string(u2) + ")",
                              "(" + std::to_string(v1) + "," + std::to_string(v2) + ")", yes_no(agree)});
          }
    r.set("goldman_agree", yes_no(all));
    ok = ok && all;
  }
  return ok ? kOk : kFailure;
}

int cmd_pi1_compare(const Config& c, Report& r) {
  require_range(c);
  if (!c.file.empty() || (!c.model.empty() && c.model != "torus:2"))
    throw UsageError("pi1-compare runs on the builtin torus:2 model only");
  const int bound = c.p.value_or(5);
  if (bound < 1) throw UsageError("--p must be >= 1");
  r.set("model", "torus(2)");
  auto& t = r.table("pi1", {"p", "weight_cutoff", "group_ring_dim", "h0_dim", "match"});
  bool all = true;
  for (int p = 1; p <= bound; ++p) {
    auto cmp = compare_pi1_dimensions(p, c.cutoff);
    all = all && cmp.match;
    t.rows.push_back({std::to_string(p), std::to_string(cmp.weight_cutoff), std::to_string(cmp.group_ring_dimension),
                      std::to_string(cmp.h0_dimension), yes_no(cmp.match)});
  }
  r.set("all_match", yes_no(all));
  return all ? kOk : kFailure;
}

int cmd_bar_betti(const Config& c, Report& r) {
  require_range(c);
  DGA a = resolve(c);
  r.set("model", a.name());
  if (!ensure_valid(a, r)) return kFailure;
  const int lo = c.min_degree.value_or(0);
  const int hi = c.max_degree.value_or(lo + 6);
  if (lo > hi) throw UsageError("degenerate range: --min > --max");
  bool exhaustible = true;
  const int cutoff = c.cutoff ? *c.cutoff : auto_cutoff(a, hi + 1, exhaustible);
  r.set("weight_cutoff", std::to_string(cutoff));
  auto& t = r.table("bar_betti", {"degree", "betti", "exact"});
  bool exact = true;
  for (const auto& h : bar_homology(a, lo, hi, cutoff)) {
    exact = exact && h.exact;
    t.rows.push_back({std::to_string(h.degree), std::to_string(h.betti), yes_no(h.exact)});
  }
  r.set("exact", yes_no(exact));
  if (!exact) r.set("note", "weight-truncated: raise --cutoff or accept as a lower-filtration approximation");
  return exact ? kOk : kInconclusive;
}

int cmd_bar_dump(const Config& c, Report& r) {
  require_range(c);
  DGA a = resolve(c);
  r.set("model", a.name());
  const int lo = c.min_degree.value_or(0);
  const int hi = c.max_degree.value_or(lo + 3);
  if (lo > hi) throw UsageError("degenerate range: --min > --max");
  const int cutoff = c.cutoff.value_or(3);
  r.set("weight_cutoff", std::to_string(cutoff));
  auto& t = r.table("bar_words", {"word", "degree", "weight", "d_B"});
  for (const auto& s : bar_basis(a, lo, hi, cutoff))
    for (const auto& w : s.basis)
      t.rows.push_back({format_word(a, w), std::to_string(s.degree), std::to_string(w.size()),
                        format_chain(a, bar_d(a, w))});
  return kOk;
}

const char* kFooter = R"(Inputs: --model ID (sphere:N, cp:N, surface:G, torus:K, acyclic:ID) or an
AlgebraSpec JSON file; giving both is a usage error.

Reports are TSV by default: '# key<TAB>value' header lines, then one section
per table introduced by '## name' and a column header row.
  validate       violations: rule, witness, discrepancy | warnings: message
  loop-homology  betti: degree, betti, exact | products: left, right, product
  bracket        bracket: left, right, filtration, bracket | goldman (torus:2): u, v, agree
  pi1-compare    pi1: p, weight_cutoff, group_ring_dim, h0_dim, match
  bar-betti      bar_betti: degree, betti, exact
  bar-dump       bar_words: word, degree, weight, d_B
Classes are written [degree:index]. --format json emits the same tables with
the column names as keys.

Exit codes: 0 ok, 1 validation or computation failure, 2 usage,
3 inconclusive (weight truncation too small).)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loop homology, bar complexes and string brackets of finite DGA models"};
  app.footer(kFooter);
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub, bool ranges, bool filtration) {
    sub->add_option("--model", cfg.model, "builtin model id, e.g. sphere:3");
    sub->add_option("file", cfg.file, "AlgebraSpec JSON file");
    sub->add_option("--format", cfg.format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
    if (ranges) {
      sub->add_option("--min", cfg.min_degree, "lowest degree");
      sub->add_option("--max", cfg.max_degree, "highest degree");
      sub->add_option("--cutoff", cfg.cutoff, "bar-word weight cutoff (default: smallest exact one)");
    }
    if (filtration) sub->add_option("--p", cfg.p, "filtration level");
  };

  std::vector<std::pair<CLI::App*, int (*)(const Config&, Report&)>> commands;
  auto reg = [&](const char* name, const char* help, bool ranges, bool filtration, int (*fn)(const Config&, Report&)) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, ranges, filtration);
    commands.emplace_back(sub, fn);
    return sub;
  };
  reg("validate", "check the DGA axioms", false, false, cmd_validate);
  reg("loop-homology", "Betti table and cup-product ring of Hom(B(A), A)", true, false, cmd_loop_homology);
  reg("bracket", "string bracket table on H_0 at filtration --p", false, true, cmd_bracket);
  auto* pi1 = reg("pi1-compare", "group-ring truncations against H_0 for the torus, p = 1..--p", false, true,
                  cmd_pi1_compare);
  pi1->add_option("--cutoff", cfg.cutoff, "weight cutoff to use (must be >= p - 1)");
  reg("bar-betti", "Betti numbers of the truncated bar complex", true, false, cmd_bar_betti);
  reg("bar-dump", "list bar words with their differentials", true, false, cmd_bar_dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  Report report;
  int code = kOk;
  for (auto& [sub, fn] : commands) {
    if (!sub->parsed()) continue;
    report.set("command", sub->get_name());
    try {
      code = fn(cfg, report);
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return kUsage;
    } catch (const TruncationError& e) {
      std::cerr << "inconclusive: " << e.what() << "\n";
      return kInconclusive;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kFailure;
    }
  }
  std::cout << (cfg.format == "json" ? report.json() : report.tsv()) << std::flush;
  return code;
}
