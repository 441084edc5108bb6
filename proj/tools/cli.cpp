#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "qk/covering.hpp"
#include "qk/errors.hpp"
#include "qk/io.hpp"
#include "qk/knot.hpp"
#include "qk/pi1.hpp"

namespace qk::cli {
namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

// Thrown for argument values CLI11 cannot vet on its own.
struct UsageError : Error {
  using Error::Error;
};

struct Config {
  bool json = false;
  std::string out_path;
  std::string exec = "auto";

  std::string table;
  std::string coeff;
  std::string group;
  std::string matrix;
  std::string total, base, map;
  bool connected = false;
  std::string cocycle;
  std::string gauss, gauss_file;
  bool mirrored = false;
  bool list = false;
  std::int64_t base_point = 0;

  std::size_t closure_cap = kDefaultClosureCap;
  std::uint64_t subgroup_cap = kDefaultSubgroupCap;
  std::uint64_t node_budget = H2cOptions{}.node_budget;
  std::uint64_t max_conjugator_order = H2cOptions{}.max_conjugator_order;
};

Exec exec_of(const Config& c) {
  if (c.exec == "serial") return Exec::Serial;
  if (c.exec == "parallel") return Exec::Parallel;
  return Exec::Auto;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::vector<std::int64_t> parse_integers(std::string_view text) {
  std::vector<std::int64_t> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || end != token.data() + token.size()) throw UsageError("not an integer: " + token);
    out.push_back(v);
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\n') {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  return out;
}

// Rows separated by ';'.
std::vector<std::vector<std::int64_t>> parse_matrix(std::string_view text) {
  std::vector<std::vector<std::int64_t>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto stop = std::min(text.find(';', start), text.size());
    auto row = parse_integers(text.substr(start, stop - start));
    if (row.empty()) throw UsageError("empty matrix row");
    rows.push_back(std::move(row));
    start = stop + 1;
  }
  return rows;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

std::string invariant_string(const std::vector<std::int64_t>& inv) {
  if (inv.empty()) return "trivial";
  std::vector<std::string> parts;
  for (auto d : inv) parts.push_back("Z" + std::to_string(d));
  return join(parts, " x ");
}

// Histogram "length x count" of block sizes.
std::map<std::size_t, std::size_t> length_counts(const OrbitPartition& p) {
  std::map<std::size_t, std::size_t> counts;
  for (const auto& b : p.blocks) ++counts[b.size()];
  return counts;
}

std::string counts_string(const std::map<std::size_t, std::size_t>& counts) {
  std::vector<std::string> parts;
  for (const auto& [len, count] : counts) parts.push_back(std::to_string(count) + "x" + std::to_string(len));
  return join(parts, " ");
}

Json counts_json(const std::map<std::size_t, std::size_t>& counts) {
  Json j = Json::object();
  for (const auto& [len, count] : counts) j[std::to_string(len)] = count;
  return j;
}

std::string pair_string(Pair p) { return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")"; }

struct Report {
  std::ostringstream text;
  Json json = Json::object();
  int code = kOk;
};

void cmd_check(const Config& c, Report& r) {
  r.json["table"] = c.table;
  std::optional<Quandle> loaded;
  try {
    loaded = load_table(c.table, exec_of(c));
  } catch (const QuandleAxiomError& e) {
    r.text << "table: " << c.table << "\nquandle: no (" << e.what() << ")\n";
    r.json["quandle"] = false;
    r.json["reason"] = e.what();
    r.code = kNegative;
    return;
  }
  const Quandle& q = *loaded;
  const bool latin = q.is_latin();
  const bool connected = is_connected(q);
  const bool two = connected && is_doubly_transitive(q);
  // 0 stands for not semiregular.
  const std::size_t semi = latin ? semiregular_length(q).value_or(0) : 0;
  const auto lmlt_order = lmlt(q, c.closure_cap).order();

  std::vector<std::string> flags;
  flags.push_back(latin ? "latin" : "not latin");
  flags.push_back(connected ? "connected" : "not connected");
  if (two) flags.push_back("2-transitive");
  const std::string summary = join(flags, " ") + ", |LMlt|=" + std::to_string(lmlt_order);

  r.text << "table: " << c.table << "\n"
         << "size: " << q.size() << "\n"
         << "quandle: yes\n"
         << "latin: " << yes_no(latin) << "\n"
         << "connected: " << yes_no(connected) << "\n"
         << "doubly transitive: " << yes_no(two) << "\n"
         << "semiregular: " << yes_no(semi != 0);
  if (semi) r.text << " (orbit length " << semi << ")";
  r.text << "\n|LMlt|: " << lmlt_order << "\n" << summary << "\n";

  r.json["size"] = q.size();
  r.json["quandle"] = true;
  r.json["latin"] = latin;
  r.json["connected"] = connected;
  r.json["doubly_transitive"] = two;
  r.json["semiregular"] = semi ? Json(semi) : Json(nullptr);
  r.json["lmlt_order"] = lmlt_order;
  r.json["summary"] = summary;
}

GroupPtr load_coeff(const std::string& d) { return std::make_shared<const FiniteGroup>(parse_coeff(d)); }

Elem checked_base_point(const Config& c, const Quandle& q) {
  if (c.base_point < 0 || static_cast<std::uint64_t>(c.base_point) >= q.size()) {
    throw UsageError("base point " + std::to_string(c.base_point) + " out of range for size " +
                     std::to_string(q.size()));
  }
  return static_cast<Elem>(c.base_point);
}

void cmd_h2c(const Config& c, Report& r) {
  auto q = std::make_shared<const Quandle>(load_table(c.table, exec_of(c)));
  auto g = load_coeff(c.coeff);
  H2cOptions opt;
  opt.base_point = checked_base_point(c, *q);
  opt.node_budget = c.node_budget;
  opt.max_conjugator_order = c.max_conjugator_order;
  opt.exec = exec_of(c);
  const auto res = h2c(q, g, opt);

  r.text << "table: " << c.table << "\n"
         << "coefficients: " << g->descriptor() << " (order " << g->order() << ")\n"
         << "base point: " << opt.base_point << "\n"
         << "normalized cocycles: " << res.normalized.size() << "\n"
         << "classes: " << res.class_count() << "\n";
  r.json["table"] = c.table;
  r.json["coeff"] = g->descriptor();
  r.json["base_point"] = opt.base_point;
  r.json["normalized"] = res.normalized.size();
  r.json["classes"] = res.class_count();
  Json reps = Json::array();
  for (std::size_t i = 0; i < res.class_count(); ++i) {
    const std::string line = format_cocycle(res.representatives[i], c.table);
    r.text << "class " << i + 1 << " (" << res.class_sizes[i] << " normalized): " << line;
    reps.push_back({{"size", res.class_sizes[i]}, {"cocycle", Json::parse(line)}});
  }
  r.json["representatives"] = std::move(reps);
}

void cmd_pi1(const Config& c, Report& r) {
  const FinAbGroup g = parse_ab_group(c.group);
  auto rows = parse_matrix(c.matrix);
  const AbHom alpha(g, g, std::move(rows));
  if (!affine_is_connected(g, alpha)) {
    throw NotConnected("1 - alpha is not surjective on " + to_string(g) + ", so the quandle is not connected");
  }
  const auto d = s_group(g, alpha, c.subgroup_cap);
  std::vector<std::string> relators;
  for (const auto& t : d.relators) relators.push_back(to_string(t));

  r.text << "group: " << to_string(g) << "\n"
         << "matrix: " << to_string(alpha) << "\n"
         << "pi1: " << invariant_string(d.invariants) << "\n"
         << "|G(x)G|: " << d.tensor.group().order() << "\n"
         << "|I|: " << d.ideal.order() << "\n"
         << "simply connected: " << yes_no(d.invariants.empty()) << "\n"
         << "relators: " << (relators.empty() ? "none" : join(relators, " ")) << "\n";
  r.json["group"] = to_string(g);
  r.json["pi1"] = d.invariants;
  r.json["tensor_order"] = d.tensor.group().order();
  r.json["ideal_order"] = d.ideal.order();
  r.json["simply_connected"] = d.invariants.empty();
  r.json["relators"] = relators;
}

void cmd_cover_verify(const Config& c, Report& r) {
  const Quandle y = load_table(c.total, exec_of(c));
  const Quandle x = load_table(c.base, exec_of(c));
  std::vector<Elem> map;
  for (auto v : parse_integers(c.map)) {
    if (v < 0 || static_cast<std::uint64_t>(v) >= x.size()) throw UsageError("map value out of range: " + std::to_string(v));
    map.push_back(static_cast<Elem>(v));
  }
  if (map.size() != y.size()) {
    throw UsageError("map needs " + std::to_string(y.size()) + " entries, got " + std::to_string(map.size()));
  }
  const bool covering =
      is_covering(y, x, map, c.connected ? ConnectivityCheck::Required : ConnectivityCheck::NotRequired);
  std::vector<std::size_t> fibers(x.size());
  for (Elem v : map) ++fibers[v];
  const bool uniform = std::all_of(fibers.begin(), fibers.end(), [&](std::size_t s) { return s == fibers[0]; });

  r.text << "total: " << c.total << " (size " << y.size() << ")\n"
         << "base: " << c.base << " (size " << x.size() << ")\n"
         << "homomorphism: yes\nsurjective: yes\n"
         << "uniform fibers: " << yes_no(uniform);
  if (uniform) r.text << " (size " << fibers[0] << ")";
  r.text << "\ncovering: " << yes_no(covering) << "\n";
  r.json["total"] = c.total;
  r.json["base"] = c.base;
  r.json["uniform_fibers"] = uniform;
  r.json["covering"] = covering;
  if (!covering) r.code = kNegative;
}

KnotDiagram load_knot(const Config& c) {
  if (!c.gauss_file.empty()) return parse_gauss(read_file(c.gauss_file));
  return parse_gauss(c.gauss);
}

CrossingConvention convention(const Config& c) {
  return c.mirrored ? CrossingConvention::Mirrored : CrossingConvention::Standard;
}

void cmd_knot_colorings(const Config& c, Report& r) {
  const Quandle q = load_table(c.table, exec_of(c));
  const KnotDiagram k = load_knot(c);
  const auto cols = colorings(k, q, convention(c));
  const auto nontrivial = col_count(k, q, convention(c));
  r.text << "quandle: " << c.table << "\n"
         << "arcs: " << k.arcs << "\ncrossings: " << k.crossing_count() << "\n"
         << "colorings: " << cols.size() << "\n"
         << "col: " << nontrivial << "\n";
  r.json["quandle"] = c.table;
  r.json["colorings"] = cols.size();
  r.json["col"] = nontrivial;
  if (c.list) {
    Json all = Json::array();
    for (const auto& col : cols) {
      std::vector<std::string> parts;
      for (Elem e : col) parts.push_back(std::to_string(e));
      r.text << join(parts, " ") << "\n";
      all.push_back(col);
    }
    r.json["list"] = std::move(all);
  }
}

void cmd_knot_invariant(const Config& c, Report& r) {
  const CocycleFile file = parse_cocycle_file(read_file(c.cocycle));
  // Without --quandle the reference inside the cocycle file is used, first relative to
  // that file and then to the working directory.
  std::string table = c.table;
  if (table.empty()) {
    const fs::path ref(file.quandle);
    const fs::path beside = fs::path(c.cocycle).parent_path() / ref;
    table = (ref.is_relative() && fs::exists(beside)) ? beside.string() : ref.string();
  }
  auto q = std::make_shared<const Quandle>(load_table(table, exec_of(c)));
  auto g = load_coeff(c.coeff.empty() ? file.coeff : c.coeff);
  const ConstantCocycle b = to_cocycle(file, q, g, exec_of(c));
  const KnotDiagram k = load_knot(c);
  const auto classes = cocycle_invariant(k, b, convention(c));
  const auto labels = class_labels(*g, classes);
  const auto nontrivial = col_count(k, *q, convention(c));

  r.text << "quandle: " << table << "\n"
         << "coefficients: " << g->descriptor() << "\n"
         << "colorings: " << classes.size() << "\n"
         << "col: " << nontrivial << "\n"
         << "invariant: [" << join(labels, ", ") << "]\n";
  r.json["quandle"] = table;
  r.json["coeff"] = g->descriptor();
  r.json["colorings"] = classes.size();
  r.json["col"] = nontrivial;
  r.json["invariant"] = labels;
}

void cmd_orbits(const Config& c, Report& r) {
  auto q = std::make_shared<const Quandle>(load_table(c.table, exec_of(c)));
  if (!q->is_latin()) throw NotLatin("orbit maps need a latin quandle");
  const PairMaps m(q, checked_base_point(c, *q));
  const auto f = full_partition(m, kMapF);
  const auto g = full_partition(m, kMapG);
  const auto h = full_partition(m, kMapH);
  const auto s = g_orbit_structure(m);

  std::vector<std::string> fixed;
  std::set<std::size_t> moving;
  for (const auto& b : f.blocks) {
    if (b.size() == 1) {
      fixed.push_back(pair_string(b[0]));
    } else {
      moving.insert(b.size());
    }
  }
  auto block_list = [&](const std::vector<std::uint32_t>& ids) {
    std::vector<std::string> parts;
    for (auto id : ids) parts.push_back(pair_string(s.g_orbits.blocks[id].front()));
    return parts;
  };
  const auto u_family = block_list(s.u_family);
  const auto f_family = block_list(s.f_family);

  r.text << "table: " << c.table << "\n"
         << "base point: " << m.base_point() << "\n"
         << "f orbits: " << f.size() << " [" << counts_string(length_counts(f)) << "]\n"
         << "g orbits: " << g.size() << " [" << counts_string(length_counts(g)) << "]\n"
         << "h orbits: " << h.size() << " [" << counts_string(length_counts(h)) << "]\n"
         << "f fixed points: " << join(fixed, " ") << "\n"
         << "non-fixed f-orbit length: ";
  if (moving.size() == 1) {
    r.text << *moving.begin() << " (uniform)\n";
  } else {
    std::vector<std::string> parts;
    for (auto len : moving) parts.push_back(std::to_string(len));
    r.text << join(parts, " ") << "\n";
  }
  r.text << "g-orbit family through (x, x\\u): " << join(u_family, " ") << "\n"
         << "g-orbit family through (x, xu): " << join(f_family, " ") << "\n";

  r.json["table"] = c.table;
  r.json["base_point"] = m.base_point();
  r.json["f"] = counts_json(length_counts(f));
  r.json["g"] = counts_json(length_counts(g));
  r.json["h"] = counts_json(length_counts(h));
  r.json["f_fixed"] = fixed;
  r.json["f_moving_lengths"] = std::vector<std::size_t>(moving.begin(), moving.end());
  r.json["u_family"] = u_family;
  r.json["f_family"] = f_family;
}

int code_of(const Error& e) {
  if (dynamic_cast<const BudgetExceeded*>(&e)) return kBudget;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const UsageError*>(&e) ||
      dynamic_cast<const InvalidElement*>(&e) || dynamic_cast<const InvalidHomomorphism*>(&e) ||
      dynamic_cast<const DegreeMismatch*>(&e) || dynamic_cast<const InvalidGroup*>(&e)) {
    return kUsage;
  }
  return kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Finite quandle toolkit: cocycles, fundamental groups, coverings, knot invariants", "qk"};
  app.require_subcommand(1);
  app.add_flag("--json", c.json, "Machine-readable output");
  app.add_option("-o,--out", c.out_path, "Write the report to this file");
  app.add_option("--exec", c.exec, "Kernel execution: auto, serial or parallel")
      ->check(CLI::IsMember({"auto", "serial", "parallel"}));

  auto* check = app.add_subcommand("check", "Quandle axioms and structural flags of a table");
  check->add_option("table", c.table, "Table file")->required();
  check->add_option("--closure-cap", c.closure_cap, "Cap on the LMlt closure")->check(CLI::PositiveNumber);

  auto* h2c_cmd = app.add_subcommand("h2c", "Constant cohomology classes with coefficients in a group");
  h2c_cmd->add_option("table", c.table, "Latin table file")->required();
  h2c_cmd->add_option("--coeff", c.coeff, "Coefficient group: Sym<m>, Z<n> x ..., or table:<file>")->required();
  h2c_cmd->add_option("--base-point", c.base_point, "Normalization point");
  h2c_cmd->add_option("--budget", c.node_budget, "Search node budget")->check(CLI::PositiveNumber);
  h2c_cmd->add_option("--max-conjugator-order", c.max_conjugator_order, "Largest group searched for conjugators")
      ->check(CLI::PositiveNumber);

  auto* pi1 = app.add_subcommand("pi1", "Fundamental group of an affine quandle");
  pi1->add_option("--group", c.group, "Abelian group, e.g. \"Z2 x Z2\"")->required();
  pi1->add_option("--matrix", c.matrix, "Automorphism matrix, rows separated by ';'")->required();
  pi1->add_option("--subgroup-cap", c.subgroup_cap, "Cap on subgroup enumeration")->check(CLI::PositiveNumber);

  auto* cover = app.add_subcommand("cover", "Covering checks");
  cover->require_subcommand(1);
  auto* verify = cover->add_subcommand("verify", "Check that an explicit map is a covering");
  verify->add_option("--total", c.total, "Covering table file")->required();
  verify->add_option("--base", c.base, "Base table file")->required();
  verify->add_option("--map", c.map, "Image of each element, comma or space separated")->required();
  verify->add_flag("--connected", c.connected, "Also require the covering quandle to be connected");

  auto* knot = app.add_subcommand("knot", "Knot colorings and cocycle invariants");
  knot->require_subcommand(1);
  auto add_gauss = [&](CLI::App* sub) {
    auto* code = sub->add_option("--gauss", c.gauss, "Signed Gauss code, or \"unknot\"");
    auto* file = sub->add_option("--gauss-file", c.gauss_file, "File holding a Gauss code")->check(CLI::ExistingFile);
    code->excludes(file);
    sub->add_flag("--mirrored", c.mirrored, "Use the mirrored crossing convention");
  };
  auto* cols = knot->add_subcommand("colorings", "Count colorings of a diagram");
  cols->add_option("--quandle", c.table, "Table file")->required();
  cols->add_flag("--list", c.list, "Print every coloring");
  add_gauss(cols);
  auto* inv = knot->add_subcommand("invariant", "Cocycle invariant as sorted conjugacy class labels");
  inv->add_option("--quandle", c.table, "Table file (default: the reference in the cocycle file)");
  inv->add_option("--coeff", c.coeff, "Coefficient group (default: the one in the cocycle file)");
  inv->add_option("--cocycle", c.cocycle, "Cocycle JSON file")->required()->check(CLI::ExistingFile);
  add_gauss(inv);

  auto* orbits = app.add_subcommand("orbits", "Orbits of the pair maps f, g, h");
  orbits->add_option("table", c.table, "Latin table file")->required();
  orbits->add_option("--base-point", c.base_point, "Base point u");

  // Global flags may follow the subcommand.
  for (auto* sub : {check, h2c_cmd, pi1, cover, verify, knot, cols, inv, orbits}) sub->fallthrough();

  std::vector<const char*> argv{"qk"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if ((*cols || *inv) && c.gauss.empty() && c.gauss_file.empty()) {
    err << "knot: one of --gauss or --gauss-file is required\n";
    return kUsage;
  }

  Report r;
  try {
    if (*check) cmd_check(c, r);
    if (*h2c_cmd) cmd_h2c(c, r);
    if (*pi1) cmd_pi1(c, r);
    if (*verify) cmd_cover_verify(c, r);
    if (*cols) cmd_knot_colorings(c, r);
    if (*inv) cmd_knot_invariant(c, r);
    if (*orbits) cmd_orbits(c, r);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return code_of(e);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  const std::string body = c.json ? r.json.dump(2) + "\n" : r.text.str();
  if (c.out_path.empty()) {
    out << body;
  } else {
    std::ofstream file(c.out_path);
    if (!(file << body)) {
      err << "error: cannot write " << c.out_path << "\n";
      return kUsage;
    }
  }
  return r.code;
}

}  // namespace qk::cli
