#include "qk/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qk/errors.hpp"

namespace qk {

namespace {

std::vector<std::uint64_t> read_numbers(std::string_view text) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
    } else {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
      if (ec != std::errc{} || ptr == text.data() + i) {
        throw ParseError("unexpected character '" + std::string(1, c) + "' in table");
      }
      out.push_back(v);
      i = static_cast<std::size_t>(ptr - text.data());
    }
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> read_square(std::string_view text) {
  const auto nums = read_numbers(text);
  if (nums.empty()) throw ParseError("empty table");
  const std::uint64_t n = nums[0];
  if (n == 0 || n > 4096) throw ParseError("table size must be between 1 and 4096");
  if (nums.size() != 1 + n * n) {
    throw ParseError("table of size " + std::to_string(n) + " needs " + std::to_string(n * n) + " entries, got " +
                     std::to_string(nums.size() - 1));
  }
  std::vector<std::vector<std::uint32_t>> rows(n, std::vector<std::uint32_t>(n));
  for (std::uint64_t x = 0; x < n; ++x) {
    for (std::uint64_t y = 0; y < n; ++y) {
      const auto v = nums[1 + x * n + y];
      if (v >= n) throw ParseError("entry " + std::to_string(v) + " out of range in row " + std::to_string(x));
      rows[x][y] = static_cast<std::uint32_t>(v);
    }
  }
  return rows;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Quandle parse_table(std::string_view text, Exec exec) { return Quandle::from_table(read_square(text), exec); }

std::string format_table(const Quandle& q) {
  std::ostringstream out;
  const std::size_t n = q.size();
  out << n << '\n';
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) out << (y ? " " : "") << q.op(x, y);
    out << '\n';
  }
  return out.str();
}

Quandle load_table(const std::filesystem::path& path, Exec exec) {
  const std::string text = read_file(path);
  try {
    return parse_table(text, exec);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_table(const std::filesystem::path& path, const Quandle& q) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << format_table(q);
}

std::vector<LoadedTable> load_table_directory(const std::filesystem::path& dir, Exec exec) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".tbl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<LoadedTable> out;
  for (const auto& f : files) out.push_back({f, load_table(f, exec)});
  return out;
}

FiniteGroup parse_coeff(std::string_view descriptor) {
  std::string d(descriptor);
  if (d.rfind("table:", 0) == 0) {
    auto rows = read_square(read_file(d.substr(6)));
    return FiniteGroup::from_table(std::move(rows), {}, d);
  }
  std::string compact;
  for (char c : d) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  for (std::string_view prefix : {"Sym", "S"}) {
    if (compact.rfind(prefix, 0) == 0 && compact.size() > prefix.size()) {
      std::size_t m = 0;
      const char* first = compact.data() + prefix.size();
      const char* last = compact.data() + compact.size();
      auto [ptr, ec] = std::from_chars(first, last, m);
      if (ec != std::errc{} || ptr != last || m == 0) throw ParseError("bad symmetric group descriptor: " + d);
      return FiniteGroup::symmetric(m);
    }
  }
  return FiniteGroup::abelian(parse_ab_group(d));
}

CocycleFile parse_cocycle_file(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("cocycle JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("values") || !j["values"].is_array()) {
    throw ParseError("cocycle JSON needs a \"values\" array");
  }
  CocycleFile f;
  if (j.contains("quandle")) f.quandle = j["quandle"].get<std::string>();
  if (j.contains("coeff")) f.coeff = j["coeff"].get<std::string>();
  for (const auto& row : j["values"]) {
    if (!row.is_array()) throw ParseError("cocycle JSON rows must be arrays");
    std::vector<std::string> r;
    for (const auto& v : row) {
      if (v.is_string()) r.push_back(v.get<std::string>());
      else if (v.is_number_unsigned()) r.push_back("#" + std::to_string(v.get<std::uint64_t>()));
      else throw ParseError("cocycle values must be labels or element indices");
    }
    f.values.push_back(std::move(r));
  }
  return f;
}

std::string format_cocycle(const ConstantCocycle& b, std::string_view quandle_ref) {
  const std::size_t n = b.quandle().size();
  nlohmann::json values = nlohmann::json::array();
  for (Elem x = 0; x < n; ++x) {
    nlohmann::json row = nlohmann::json::array();
    for (Elem y = 0; y < n; ++y) row.push_back(b.group().label(b(x, y)));
    values.push_back(std::move(row));
  }
  nlohmann::ordered_json j;
  j["quandle"] = std::string(quandle_ref);
  j["coeff"] = b.group().descriptor();
  j["values"] = std::move(values);
  return j.dump() + "\n";
}

ConstantCocycle to_cocycle(const CocycleFile& file, QuandlePtr q, GroupPtr g, Exec exec) {
  const std::size_t n = q->size();
  if (file.values.size() != n) throw ParseError("cocycle needs " + std::to_string(n) + " rows");
  std::vector<GElem> values;
  values.reserve(n * n);
  for (const auto& row : file.values) {
    if (row.size() != n) throw ParseError("cocycle rows need " + std::to_string(n) + " entries");
    for (const auto& label : row) {
      if (label.size() > 1 && label[0] == '#') {
        const auto idx = std::stoull(label.substr(1));
        if (idx >= g->order()) throw ParseError("cocycle value index out of range: " + label.substr(1));
        values.push_back(static_cast<GElem>(idx));
      } else if (auto e = g->find_label(label)) {
        values.push_back(*e);
      } else {
        throw ParseError("unknown group element label '" + label + "'");
      }
    }
  }
  return ConstantCocycle(std::move(q), std::move(g), std::move(values), exec);
}

}  // namespace qk
