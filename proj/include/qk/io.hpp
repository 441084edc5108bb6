#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qk/cocycle.hpp"
#include "qk/finite_group.hpp"
#include "qk/quandle.hpp"

namespace qk {

// Table files: the size n, then n rows of n entries, row x holding x▷y.
// Whitespace is free-form and `#` starts a comment.

/// Throws ParseError on malformed text, QuandleAxiomError on a valid table
/// that is not a quandle.
Quandle parse_table(std::string_view text, Exec exec = Exec::Auto);
std::string format_table(const Quandle& q);
Quandle load_table(const std::filesystem::path& path, Exec exec = Exec::Auto);
void save_table(const std::filesystem::path& path, const Quandle& q);

struct LoadedTable {
  std::filesystem::path path;
  Quandle quandle;
};

/// Every `*.tbl` file of a directory in file name order.
std::vector<LoadedTable> load_table_directory(const std::filesystem::path& dir, Exec exec = Exec::Auto);

/// Coefficient groups: `Sym3` (or `S3`), `Z2`, `Z 2 x Z 2` / `Z2xZ2`, and
/// `table:<file>` for a group table file in the same format as quandle
/// tables. Throws ParseError.
FiniteGroup parse_coeff(std::string_view descriptor);

// Cocycle files are JSON objects
//   {"quandle": "<table reference>", "coeff": "<descriptor>",
//    "values": [[label, ...], ...]}
// with values[x][y] the label of β(x,y). Integers are read as element
// indices.

struct CocycleFile {
  std::string quandle;
  std::string coeff;
  std::vector<std::vector<std::string>> values;
};

CocycleFile parse_cocycle_file(std::string_view json_text);
std::string format_cocycle(const ConstantCocycle& b, std::string_view quandle_ref);
/// Throws ParseError for unknown labels or a wrong shape, InvalidCocycle
/// if the values fail the cocycle conditions.
ConstantCocycle to_cocycle(const CocycleFile& file, QuandlePtr q, GroupPtr g, Exec exec = Exec::Auto);

std::string read_file(const std::filesystem::path& path);

}  // namespace qk
