#include <filesystem>
#include <fstream>

#include "corpus.hpp"
#include "doctest.h"
#include "qk/errors.hpp"
#include "qk/io.hpp"

using namespace qk;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("qk_io_" + std::to_string(std::rand()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return path / name;
  }
};

}  // namespace

TEST_CASE("table text") {
  const std::string r3 = "# dihedral\n3\n0 2 1\n2, 1, 0\n1 0 2  # last row\n";
  CHECK(parse_table(r3) == testing::r3().q.quandle);
  for (const auto& e : testing::connected_affine_corpus(9)) CHECK(parse_table(format_table(e.q.quandle)) == e.q.quandle);
  CHECK(format_table(testing::r3().q.quandle) == "3\n0 2 1\n2 1 0\n1 0 2\n");

  CHECK_THROWS_AS(parse_table(""), ParseError);
  CHECK_THROWS_AS(parse_table("2\n0 1\n0"), ParseError);
  CHECK_THROWS_AS(parse_table("2\n0 1\n0 1 1"), ParseError);
  CHECK_THROWS_AS(parse_table("2\n0 x\n0 1"), ParseError);
  CHECK_THROWS_AS(parse_table("-2\n"), ParseError);
  CHECK_THROWS_AS(parse_table("5000\n"), ParseError);
  CHECK_THROWS_AS(parse_table("2\n1 0\n1 0"), QuandleAxiomError);
}

TEST_CASE("table files") {
  TempDir dir;
  save_table(dir.path / "b.tbl", testing::order4().q.quandle);
  save_table(dir.path / "a.tbl", testing::r3().q.quandle);
  dir.write("notes.txt", "not a table");
  CHECK(load_table(dir.path / "b.tbl") == testing::order4().q.quandle);
  const auto all = load_table_directory(dir.path);
  REQUIRE(all.size() == 2);
  CHECK(all[0].path.filename() == "a.tbl");
  CHECK(all[1].quandle == testing::order4().q.quandle);

  const auto bad = dir.write("bad.tbl", "2\n0 1\n");
  try {
    (void)load_table(bad);
    FAIL("short table accepted");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bad.tbl") != std::string::npos);
  }
  CHECK_THROWS_AS(load_table(dir.path / "missing.tbl"), ParseError);
}

TEST_CASE("coefficient descriptors") {
  CHECK(parse_coeff("Sym3").order() == 6);
  CHECK(parse_coeff("S4").order() == 24);
  CHECK(parse_coeff("Z2").order() == 2);
  CHECK(parse_coeff("Z 2 x Z 2").order() == 4);
  CHECK(parse_coeff("Z2xZ3").is_abelian());
  CHECK_THROWS_AS(parse_coeff("Sym"), ParseError);
  CHECK_THROWS_AS(parse_coeff("Symx"), ParseError);
  CHECK_THROWS_AS(parse_coeff("Q8"), ParseError);
  CHECK_THROWS(parse_coeff("Sym7"));

  TempDir dir;
  const auto z3 = dir.write("z3.tbl", "3\n0 1 2\n1 2 0\n2 0 1\n");
  const auto g = parse_coeff("table:" + z3.string());
  CHECK(g.order() == 3);
  CHECK(g.mul(1, 2) == 0);
  CHECK_THROWS_AS(parse_coeff("table:" + (dir.path / "none.tbl").string()), ParseError);
  const auto not_group = dir.write("ng.tbl", "2\n0 0\n0 0\n");
  CHECK_THROWS(parse_coeff("table:" + not_group.string()));
}

TEST_CASE("cocycle files") {
  const auto o4 = testing::order4().ptr;
  const auto s2 = testing::sym(2);
  std::vector<GElem> beta(16, 0);
  for (Elem x = 1; x < 4; ++x) {
    for (Elem y = 1; y < 4; ++y) {
      if (x != y) beta[x * 4 + y] = 1;
    }
  }
  const ConstantCocycle b(o4, s2, beta);
  const std::string text = format_cocycle(b, "order4.tbl");
  const auto file = parse_cocycle_file(text);
  CHECK(file.quandle == "order4.tbl");
  CHECK(file.coeff == s2->descriptor());
  CHECK(to_cocycle(file, o4, s2) == b);

  const auto numeric = parse_cocycle_file(
      R"({"quandle":"q","coeff":"Z2","values":[[0,0,0,0],[0,0,1,1],[0,1,0,1],[0,1,1,0]]})");
  const auto z2 = testing::zgroup("Z 2");
  CHECK(to_cocycle(numeric, o4, z2) == ConstantCocycle(o4, z2, beta));

  CHECK_THROWS_AS(parse_cocycle_file("{"), ParseError);
  CHECK_THROWS_AS(parse_cocycle_file(R"({"quandle":"q"})"), ParseError);
  const auto short_rows = parse_cocycle_file(R"({"quandle":"q","coeff":"Z2","values":[[0,0],[0,0]]})");
  CHECK_THROWS_AS(to_cocycle(short_rows, o4, z2), ParseError);
  const auto unknown = parse_cocycle_file(
      R"({"quandle":"q","coeff":"Z2","values":[["a",0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})");
  CHECK_THROWS_AS(to_cocycle(unknown, o4, z2), ParseError);
  const auto invalid = parse_cocycle_file(
      R"({"quandle":"q","coeff":"Z2","values":[[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})");
  CHECK_THROWS_AS(to_cocycle(invalid, o4, z2), InvalidCocycle);
}
