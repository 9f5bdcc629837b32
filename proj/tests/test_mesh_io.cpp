#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include "ptg/mesh.hpp"

using namespace ptg;

namespace {

std::size_t parse_error_line(const std::string& text) {
  try {
    read_mesh(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("write then read reproduces the mesh text") {
  const Mesh m = generate_rhombus_equilateral(3);
  const std::string text = write_mesh(m);
  const Mesh back = read_mesh(text);
  CHECK(write_mesh(back) == text);
  CHECK(back.num_edges() == m.num_edges());
  for (VertexId i = 0; i < m.num_vertices(); ++i) CHECK(back.vertices()[i] == m.vertices()[i]);
}

TEST_CASE("comments and blank lines are skipped") {
  const Mesh m = read_mesh("# header comment\n\nptg-mesh 1\n3 1\n0 0\n# inline\n1 0\n\n0 1\n0 1 2\n");
  CHECK(m.num_cells() == 1);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("") == 1);
  CHECK(parse_error_line("mesh 2\n") == 1);
  CHECK(parse_error_line("ptg-mesh 1\n3\n") == 2);
  CHECK(parse_error_line("ptg-mesh 1\n3 1\n0 0\n1 x\n0 1\n0 1 2\n") == 4);
  CHECK(parse_error_line("ptg-mesh 1\n3 1\n0 0\n1 0\n0 1\n0 1 7\n") == 6);
  CHECK(parse_error_line("ptg-mesh 1\n3 1\n0 0\n1 0\n0 1\n0 1 2\n5 5\n") == 7);
  // Premature end of file is reported on the last line.
  CHECK(parse_error_line("ptg-mesh 1\n3 1\n0 0\n1 0\n") == 4);
  CHECK(parse_error_line("ptg-mesh 1\n3 1\n0 0 0\n1 0\n0 1\n0 1 2\n") == 3);
  CHECK(parse_error_line("ptg-mesh 1\n-3 1\n") == 2);
}

TEST_CASE("out-of-range message names the index") {
  try {
    read_mesh("ptg-mesh 1\n3 1\n0 0\n1 0\n0 1\n0 1 7\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("vertex index 7 out of range") != std::string::npos);
  }
}

TEST_CASE("files") {
  CHECK(load_mesh(std::string(PTG_TEST_DATA) + "/rhombus2.msh").num_cells() == 8);
  try {
    load_mesh(std::string(PTG_TEST_DATA) + "/does-not-exist.msh");
    FAIL("expected an i/o error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
  const std::string tmp = "ptg_mesh_io_roundtrip.msh";
  const Mesh m = generate_rhombus_equilateral(2);
  save_mesh(m, tmp);
  CHECK(write_mesh(load_mesh(tmp)) == write_mesh(m));
  std::remove(tmp.c_str());
  CHECK_THROWS_AS(save_mesh(m, "/nonexistent-dir/x.msh"), Error);
}
