#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "nabas/config.hpp"
#include "nabas/error.hpp"

using namespace nabas;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_config(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("nabas_test_" + name + ".cfg");
  std::ofstream(path) << text;
  return path.string();
}

ErrorCode parse_code(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

std::string sum_line(const std::string& report) {
  auto pos = report.find("SUM ");
  return pos == std::string::npos ? "" : report.substr(pos);
}

const std::string kTorus = "field qp 3\ndim 2\nsurface 1 1\n";

}  // namespace

TEST_CASE("config round trip") {
  for (const auto& name : preset_names()) {
    Config c = preset(name);
    CHECK(parse_config(print_config(c)) == c);
  }
  Config c = preset("ex52");
  c.boundary_overrides[0] = Word::parse("BAba", 2);
  c.inverted.insert(0);
  c.cutoff = 7;
  c.window = 2;
  CHECK(parse_config(print_config(c)) == c);
  Config l = parse_config("field laurent 5  # comment\ndim 2\nsurface 1 1\ngen a T 0 0 1\ngen b 2-T -2+2T 1-T -1+2T\n");
  CHECK(parse_config(print_config(l)) == l);
}

TEST_CASE("config errors carry line numbers") {
  CHECK(parse_code(kTorus + "gen a 3 0 0 1\n") == ErrorCode::Parse);
  CHECK(parse_code(kTorus + "gen b 3 0 0 1\ngen a 1 0 0 1\n") == ErrorCode::Parse);
  CHECK(parse_code(kTorus + "gen a 3 0 0\ngen b 1 0 0 1\n") == ErrorCode::Parse);
  CHECK(parse_code("field qq 3\n") == ErrorCode::Parse);
  CHECK(parse_code("field qp 3\ndim 2\nsurface 0 2\n") == ErrorCode::BadSurface);
  CHECK(parse_code(kTorus + "gen a 3 0 0 1\ngen b 1 0 0 1\nboundary 1 abx\n") == ErrorCode::BadLetter);
  CHECK(parse_code(kTorus + "gen a 3 0 0 1\ngen b 1 0 0 1\nboundary 2 ab\n") == ErrorCode::Parse);
  CHECK(parse_code(kTorus + "gen a 3 0 0 1\ngen b 1 0 0 1\nfrobnicate\n") == ErrorCode::Parse);
  CHECK(parse_code(kTorus + "gen a 3 0 0 1\ngen b 1/3 0 0 x\n") == ErrorCode::Parse);
  try {
    parse_config(kTorus + "\n# blank lines count\ngen a 3 0 0 1\ngen b 1 0 0 1\nwindow -1\n");
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.detail().rfind("line 8:", 0) == 0);
  }
}

TEST_CASE("verify exit codes and output") {
  std::string ex51 = temp_config("ex51", print_config(preset("ex51")));
  Run r = run({"verify", ex51});
  CHECK(r.code == 0);
  CHECK(sum_line(r.out) == "SUM lhs=4 rhs=4 nonzero=4 max_len=12 status=VERIFIED\n");
  Run again = run({"verify", ex51});
  CHECK(again.out == r.out);
  Run partial = run({"verify", ex51, "--cutoff", "0"});
  CHECK(partial.code == 2);
  CHECK(sum_line(partial.out) == "SUM lhs=4 rhs=0 nonzero=0 max_len=0 status=PARTIAL\n");
  Run json = run({"verify", ex51, "--cutoff", "6", "--format", "json"});
  CHECK(json.code == 0);
  CHECK(json.out.find("\"status\": \"VERIFIED\"") != std::string::npos);
  Run geo = run({"verify", ex51, "--geometric", "--cutoff", "6"});
  CHECK(geo.code == 0);
  CHECK(geo.out == run({"verify", ex51, "--cutoff", "6"}).out);
  std::string v3 = temp_config("veronese3", print_config(preset("veronese3")));
  CHECK(run({"verify", v3, "--geometric"}).code == 1);
  CHECK(run({"verify", "/nonexistent/x.cfg"}).code == 1);
  CHECK(run({"verify", ex51, "--format", "xml"}).code == 1);
  CHECK(run({}).code == 1);
}

TEST_CASE("mismatch exits with 2") {
  // A wrong boundary word makes the sides disagree once the scan is quiet.
  std::string cfg = temp_config("mismatch", print_config(preset("ex51")) + "boundary 1 ab\n");
  Run r = run({"verify", cfg, "--cutoff", "6"});
  CHECK(r.code == 2);
  CHECK(r.out.find("status=VERIFIED") == std::string::npos);
}

TEST_CASE("length, classify, gap, preset") {
  std::string ex51 = temp_config("ex51b", print_config(preset("ex51")));
  std::string ex52 = temp_config("ex52", print_config(preset("ex52")));
  std::string v3 = temp_config("veronese3b", print_config(preset("veronese3")));
  Run len = run({"length", ex51, "abAB"});
  CHECK(len.code == 0);
  CHECK(len.out == "LENGTH 4\n");
  CHECK(run({"length", ex51, "a"}).out == "LENGTH 1\n");
  CHECK(run({"length", ex51, "abx"}).code == 1);
  CHECK(run({"classify", ex52, "a"}).out == "CLASS HYPERBOLIC\n");
  Run dimension = run({"classify", v3, "a"});
  CHECK(dimension.code == 1);
  CHECK(dimension.err.find("E_DIMENSION") != std::string::npos);
  Run gap = run({"gap", ex51, "--max-len", "4"});
  CHECK(gap.code == 0);
  CHECK(gap.out == "GAP 1 1\nGAP 2 2\nGAP 3 3\nGAP 4 4\n");
  CHECK(run({"preset", "ex52"}).out == print_config(preset("ex52")));
  CHECK(run({"preset", "nope"}).code == 1);
  auto path = std::filesystem::temp_directory_path() / "nabas_test_written.cfg";
  CHECK(run({"preset", "veronese3", "-o", path.string()}).code == 0);
  CHECK(load_config(path.string()) == preset("veronese3"));
}
