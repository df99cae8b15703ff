#include "doctest.h"

#include "commands.hpp"

#include "bsw/spec_io.hpp"

#include <filesystem>
#include <fstream>

using namespace bsw;
using namespace bsw::cli;

namespace {

  std::string fx(std::string const& name) {
    return (std::filesystem::path(BSW_FIXTURE_DIR) / name).string();
  }

  std::string scratch(std::string const& name, std::string const& text) {
    auto p = std::filesystem::temp_directory_path() / ("bsw_cli_" + name);
    std::ofstream(p) << text;
    return p.string();
  }

}  // namespace

TEST_CASE("cli exit codes") {
  auto bad = scratch("bad.json", R"({"base_rank": 2, "floors": [{"type": "abelian", "peg": "e1^^2", "rank": 1}]})");
  auto r   = run("build", bad, {});
  CHECK(r.code == kParse);
  CHECK(r.err.find("floors[0].peg") != std::string::npos);

  auto nonmax = scratch("nonmax.json", R"({"base_rank": 2, "floors": [{"type": "abelian", "peg": "e1^2", "rank": 1}]})");
  r = run("build", nonmax, {});
  CHECK(r.code == kValidity);
  CHECK(r.err.find("peg maximal [F1]") != std::string::npos);

  auto unknown = scratch("unknown.json", R"({"base_rank": 2, "floors": [
    {"type": "surface", "genus": 1, "boundary": ["e1*e2*e1^-1*e2^-1"], "images": ["e1", "e2"]},
    {"type": "abelian", "peg": "x1*e1", "rank": 1}]})");
  r = run("present", unknown, {});
  CHECK(r.code == kUnknown);
  CHECK(r.out.empty());
  Options ack;
  ack.assume_valid = true;
  r                = run("present", unknown, ack);
  CHECK(r.code == kOk);
  CHECK(r.out.rfind("warning: assumed valid: peg maximal [F2]", 0) == 0);

  CHECK(run("build", fx("missing.json"), {}).code == kParse);
  CHECK(run("frobnicate", fx("abelian.json"), {}).code == kParse);
  Options o;
  o.level = 7;
  CHECK(run("present", fx("abelian.json"), o).code == kParse);
}

TEST_CASE("cli build") {
  auto empty = scratch("empty.json", R"({"base_rank": 2, "floors": []})");
  auto r     = run("build", empty, {});
  CHECK(r.code == kOk);
  CHECK(r.out == "base: e1 e2\npresentation: < e1 e2 | >\n");

  Options emit;
  emit.emit = true;
  auto first  = run("build", fx("nonabelian.json"), emit);
  auto copy   = scratch("copy.json", first.out);
  auto second = run("build", copy, emit);
  CHECK(first.code == kOk);
  CHECK(first.out == second.out);
}

TEST_CASE("cli extend on the closure example") {
  for (int p = -9; p <= 9; ++p) {
    Options o;
    o.p    = std::to_string(p);
    auto r = run("extend", fx("closure.json"), o);
    REQUIRE(r.code == kOk);
    bool ext = false;
    int  y   = 0;
    for (int k = -10; k <= 10; ++k) {
      if (2 + 3 * k == p) {
        ext = true;
        y   = k;
      }
    }
    if (ext) {
      CHECK(r.out == "extends, y=" + std::to_string(y) + "\n");
    } else {
      CHECK(r.out == "does not extend, coset 2+3ℤ\n");
    }
  }
  Options o;
  o.p = "1,2";
  CHECK(run("extend", fx("closure.json"), o).code == kParse);
  o.p = "x";
  CHECK(run("extend", fx("closure.json"), o).code == kParse);
}

TEST_CASE("cli testseq and oracle") {
  Options o;
  o.n    = {5};
  auto r = run("testseq", fx("closure.json"), o);
  CHECK(r.code == kOk);
  CHECK(r.out == "e1 = e1\ne2 = e2\nz = e1^17\na = e1^5\n");
  o.n = {0, 2};
  r   = run("testseq", fx("closure.json"), o);
  CHECK(r.code == kOk);
  // index 0 is the retraction: a -> peg, z -> peg^(2+3)
  CHECK(r.out.rfind("# n = 0\ne1 = e1\ne2 = e2\nz = e1^5\na = e1\n# n = 2\n", 0) == 0);

  Options q;
  q.word = "z*a^-3*e1^-2";
  CHECK(run("oracle", fx("closure.json"), q).out == "trivial\n");
  q.word = "z";
  CHECK(run("oracle", fx("closure.json"), q).out.rfind("nontrivial witness=", 0) == 0);
  q.word = "a*";
  CHECK(run("oracle", fx("closure.json"), q).code == kParse);
}

TEST_CASE("cli fixture suite") {
  Options o;
  o.fixtures = BSW_FIXTURE_DIR;
  auto r     = run("verify-fixtures", "", o);
  CHECK(r.code == kOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
}
