#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qf/cli.hpp"
#include "qf/io.hpp"
#include "support.hpp"

using namespace qf;
using namespace qf::test;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Temporary table files, removed at exit.
class Scratch {
 public:
  Scratch() : dir_(std::filesystem::temp_directory_path() / ("qf_cli_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(dir_);
  }
  ~Scratch() { std::filesystem::remove_all(dir_); }

  std::string write(std::string const& name, std::string const& text) {
    std::filesystem::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }
  std::string table(std::string const& name, CayleyTable const& q) { return write(name, render_table(q)); }

 private:
  std::filesystem::path dir_;
};

Scratch& scratch() {
  static Scratch s;
  return s;
}

std::string error_kind(std::string const& err) { return json::parse(err).at("error").get<std::string>(); }

}  // namespace

TEST_CASE("parse examples") {
  CayleyTable trivial = parse_table("1\n0\n");
  CHECK(trivial.order() == 1);
  CayleyTable z3 = parse_table("3\n0 1 2\n1 2 0\n2 0 1\n");
  CHECK(z3 == builtin("cyclic(3)"));
  CHECK(parse_table("# Z3\n3\n0 1 2  # row 0\n\n1 2 0\n2 0 1\n") == z3);
  try {
    parse_table("3\n0 1 1\n1 2 0\n2 0 1\n");
    FAIL("expected NotLatin");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::not_latin);
    CHECK(std::string(e.what()).find("row 0") != std::string::npos);
  }
}

TEST_CASE("parse errors carry the line") {
  auto fails = [](std::string const& text, std::string const& line) {
    try {
      parse_table(text);
    } catch (Error const& e) {
      CHECK(e.kind() == ErrorKind::parse_error);
      CHECK(std::string(e.what()).find(line) != std::string::npos);
      return;
    }
    FAIL("accepted: " << text);
  };
  fails("3\n0 1 2\n1 2 0\n2 0 1", "line 4");
  fails("", "line");
  fails("x\n", "line 1");
  fails("2\n0 1\n1\n", "line 3");
  fails("2\n0 1 0\n1 0\n", "line 2");
  fails("2\n0 1\n", "line");
  fails("2\n0 1\n1 0\n0 1\n", "line 4");
  fails("2\n0 -1\n1 0\n", "line 2");
}

TEST_CASE("render/parse round trip") {
  std::vector<CayleyTable> corpus{q5(), s3(), sd81(), cml81(), z2s3_linear(), builtin("chein(s3)")};
  for (CayleyTable const& q : random_quasigroups()) corpus.push_back(q);
  for (CayleyTable const& q : corpus) CHECK(parse_table(render_table(q)) == q);
  std::string stream;
  for (CayleyTable const& q : corpus) stream += render_table(q);
  CHECK(parse_table_stream(stream) == corpus);
  CHECK(render_table(builtin("cyclic(2)")) == "2\n0 1\n1 0\n");
  CHECK(table_digest(q5()).size() == 16);
  CHECK(table_digest(q5()) != table_digest(s3()));
}

TEST_CASE("form JSON round trip") {
  for (ArithmeticForm const& f : random_forms()) CHECK(form_from_json(form_to_json(f)) == f);
  ArithmeticForm q = form_at(q5(), 0).form;
  std::string text = form_to_json(q);
  CHECK(form_from_json(text) == q);
  json j = json::parse(text);
  std::vector<std::string> keys;
  for (auto const& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"e", "f", "g", "loop_table", "order", "strong", "zero"});
  CHECK_THROWS_AS(form_from_json("{}"), Error);
  CHECK_THROWS_AS(form_from_json("not json"), Error);
}

TEST_CASE("check") {
  std::string q5f = scratch().table("q5.qt", q5());
  std::string s3f = scratch().table("s3.qt", s3());
  Run ok = run({"check", q5f, "--law", "f_left", "f_right"});
  CHECK(ok.code == kExitOk);
  json j = json::parse(ok.out);
  CHECK(j["all_hold"] == true);
  CHECK(j["laws"].size() == 2);

  Run bad = run({"check", s3f, "--law", "medial"});
  CHECK(bad.code == kExitFails);
  json w = json::parse(bad.out)["laws"][0]["witness"];
  REQUIRE(w.is_array());
  CHECK_FALSE(law_holds_at(s3(), LawId::medial, w.get<std::vector<Element>>()));

  std::string malformed = scratch().write("bad.qt", "3\n0 1 1\n1 2 0\n2 0 1\n");
  Run input = run({"check", malformed, "--law", "medial"});
  CHECK(input.code == kExitInput);
  CHECK(error_kind(input.err) == "NotLatin");
  CHECK(run({"check", q5f, "--law", "flexible"}).code == kExitInput);
  CHECK(run({"check", "/nonexistent/file.qt", "--law", "medial"}).code == kExitInput);
  CHECK(run({"check", q5f}).code == kExitInput);
  CHECK(run({}).code == kExitInput);
  CHECK(run({"frobnicate"}).code == kExitInput);
}

TEST_CASE("form") {
  std::string q5f = scratch().table("q5.qt", q5());
  Run r = run({"form", q5f, "--at", "0"});
  REQUIRE(r.code == kExitOk);
  json j = json::parse(r.out);
  CHECK(j["e"] == 1);
  CHECK(j["zero"] == 4);
  CHECK(form_from_json(r.out) == form_at(q5(), 0).form);

  Run shifted = run({"form", q5f, "--shift", "1,2"});
  REQUIRE(shifted.code == kExitOk);
  CHECK(form_from_json(shifted.out) == basepoint_shift(form_at(q5(), 0).form, 1, 2));

  std::string s3f = scratch().table("s3.qt", s3());
  CHECK(run({"form", s3f, "--shift", "1"}).code == kExitInput);
  std::string nonf = scratch().table("chein.qt", builtin("chein(s3)"));
  CHECK(run({"form", nonf}).code == kExitFails);
  // K(S3) is trivial.
  Run outside = run({"form", s3f, "--shift", "1,1"});
  CHECK(outside.code == kExitInput);
  CHECK(error_kind(outside.err) == "BadShift");
}

TEST_CASE("enumerate") {
  Run r = run({"enumerate", "--order", "4", "--mode", "reduced", "--count"});
  REQUIRE(r.code == kExitOk);
  CHECK(json::parse(r.out)["count"] == 4);
  Run t = run({"enumerate", "--order", "5", "--count", "--threads", "4"});
  CHECK(json::parse(t.out)["count"] == 161280);
  Run stream = run({"enumerate", "--order", "3", "--law", "associative"});
  REQUIRE(stream.code == kExitOk);
  std::vector<CayleyTable> tables = parse_table_stream(stream.out);
  CHECK(tables.size() == enumerate(EnumSpec{3, EnumMode::all, {LawId::associative}, std::nullopt}));
  for (CayleyTable const& q : tables) CHECK(holds(q, LawId::associative));
  Run limited = run({"enumerate", "--order", "4", "--limit", "7"});
  CHECK(parse_table_stream(limited.out).size() == 7);
  CHECK(run({"enumerate", "--order", "7", "--count"}).code == kExitInput);
  CHECK(run({"enumerate", "--order", "3", "--mode", "latin"}).code == kExitInput);
}

TEST_CASE("gen") {
  Run r = run({"gen", "zlin(5,2,3,1)"});
  REQUIRE(r.code == kExitOk);
  CHECK(parse_table(r.out) == q5());
  CHECK(run({"gen", "zlin(4,2,1,0)"}).code == kExitInput);
  CHECK(run({"gen", "cyclic("}).code == kExitInput);
}

TEST_CASE("quotient") {
  std::string sd = scratch().table("sd81.qt", sd81());
  Run r = run({"quotient", sd, "--by", "rho"});
  REQUIRE(r.code == kExitOk);
  CayleyTable q = parse_table(r.out);
  CHECK(holds(q, LawId::symmetric));
  CHECK(holds(q, LawId::distributive));
  CHECK(q.order() == 27);
  Run m = run({"quotient", sd, "--by", "m"});
  REQUIRE(m.code == kExitOk);
  CHECK(parse_table(m.out).order() == 1);
  std::string s3f = scratch().table("s3.qt", s3());
  CHECK(parse_table(run({"quotient", s3f, "--by", "m"}).out) == s3());
  CHECK(run({"quotient", sd, "--by", "n"}).code == kExitInput);
}

TEST_CASE("iso") {
  std::string a = scratch().table("z6.qt", builtin("cyclic(6)"));
  std::string b = scratch().table("z2z3.qt", builtin("product(cyclic(2),cyclic(3))"));
  std::string c = scratch().table("s3.qt", s3());
  Run yes = run({"iso", a, b});
  CHECK(yes.code == kExitOk);
  json w = json::parse(yes.out)["witness"];
  REQUIRE(w.is_array());
  CHECK(is_homomorphism(builtin("cyclic(6)"), builtin("product(cyclic(2),cyclic(3))"), w.get<std::vector<Element>>()));
  Run no = run({"iso", a, c});
  CHECK(no.code == kExitFails);
  CHECK(json::parse(no.out)["witness"].is_null());
}

TEST_CASE("analyze") {
  std::string s3f = scratch().table("s3.qt", s3());
  Run s = run({"analyze", s3f});
  REQUIRE(s.code == kExitOk);
  json js = json::parse(s.out);
  CHECK(js["tags"] == json({"F", "FG", "group"}));
  CHECK(js["m_set"]["members"] == json({0}));
  CHECK(js["f_sections"]["quotient_by_m"]["order"] == 6);
  CHECK(js["f_sections"]["quotient_by_m"]["is_group"] == true);
  CHECK(js["notice"].is_null());

  std::string sd = scratch().table("sd81.qt", sd81());
  Run d = run({"analyze", sd});
  REQUIRE(d.code == kExitOk);
  json jd = json::parse(d.out);
  CHECK(jd["tags"] == json({"F", "distributive", "symmetric", "trimedial"}));
  CHECK(jd["m_set"]["size"] == 81);
  CHECK(jd["f_sections"]["quotient_by_m"]["order"] == 1);
  CHECK(jd["f_sections"]["rho"]["quotient_symmetric"] == true);
  CHECK(jd["f_sections"]["rho"]["quotient_distributive"] == true);
  CHECK(jd["f_sections"]["rho"]["blocks_fg"] == true);

  // Medial implies the trimedial tag.
  json jq = json::parse(run({"analyze", scratch().table("q5.qt", q5())}).out);
  CHECK(jq["tags"] == json({"F", "FG", "medial", "simple", "trimedial"}));

  std::optional<CayleyTable> non_f;
  enumerate(EnumSpec{5, EnumMode::all, {}, std::nullopt}, [&](CayleyTable const& t) {
    if (!non_f && !is_f_quasigroup(t)) non_f = t;
  });
  REQUIRE(non_f.has_value());
  Run n = run({"analyze", scratch().table("nonf.qt", *non_f)});
  REQUIRE(n.code == kExitOk);
  json jn = json::parse(n.out);
  CHECK(jn["f_sections"].is_null());
  CHECK(jn["notice"].is_string());
  CHECK(jn["laws"]["f_left"].is_boolean());
  CHECK(jn["laws"].size() == all_laws().size());
}

TEST_CASE("output is byte deterministic with sorted keys") {
  std::string sd = scratch().table("sd81.qt", sd81());
  std::string q5f = scratch().table("q5.qt", q5());
  for (std::vector<std::string> args : std::vector<std::vector<std::string>>{
           {"analyze", sd}, {"analyze", q5f}, {"form", q5f, "--at", "3"}, {"check", q5f, "--law", "medial", "idempotent"}}) {
    Run a = run(args), b = run(args);
    CHECK(a.out == b.out);
    json j = json::parse(a.out);
    CHECK((j.dump(2) + "\n" == a.out || j.dump() + "\n" == a.out));
  }
}
