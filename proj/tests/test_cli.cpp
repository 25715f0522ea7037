#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "doctest.h"

using namespace yoneda;
using namespace yoneda::cli;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(YONEDA_FIXTURES) + "/" + name);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ExitCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return classify(e);
  }
  return ok;
}

std::string result(const std::string& command, const InputDocument& doc, const Flags& f) {
  return run(command, doc, f).body["result"].get<std::string>();
}

}  // namespace

TEST_CASE("group shorthand") {
  CHECK(parse_group_shorthand("Z/4").to_string() == "Z/4");
  CHECK(parse_group_shorthand("Z^3").to_string() == "Z^3");
  CHECK(parse_group_shorthand("Z").to_string() == "Z");
  CHECK(parse_group_shorthand("0").is_zero());
  CHECK(parse_group_shorthand("Z/1").is_zero());
  CHECK(parse_group_shorthand("Z/2 + Z/3").to_string() == "Z/6");
  CHECK(parse_group_shorthand("Z^2 + Z/4 + Z/6").to_string() == "Z^2 + Z/2 + Z/12");
  CHECK(parse_group_shorthand("Z/0").to_string() == "Z");
  CHECK_THROWS_AS((void)parse_group_shorthand("Q"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_group_shorthand("Z/"), std::invalid_argument);

  InputDocument d = parse("");
  CHECK(d.finite_group("cyclic 5").order() == 5);
  CHECK(d.finite_group("symmetric 3").order() == 6);
  CHECK(d.poset("chain 4").size() == 4);
  CHECK_THROWS_AS((void)d.poset("chain 13"), DomainError);
}

TEST_CASE("parsing documents") {
  InputDocument empty = parse("");
  CHECK(empty.groups.empty());
  CHECK(empty.presheaves.empty());
  CHECK(parse("  \n ") == empty);
  CHECK(parse("{}") == empty);

  InputDocument s = parse(fixture("sierpinski.json"));
  CHECK(s.posets.size() == 1);
  CHECK(s.presheaves.size() == 3);
  CHECK(s.presheaf("B").stalk(1).to_string() == "Z/2");

  InputDocument g = parse(R"({"groups": {"T": {"gens": 2, "relations": [[2, 0], [0, 3]]}},
                              "matrices": {"m": [[2, 4], ["-6", 8]]}})");
  CHECK(g.group("T").to_string() == "Z/6");
  CHECK(g.matrix("m")(1, 0) == Integer(-6));

  try {
    (void)parse(R"({"homs": {"f": {"src": "Z", "tgt": "Nowhere"}}})");
    FAIL("expected a reference error");
  } catch (const ReferenceError& e) {
    CHECK(e.name == "Nowhere");
    CHECK(std::string(e.what()).find("hom 'f'") != std::string::npos);
  }

  try {
    (void)parse("{\n  \"groups\": {\n    \"a\" \"Z\"\n  }\n}");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 3);
    CHECK(e.column >= 9);
  }
  CHECK(code_of([] { (void)parse("[1, 2]"); }) == parse_error);
  CHECK(code_of([] { (void)parse(R"({"widgets": {}})"); }) == parse_error);
  CHECK(code_of([] { (void)parse(R"({"groups": {"g": {"gens": 1, "relations": [[1.5]]}}})"); }) == parse_error);
  CHECK(code_of([] { (void)parse(R"({"homs": {"f": {"src": "Z/2", "tgt": "Z", "matrix": [[1]]}}})"); }) ==
        validation_error);
  CHECK(code_of([] { (void)parse(R"({"homs": {"f": {"src": "Z/2", "tgt": "Z", "matrix": [[1, 0]]}}})"); }) ==
        validation_error);
  CHECK(code_of([] { (void)parse(R"({"finite_groups": {"G": {"table": [[0, 1], [1, 1]]}}})"); }) == validation_error);
  CHECK(code_of([] { (void)parse(R"({"posets": {"P": {"size": 13}}})"); }) == domain_error);
  CHECK(code_of([] {
          (void)parse(R"({"posets": {"Q": {"size": 4, "order": [[0, 1], [0, 2], [1, 3], [2, 3]]}},
                          "presheaves": {"F": {"poset": "Q", "stalks": ["Z", "Z", "Z", "Z"], "restrictions": [
                            {"from": 1, "to": 0, "matrix": [[1]]}, {"from": 2, "to": 0, "matrix": [[1]]},
                            {"from": 3, "to": 1, "matrix": [[1]]}, {"from": 3, "to": 2, "matrix": [[-1]]}]}}})");
        }) == validation_error);
}

TEST_CASE("emit and parse round-trip") {
  for (const char* name : {"sierpinski.json", "cyclic2_cohomology.json", "six_term.json"}) {
    InputDocument d = parse(fixture(name));
    InputDocument again = parse(emit(d));
    CHECK(again == d);
    CHECK(emit(again) == emit(d));
  }
  CHECK(parse(emit(parse(""))) == parse(""));
}

TEST_CASE("commands") {
  InputDocument none = parse("");
  Flags f;
  f.B = "Z/4";
  f.A = "Z/6";
  f.n = 1;
  CHECK(result("ext", none, f) == "Z/2");
  f.B = "Z";
  for (const char* a : {"Z", "Z/5", "Z^2 + Z/6", "0"}) {
    f.A = a;
    CHECK(result("ext", none, f) == "0");
  }

  InputDocument s = parse(fixture("sierpinski.json"));
  Flags sf;
  sf.B = "B";
  sf.A = "Zy0";
  sf.n = 2;
  CHECK(result("sheaf-ext", s, sf) == "0 <- Z/2");
  CHECK(result("external-ext", s, sf) == "Z/2");
  Flags gs;
  gs.F = "B";
  CHECK(result("global-sections", s, gs) == "Z/2");

  InputDocument c = parse(fixture("cyclic2_cohomology.json"));
  Flags gc;
  gc.M = "Ztriv";
  gc.n = 2;
  CHECK(result("group-cohomology", c, gc) == "Z/2");
  gc.n = 7;
  CHECK(code_of([&] { (void)run("group-cohomology", c, gc); }) == domain_error);
  Flags fp;
  fp.M = "ZC2";
  CHECK(result("fixed-points", c, fp) == "Z");

  InputDocument six = parse(fixture("six_term.json"));
  for (const char* v : {"co", "contra"}) {
    Flags st;
    st.seq = {"E"};
    st.M = "Z/2";
    st.variance = v;
    CHECK(result("six-term", six, st) == "exact");
  }
  Flags bs;
  bs.seq = {"E", "E"};
  CHECK(result("baer", six, bs) == "split");
  bs.seq = {"E", "Split"};
  CHECK(result("baer", six, bs) == "nonsplit");

  Flags ws;
  ws.poset = "bowtie";
  ws.c = 3;
  CHECK(result("witness-search", none, ws).rfind("witness at element", 0) == 0);
  ws.poset = "sierpinski";
  ws.c = 0;
  CHECK(result("witness-search", none, ws) == "none");

  CHECK(code_of([&] { (void)run("ext", none, Flags{}); }) == usage_error);
  CHECK(code_of([&] { (void)run("frobnicate", none, Flags{}); }) == usage_error);
}

TEST_CASE("results are deterministic") {
  InputDocument s = parse(fixture("sierpinski.json"));
  Flags sf;
  sf.B = "B";
  sf.A = "Zy0";
  sf.n = 2;
  const std::string first = render(run("sheaf-ext", s, sf), Format::machine);
  for (int k = 0; k < 3; ++k) CHECK(render(run("sheaf-ext", parse(fixture("sierpinski.json")), sf), Format::machine) == first);
  auto j = nlohmann::json::parse(first);
  CHECK(j["result"] == "0 <- Z/2");
  CHECK(j["status"] == 0);
  CHECK(j["command"] == "sheaf-ext");
}
