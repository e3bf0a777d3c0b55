#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ccg/category.hpp"

using namespace ccg;

static AtomInventory atoms() { return AtomInventory{}; }

static CatPtr cat(const std::string& s) { return parse_category(s, atoms()); }

TEST_CASE("atoms parse and format") {
  auto c = cat("NP");
  CHECK(c->is_atom());
  CHECK(c->atom().label == "NP");
  CHECK_FALSE(c->atom().arg_index.has_value());
  CHECK(format_category(c) == "NP");
}

TEST_CASE("arg index is parsed and kept for display") {
  auto c = cat("NP1");
  REQUIRE(c->is_atom());
  CHECK(c->atom().label == "NP");
  CHECK(c->atom().arg_index == 1);
  CHECK(format_category(c) == "NP1");
  CHECK(format_category(c, false) == "NP");
}

TEST_CASE("transitive verb category structure") {
  auto c = cat("(S\\NP0)/NP1");
  REQUIRE_FALSE(c->is_atom());
  CHECK(c->slash() == Slash::Forward);
  CHECK(c->argument()->is_atom());
  CHECK(c->argument()->atom().label == "NP");
  CHECK(c->argument()->atom().arg_index == 1);
  auto r = c->result();
  REQUIRE_FALSE(r->is_atom());
  CHECK(r->slash() == Slash::Backward);
  CHECK(r->result()->atom().label == "S");
  CHECK(r->argument()->atom().arg_index == 0);
}

TEST_CASE("round trips") {
  for (const char* s : {"S", "NP", "S\\NP", "(S\\NP0)/NP1", "((S\\NP)/PP)/NP",
                        "(S\\NP)\\(S\\NP)", "S/(S\\NP)", "S\\(S/NP)",
                        "(NP\\NP)/(S/NP)", "((S\\NP0)/PP)/NP1",
                        "(NP0\\NP1)/NP2", "NP[case=acc]",
                        "S[bar=+]/S1[bar=-]", "(S[bar=-]\\NP0)/NP1[case=acc]",
                        "S[wh=+]/(S\\NP)", "(N/N)/(N/N)"}) {
    CHECK(format_category(cat(s)) == s);
  }
}

TEST_CASE("slashes are left-associative") {
  CHECK(format_category(cat("S\\NP/NP")) == "(S\\NP)/NP");
  CHECK(equal_categories(cat("S\\NP/NP"), cat("(S\\NP)/NP")));
  CHECK_FALSE(equal_categories(cat("S\\(NP/NP)"), cat("(S\\NP)/NP")));
}

TEST_CASE("features parse in order and compare canonically") {
  auto c = cat("S[bar=-,vform=ind]");
  CHECK(c->atom().features.get("bar") == "-");
  CHECK(c->atom().features.get("vform") == "ind");
  CHECK(format_category(c) == "S[bar=-,vform=ind]");
  // order is display only; equality is canonical
  CHECK(equal_categories(cat("S[bar=-,vform=ind]"), cat("S[vform=ind,bar=-]")));
  CHECK_FALSE(equal_categories(cat("S[bar=-]"), cat("S[bar=+]")));
}

TEST_CASE("parse errors carry the offset") {
  CHECK_THROWS_AS(cat("XP"), CategoryParseError);
  try {
    cat("S/(NP");
    FAIL("expected error");
  } catch (const CategoryParseError& e) {
    CHECK(e.offset < 6);  // points into the input
    CHECK(std::string(e.what()).find("paren") != std::string::npos);
  }
  try {
    cat("QQ/NP");
    FAIL("expected error");
  } catch (const CategoryParseError& e) {
    CHECK(e.offset <= 2);
    CHECK(std::string(e.what()).find("QQ") != std::string::npos);
  }
  CHECK_THROWS_AS(cat(""), CategoryParseError);
  CHECK_THROWS_AS(cat("S//NP"), CategoryParseError);
  CHECK_THROWS_AS(cat("S[bar=]"), CategoryParseError);
  CHECK_THROWS_AS(cat("S[bar-]"), CategoryParseError);
}

TEST_CASE("arity equals the sum of the directional arities") {
  for (const char* s : {"S", "S\\NP", "(S\\NP0)/NP1", "((S\\NP)/PP)/NP",
                        "(S\\NP)\\(S\\NP)", "S/(S\\NP)", "(N/N)/(N/N)"}) {
    auto c = cat(s);
    auto [l, r] = directional_arity(c);
    CHECK(arity(c) == l + r);
  }
  CHECK(arity(cat("S")) == 0);
  CHECK(arity(cat("(S\\NP0)/NP1")) == 2);
  CHECK(directional_arity(cat("(S\\NP0)/NP1")) == std::pair<int, int>(1, 1));
  CHECK(directional_arity(cat("((S\\NP)/PP)/NP")) == std::pair<int, int>(1, 2));
  // only outermost-peelable arguments count toward direction
  CHECK(directional_arity(cat("(S\\NP)\\(S\\NP)")) == std::pair<int, int>(2, 0));
}

TEST_CASE("equality ignores arg indices unless asked") {
  CHECK(equal_categories(cat("(S\\NP0)/NP1"), cat("(S\\NP)/NP")));
  CHECK_FALSE(
      equal_categories(cat("(S\\NP0)/NP1"), cat("(S\\NP)/NP"), true, true));
  CHECK(equal_categories(cat("(S\\NP0)/NP1"), cat("(S\\NP0)/NP1"), true, true));
}

TEST_CASE("canonical key ignores arg index, keeps features on request") {
  CHECK(canonical_key(cat("(S\\NP0)/NP1")) == canonical_key(cat("(S\\NP)/NP")));
  CHECK(canonical_key(cat("S[bar=-]")) != canonical_key(cat("S")));
  CHECK(canonical_key(cat("S[bar=-]"), false) == canonical_key(cat("S"), false));
}

TEST_CASE("clone produces an independent equal copy") {
  auto c = cat("(S[bar=-]\\NP0)/NP1[case=acc]");
  auto d = clone_category(c);
  CHECK(equal_categories(c, d, true, true));
  CHECK(format_category(d) == format_category(c));
  CHECK(c->argument()->atom().features.root() !=
        d->argument()->atom().features.root());
}

TEST_CASE("raised shapes are recognized, features included in T") {
  CHECK(is_raised_shape(cat("S/(S\\NP)")));
  CHECK(is_raised_shape(cat("S\\(S/NP)")));
  CHECK(is_raised_shape(cat("S/(S\\NP[num=pl])")));
  CHECK_FALSE(is_raised_shape(cat("NP")));
  CHECK_FALSE(is_raised_shape(cat("(S\\NP)/NP")));
  // direction must oppose: T/(T/X) is not a raised shape
  CHECK_FALSE(is_raised_shape(cat("S/(S/NP)")));
  // T is compared with features: a wh-item is not hidden raising
  CHECK_FALSE(is_raised_shape(cat("S[wh=+]/(S\\NP)")));
}

TEST_CASE("category unification merges features pairwise") {
  UnifyContext ctx;
  auto out = unify_categories(cat("S[bar=-]\\NP0"), cat("S[vform=ind]\\NP"), ctx);
  REQUIRE(out.ok());
  CHECK(out.result->result()->atom().features.get("bar") == "-");
  CHECK(out.result->result()->atom().features.get("vform") == "ind");
  // arg indices come from the left operand
  CHECK(out.result->argument()->atom().arg_index == 0);

  auto clash = unify_categories(cat("S[bar=-]"), cat("S[bar=+]"), ctx);
  CHECK_FALSE(clash.ok());
  REQUIRE(clash.clash.has_value());
  CHECK(clash.clash->path == "bar");

  auto skel = unify_categories(cat("S\\NP"), cat("S/NP"), ctx);
  CHECK_FALSE(skel.ok());
  CHECK(skel.skeleton_mismatch);
}
