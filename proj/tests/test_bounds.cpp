#include "mlab/bounds.hpp"
#include "mlab/cohomology.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace mlab;
using test::group;

namespace {

void premise(Ledger& l, const std::string& subject, const PcPresentation& g, const Subgroup& k,
             const std::string& label) {
  const auto q = quotient(g, k).group;
  record_computed(l, quotient_subject(subject, label), g.prime(),
                  compute_multiplier(&test::catalog(), nullptr, q, g.prime()));
}

Fact bound(const std::string& subject, FactKind kind, int e, const std::string& why = "test") {
  Fact f;
  f.subject = subject;
  f.kind = kind;
  f.exponent = e;
  f.prov = {Provenance::Type::assumed, why, {}};
  return f;
}

}  // namespace

TEST_CASE("green") {
  Ledger l;
  CHECK(l.fact(rule_green(l, "G", 3, 6)).exponent == 15);
  CHECK(l.fact(rule_green(l, "H", 3, 1)).exponent == 0);
  CHECK(compute_t(6, AbelianGroup::elementary(3, 9), 3) == 6);
}

TEST_CASE("jones") {
  SUBCASE("ES_p(p^3) with K = Z(G) is tight") {
    const auto g = refine(group("ES_p_p3", 3));
    Ledger l;
    premise(l, "ES", g, center(g), "Z");
    CHECK(l.fact(rule_jones(l, "ES", g, center(g), "Z")).exponent == 2);
  }
  SUBCASE("Phi2(2111)c with K = G'") {
    const auto g = refine(group("MainThm_viii", 3));
    const auto k = structure_report(g).derived;
    Ledger l;
    premise(l, "G", g, k, "G'");
    CHECK(l.fact(rule_jones(l, "G", g, k, "G'")).exponent == 5);
  }
  SUBCASE("abelian G with K = G gives the exterior square") {
    const auto g = refine(group("Ep3", 3));
    Ledger l;
    premise(l, "A", g, whole_group(g), "G");
    CHECK(l.fact(rule_jones(l, "A", g, whole_group(g), "G")).exponent == 3);
  }
  SUBCASE("missing premise") {
    const auto g = refine(group("ES_p_p3", 3));
    Ledger l;
    try {
      rule_jones(l, "ES", g, center(g), "Z");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("ES/Z") != std::string::npos);
    }
  }
}

TEST_CASE("class bound") {
  {
    const auto g = refine(group("ES_p_p3", 3));
    const auto sr = structure_report(g);
    Ledger l;
    premise(l, "ES", g, sr.lower_central[1], "gamma_2");
    CHECK(l.fact(rule_class_bound(l, "ES", g)).exponent == 2);
  }
  {
    const auto g = refine(group("Phi3_1111", 3));
    const auto sr = structure_report(g);
    REQUIRE(sr.nilpotency_class == 3);
    Ledger l;
    premise(l, "F", g, sr.lower_central[2], "gamma_3");
    CHECK(l.fact(rule_class_bound(l, "F", g)).exponent == 3);
  }
  Ledger l;
  CHECK_THROWS_AS(rule_class_bound(l, "A", refine(group("Ep2", 3))), Error);
}

TEST_CASE("extraspecial") {
  Ledger l;
  CHECK(l.fact(rule_extraspecial(l, "E5", refine(group("ES_p_p5", 3)))).exponent == 5);
  CHECK(l.fact(rule_extraspecial(l, "E5b", refine(group("ES_p2_p5", 3)))).exponent == 5);
  const auto& d8 = l.fact(rule_extraspecial(l, "D8", refine(group("D8", 2))));
  CHECK(d8.structure == test::pexp(2, {1}));
  CHECK(l.fact(rule_extraspecial(l, "Q8", refine(group("Q8", 2)))).exponent == 0);
  CHECK(l.fact(rule_extraspecial(l, "ES", refine(group("ES_p_p3", 3)))).exponent == 2);
  CHECK(l.fact(rule_extraspecial(l, "ES2", refine(group("ES_p2_p3", 3)))).exponent == 0);
  CHECK_THROWS_AS(rule_extraspecial(l, "F", refine(group("Phi3_1111", 3))), Error);
}

TEST_CASE("transgression lower bound") {
  const auto g = refine(group("Phi7_11111", 3));
  const auto z = center(g);
  Ledger l;
  premise(l, "P7", g, z, "Z");
  CHECK_THROWS_AS(rule_transgression_lower(l, "P7", g, z, "Z"), Error);
  const auto w = test::catalog().witness("Phi7_cover", 3);
  rule_capable_witness(l, "P7", g, "Phi7_cover", w.cover, w.images);
  CHECK(l.fact(rule_transgression_lower(l, "P7", g, z, "Z")).exponent == 4);

  const auto es = refine(group("ES_p_p3", 3));
  Ledger m;
  m.add([] {
    Fact f;
    f.subject = "ES";
    f.kind = FactKind::capable;
    f.prov = {Provenance::Type::assumed, "test", {}};
    return f;
  }());
  premise(m, "ES", es, center(es), "Z");
  CHECK(m.fact(rule_transgression_lower(m, "ES", es, center(es), "Z")).exponent == 1);
}

TEST_CASE("capability witness must be an isomorphism") {
  const auto g = refine(group("Phi7_11111", 3));
  auto w = test::catalog().witness("Phi7_cover", 3);
  std::swap(w.images[0], w.images[1]);
  Ledger l;
  CHECK_THROWS_AS(rule_capable_witness(l, "P7", g, "Phi7_cover", w.cover, w.images), Error);
}

TEST_CASE("ledger consistency and squeeze") {
  Ledger l;
  l.add(bound("G", FactKind::upper, 4));
  CHECK_FALSE(l.exact("G"));
  CHECK_THROWS_AS(l.add(bound("G", FactKind::lower, 5)), Error);
  const int lo = l.add(bound("G", FactKind::lower, 4, "cite"));
  REQUIRE(l.exact("G") == 4);
  const auto ex = *l.exact_fact("G");
  CHECK(l.fact(ex).prov.type == Provenance::Type::rule);
  CHECK(l.fact(ex).prov.detail == "squeeze");
  CHECK(l.assumed_in_derivation(ex).size() == 2);
  CHECK(l.assumed_in_derivation(lo) == std::vector<int>{lo});
  CHECK(l.best_bound_fact("G", FactKind::upper).has_value());
  try {
    l.add(bound("G", FactKind::upper, 3));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ledger);
  }
}

TEST_CASE("shipped replay scripts") {
  const auto& cat = test::catalog();
  {
    auto r = replay_file(cat, "ES_p_p3_class_bound.replay");
    CHECK(r.passed);
    CHECK(r.assumed.empty());
    REQUIRE(r.final_fact);
    CHECK(r.ledger.fact(*r.final_fact).exponent == 2);
  }
  {
    auto r = replay_file(cat, "Phi2_2111c_jones.replay");
    CHECK(r.passed);
    REQUIRE(r.ledger.min_upper_fact(r.subject));
    CHECK(r.ledger.best_bound_fact(r.subject, FactKind::upper).has_value());
    CHECK(r.ledger.fact(*r.ledger.best_bound_fact(r.subject, FactKind::upper)).exponent >= 4);
    CHECK(r.ledger.exact(r.subject) == 4);
  }
  {
    auto r = replay_file(cat, "Phi7_11111.replay");
    CHECK(r.passed);
    CHECK(r.assumed.size() == 1);
    CHECK(r.ledger.exact(r.subject) == 4);
  }
  {
    auto r = replay_file(cat, "D8_wrong_upper.replay");
    CHECK_FALSE(r.passed);
    CHECK(r.failed_line == std::size_t{5});
    CHECK(r.failure.find("expect upper p^1") != std::string::npos);
  }
  {
    auto r = replay_file(cat, "Phi8_32.replay");
    CHECK(r.passed);
    CHECK_FALSE(r.final_fact);
  }
}

TEST_CASE("script parsing") {
  auto lines = parse_script("# c\n\nuse D8 2\nassume upper p^3 \"a b\"  # tail\n");
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].line == 3);
  CHECK(lines[1].words == std::vector<std::string>{"assume", "upper", "p^3", "a b"});
  const auto src = catalog_source(test::catalog());
  auto r = replay_script("apply green\n", src);
  CHECK_FALSE(r.passed);
  r = replay_script("use D8 2\napply nonsense\n", src);
  CHECK_FALSE(r.passed);
  CHECK(r.failed_line == std::size_t{2});
  r = replay_script("use ES_p_p3\napply green\nexpect upper p^3\n", src, 5u);
  CHECK(r.passed);
  CHECK(r.p == 5);
}
