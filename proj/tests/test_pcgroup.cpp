#include "mlab/pcgroup.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace mlab;
using test::group;

namespace {

const char* kD8Unrefined = R"(
gen a p
gen b p^2
comm b a = b^2
)";

NormalWord nw(std::vector<int> e) { return NormalWord(std::move(e)); }

}  // namespace

TEST_CASE("collection") {
  const auto g = group("Phi2_211b", 3);
  CHECK(g.collect({}) == nw({0, 0, 0, 0}));
  const Letter w[] = {{1, 1}, {0, 1}};  // a1 * a
  CHECK(g.collect(w) == nw({1, 1, 0, 1}));

  const auto d8 = load_group_dsl(kD8Unrefined, 2);
  REQUIRE(d8.order().exponent == 3);
  const Letter b4[] = {{1, 3}, {1, 1}};
  CHECK(d8.collect(b4).is_identity());
  const Letter inv[] = {{1, -1}, {0, -1}, {1, 1}, {0, 1}};  // [b, a] = b^2
  CHECK(d8.collect(inv) == nw({0, 2}));
}

TEST_CASE("consistency") {
  auto r = check_consistency(group("Phi2_211b", 3));
  CHECK(r.consistent);
  CHECK(r.order == POrder{3, 4});
  CHECK(check_consistency(group("ES_p_p3", 3)).order == POrder{3, 3});
  CHECK_THROWS_AS(load_group_dsl("gen a p\ngen b p\ncomm b a = b\n", 2), Error);
  // relations are checked, not assumed
  PcPresentation bad(2, {"a", "b"}, {1, 1}, {nw({0, 0}), nw({0, 0})}, {{}, {nw({0, 1})}});
  auto rep = check_consistency(bad);
  CHECK_FALSE(rep.consistent);
  CHECK(rep.failed.has_value());
  CHECK_FALSE(rep.failure.empty());
}

TEST_CASE("main theorem presentations of unstated order") {
  CHECK(group("MainThm_xiv", 2).order().exponent == 6);
  CHECK(group("X16", 2).order().exponent == 5);
  CHECK(group("MainThm_xx", 2).order().exponent == 5);
  CHECK(group("MainThm_xxiv", 2).order().exponent == 5);
  CHECK(group("Phi7_cover", 3).order().exponent == 6);
}

TEST_CASE("relations of (xx) hold in its encoding") {
  const auto g = group("MainThm_xx", 2);
  const auto c = g.generator(0), b = g.generator(1), a = g.generator(2);
  CHECK(g.power(g.multiply(a, b), 2) == g.power(g.multiply(b, a), 2));
  CHECK(g.commutator(g.power(a, 2), b).is_identity());
  CHECK(g.commutator(a, c).is_identity());
  CHECK(g.commutator(b, c).is_identity());
  CHECK(g.element_order_exponent(a) == 2);
  CHECK(g.element_order_exponent(b) == 1);
  CHECK(g.element_order_exponent(c) == 1);
}

TEST_CASE("structure reports") {
  auto es = structure_report(group("ES_p_p3", 3));
  CHECK(es.nilpotency_class == 2);
  CHECK(es.derived.order_exponent() == 1);
  CHECK(same_subgroup(es.group, es.derived, es.center));

  auto phi3 = structure_report(group("Phi3_1111", 3));
  CHECK(phi3.nilpotency_class == 3);
  CHECK(phi3.derived.order_exponent() == 2);
  CHECK(phi3.center.order_exponent() == 1);
  const auto a3 = phi3.group.generator(*phi3.group.generator_index("a3"));
  CHECK(contains(phi3.group, phi3.center, a3));

  auto cyc = structure_report(group("Cp2", 3));
  CHECK(cyc.nilpotency_class == 1);
  CHECK(cyc.derived.is_trivial());
}

TEST_CASE("abelianization") {
  CHECK(abelianization(group("Ep3", 3)) == test::pexp(3, {1, 1, 1}));
  CHECK(abelianization(group("Phi2_31", 3)) == test::pexp(3, {1, 2}));
  CHECK(abelianization(group("Phi2_211c", 3)) == test::pexp(3, {1, 2}));
}

TEST_CASE("quotients") {
  const auto es = refine(group("ES_p_p3", 3));
  auto q = central_quotient(es, center(es));
  CHECK(is_abelian(q));
  CHECK(abelianization(q) == test::pexp(3, {1, 1}));

  const auto phi7 = refine(group("Phi7_11111", 3));
  const auto z = center(phi7);
  CHECK(z.order_exponent() == 1);
  auto q7 = central_quotient(phi7, z);
  CHECK(check_consistency(q7).consistent);
  CHECK(q7.order().exponent == 4);

  const auto ab = refine(group("Ep3", 3));
  CHECK(central_quotient(ab, whole_group(ab)).rank() == 0);
}

TEST_CASE("direct products") {
  CHECK(direct_product(group("ES_p_p3", 3), group("Ep5", 3)).order().exponent == 8);
  CHECK(direct_product(group("D8", 2), group("Cp", 2)).order().exponent == 4);
  const auto d8 = group("D8", 2);
  const auto triv = PcPresentation::abelian_free(2, {}, {});
  CHECK(triv.rank() == 0);
  const auto dt = direct_product(d8, triv);
  CHECK(dt.rank() == d8.rank());
  for (std::size_t i = 0; i < 8; ++i) CHECK(element_at(dt, i) == element_at(d8, i));
}

TEST_CASE("cayley tables") {
  auto t = cayley_table(group("Ep2", 2));
  REQUIRE(t.order == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(t(i, j) == (i ^ j));

  const auto d8 = group("D8", 2);
  auto td = cayley_table(d8);
  const auto ia = element_index(d8, d8.generator(0));
  const auto ib = element_index(d8, d8.generator(1));
  CHECK(td(ia, ib) != td(ib, ia));

  CHECK_THROWS_AS(cayley_table(direct_product(group("Ep3", 3), group("Ep3", 3)), 243), Error);
}

TEST_CASE("isomorphism witnesses") {
  const auto d8 = refine(group("D8", 2));
  std::vector<NormalWord> id;
  for (std::size_t i = 0; i < d8.rank(); ++i) id.push_back(d8.generator(i));
  CHECK(iso_witness_check(d8, d8, id));

  const auto q8 = refine(group("Q8", 2));
  std::size_t tried = 0;
  for (std::size_t x = 0; x < 8; ++x)
    for (std::size_t y = 0; y < 8; ++y)
      for (std::size_t z = 0; z < 8; ++z) {
        std::vector<NormalWord> im = {element_at(q8, x), element_at(q8, y), element_at(q8, z)};
        CHECK_FALSE(iso_witness_check(d8, q8, im));
        ++tried;
      }
  CHECK(tried == 512);

  const auto es = group("ES_p2_p3", 3), e3 = group("Ep3", 3);
  const auto ab = direct_product(es, e3), ba = direct_product(e3, es);
  std::vector<NormalWord> perm;
  for (std::size_t i = 0; i < es.rank(); ++i) perm.push_back(ba.generator(e3.rank() + i));
  for (std::size_t i = 0; i < e3.rank(); ++i) perm.push_back(ba.generator(i));
  CHECK(iso_witness_check(ab, ba, perm));
  std::swap(perm[0], perm[1]);
  CHECK_FALSE(iso_witness_check(ab, ba, perm));  // a^p = c but b^p = 1
}

TEST_CASE("refinement") {
  const auto d8 = load_group_dsl(kD8Unrefined, 2);
  CHECK_FALSE(d8.prime_step());
  const auto r = refine(d8);
  CHECK(r.prime_step());
  CHECK(r.order() == d8.order());
  CHECK(check_consistency(r).consistent);
}
