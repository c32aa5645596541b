// Property suites over generated cases; every suite runs at least 200 cases
// from a fixed seed.
#include "mlab/blackburn_evens.hpp"
#include "mlab/bounds.hpp"
#include "mlab/cohomology.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace mlab;

namespace {

constexpr int kCases = 200;

using Rng = std::mt19937_64;

int below(Rng& g, int n) { return static_cast<int>(g() % static_cast<std::uint64_t>(n)); }

// Class <= 2: generators v_1..v_d of relative order p, then central w_1..w_e
// of relative order p. Powers and commutators of the v's are random words in
// the w's.
PcPresentation random_class2(Rng& g, std::uint32_t p, int d, int e) {
  const int n = d + e;
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back((i < d ? "v" : "w") + std::to_string(i));
  auto central_word = [&] {
    std::vector<int> x(static_cast<std::size_t>(n), 0);
    for (int i = d; i < n; ++i) x[static_cast<std::size_t>(i)] = below(g, static_cast<int>(p));
    return NormalWord(x);
  };
  std::vector<NormalWord> pw;
  for (int i = 0; i < n; ++i)
    pw.push_back(i < d && below(g, 3) == 0 ? central_word() : NormalWord::identity(static_cast<std::size_t>(n)));
  std::vector<std::vector<NormalWord>> cm(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i)
      cm[static_cast<std::size_t>(j)].push_back(j < d ? central_word() : NormalWord::identity(static_cast<std::size_t>(n)));
  return PcPresentation(p, names, std::vector<int>(static_cast<std::size_t>(n), 1), pw, cm);
}

// A random consistent group of order at most p^max_n; mixes generated class-2
// groups with catalog groups.
PcPresentation random_group(Rng& g, std::uint32_t p, int max_n) {
  static const char* odd[] = {"ES_p_p3", "ES_p2_p3", "Phi2_31", "Phi2_22", "Phi3_1111", "Phi3_211a", "Cp2"};
  static const char* two[] = {"D8", "Q8", "QD16", "Q16", "M16", "X17", "MainThm_xx", "MainThm_xxiv", "X15"};
  if (below(g, 3) == 0) {
    for (int tries = 0; tries < 20; ++tries) {
      const char* id = p == 2 ? two[below(g, 9)] : odd[below(g, 7)];
      auto h = refine(test::group(id, p));
      if (h.order().exponent <= max_n) return h;
    }
  }
  for (;;) {
    const int n = 1 + below(g, max_n);
    const int e = n >= 3 ? below(g, std::min(n - 1, 3)) : 0;
    auto h = random_class2(g, p, n - e, e);
    if (check_consistency(h).consistent) return h;
  }
}

NormalWord random_element(Rng& g, const PcPresentation& h) {
  std::vector<int> e(h.rank());
  for (std::size_t i = 0; i < h.rank(); ++i) e[i] = below(g, h.relative_order(i));
  return NormalWord(e);
}

AbelianGroup random_abelian(Rng& g, std::uint64_t p) {
  std::vector<int> e;
  const int r = below(g, 4);
  for (int i = 0; i < r; ++i) e.push_back(1 + below(g, 3));
  return AbelianGroup::from_p_exponents(p, e);
}

}  // namespace

TEST_CASE("property: collection is idempotent and the product is associative") {
  auto g = test::rng(101);
  for (int c = 0; c < kCases; ++c) {
    const std::uint32_t p = c % 2 ? 3 : 2;
    const auto h = random_group(g, p, 6);
    const auto x = random_element(g, h), y = random_element(g, h), z = random_element(g, h);
    std::vector<Letter> letters;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x.exps[i]) letters.push_back({static_cast<int>(i), x.exps[i]});
    INFO("case " << c);
    CHECK(h.collect(letters) == x);
    CHECK(h.valid_word(h.multiply(x, y)));
    CHECK(h.multiply(x, h.identity()) == x);
    CHECK(h.multiply(h.multiply(x, y), z) == h.multiply(x, h.multiply(y, z)));
    CHECK(h.multiply(x, h.inverse(x)).is_identity());
  }
}

TEST_CASE("property: cayley tables are associative (exhaustive, order <= 32)") {
  auto g = test::rng(202);
  for (int c = 0; c < kCases; ++c) {
    const std::uint32_t p = c % 3 == 0 ? 3 : 2;
    const auto h = random_group(g, p, p == 2 ? 5 : 3);
    const auto t = cayley_table(h);
    bool ok = true;
    for (std::size_t a = 0; a < t.order && ok; ++a)
      for (std::size_t b = 0; b < t.order && ok; ++b)
        for (std::size_t d = 0; d < t.order && ok; ++d) ok = t(t(a, b), d) == t(a, t(b, d));
    INFO("case " << c << " order " << t.order);
    CHECK(ok);
    CHECK(t(0, 0) == 0);
  }
}

TEST_CASE("property: the oracle is invariant under relabeling of the table") {
  auto g = test::rng(303);
  for (int c = 0; c < kCases; ++c) {
    const std::uint32_t p = c % 3 == 0 ? 3 : 2;
    const auto h = random_group(g, p, p == 2 ? 5 : 3);
    const auto t = cayley_table(h);
    std::vector<std::uint32_t> perm(t.order);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin() + 1, perm.end(), g);
    CayleyTable u;
    u.order = t.order;
    u.table.assign(t.table.size(), 0);
    for (std::size_t a = 0; a < t.order; ++a)
      for (std::size_t b = 0; b < t.order; ++b) u.table[perm[a] * t.order + perm[b]] = perm[t(a, b)];
    const auto m = static_cast<std::int64_t>(t.order);
    INFO("case " << c);
    CHECK(h2_trivial_coeffs(u, m).group == h2_trivial_coeffs(t, m).group);
  }
}

TEST_CASE("property: blackburn-evens does not depend on the basis") {
  auto g = test::rng(404);
  int c = 0;
  while (c < kCases) {
    const std::uint32_t p = c % 2 ? 3 : 5;
    const int n = 3 + below(g, 4);
    auto full = random_class2(g, p, n - 2, 2);
    if (!check_consistency(full).consistent || be_inapplicable(full)) continue;
    const auto base = multiplier_via_be(full).multiplier;
    const auto seed = 1 + g() % 1000000;
    INFO("case " << c << " seed " << seed);
    CHECK(multiplier_via_be(full, seed).multiplier == base);
    ++c;
  }
}

TEST_CASE("property: kunneth is symmetric") {
  auto g = test::rng(505);
  for (int c = 0; c < kCases; ++c) {
    const std::uint64_t p = c % 2 ? 2 : 3;
    const auto ma = random_abelian(g, p), mb = random_abelian(g, p), aa = random_abelian(g, p),
               ab = random_abelian(g, p);
    CHECK(kunneth(ma, mb, aa, ab) == kunneth(mb, ma, ab, aa));
    CHECK(exterior_square(direct_sum(aa, ab)) == kunneth(exterior_square(aa), exterior_square(ab), aa, ab));
  }
}

TEST_CASE("property: ledger bounds are monotone") {
  auto g = test::rng(606);
  for (int c = 0; c < kCases; ++c) {
    const int truth = below(g, 10);
    Ledger l;
    std::optional<int> up, lo;
    for (int step = 0; step < 12; ++step) {
      Fact f;
      f.subject = "G";
      f.prov = {Provenance::Type::assumed, "generated", {}};
      const int kind = below(g, 3);
      f.kind = kind == 0 ? FactKind::upper : kind == 1 ? FactKind::lower : FactKind::exact_order;
      // mostly true facts, sometimes false ones
      const bool lie = below(g, 5) == 0;
      if (f.kind == FactKind::upper) f.exponent = truth + below(g, 4) - (lie ? 4 : 0);
      if (f.kind == FactKind::lower) f.exponent = std::max(0, truth - below(g, 4)) + (lie ? 4 : 0);
      if (f.kind == FactKind::exact_order) f.exponent = truth + (lie ? 1 + below(g, 3) : 0);
      const auto before = l.facts().size();
      bool added = true;
      try {
        l.add(f);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ledger);
        added = false;
      }
      if (!added) CHECK(l.facts().size() == before);
      const auto nu = l.min_upper("G"), nl = l.max_lower("G");
      if (up) CHECK((nu && *nu <= *up));
      if (lo) CHECK((nl && *nl >= *lo));
      if (nu && nl) CHECK(*nl <= *nu);
      if (auto ex = l.exact("G")) {
        CHECK(*ex <= *nu);
        CHECK(*ex >= *nl);
      }
      up = nu;
      lo = nl;
    }
  }
}
