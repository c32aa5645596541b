#include "mlab/cohomology.hpp"
#include "mlab/error.hpp"

#include <cstdlib>
#include <deque>
#include <string>

namespace mlab {

const char* method_name(Method m) {
  switch (m) {
    case Method::auto_select: return "auto";
    case Method::oracle: return "oracle";
    case Method::blackburn_evens: return "be";
    case Method::kunneth: return "kunneth";
    case Method::tails: return "tails";
    case Method::ledger: return "ledger";
  }
  return "?";
}

std::optional<Method> parse_method(const std::string& s) {
  for (Method m : {Method::auto_select, Method::oracle, Method::blackburn_evens, Method::kunneth,
                   Method::tails, Method::ledger})
    if (s == method_name(m)) return m;
  if (s == "blackburn_evens") return Method::blackburn_evens;
  return std::nullopt;
}

std::size_t oracle_cap_from_env() {
  if (const char* v = std::getenv("MLAB_ORACLE_CAP")) {
    char* end = nullptr;
    unsigned long long cap = std::strtoull(v, &end, 10);
    if (end && *end == '\0' && cap > 0) return static_cast<std::size_t>(cap);
  }
  return default_oracle_cap;
}

namespace {

struct PrimePower {
  std::uint64_t p;
  int k;
};

PrimePower as_prime_power(std::uint64_t n, const char* what) {
  Factored f = Factored::from_integer(n);
  require(f.factors().size() == 1, ErrorCode::invalid_argument,
          std::string(what) + " " + std::to_string(n) + " is not a prime power");
  return {f.factors()[0].first, f.factors()[0].second};
}

std::vector<std::uint32_t> inverses(const CayleyTable& t) {
  std::vector<std::uint32_t> inv(t.order);
  for (std::size_t x = 0; x < t.order; ++x)
    for (std::size_t y = 0; y < t.order; ++y)
      if (t(x, y) == 0) {
        inv[x] = static_cast<std::uint32_t>(y);
        break;
      }
  return inv;
}

// Elements reachable from the identity by right multiplication with gens.
std::vector<char> generated(const CayleyTable& t, const std::vector<std::uint32_t>& gens) {
  std::vector<char> seen(t.order, 0);
  std::deque<std::uint32_t> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    auto x = q.front();
    q.pop_front();
    for (auto s : gens) {
      auto y = t(x, s);
      if (!seen[y]) {
        seen[y] = 1;
        q.push_back(y);
      }
    }
  }
  return seen;
}

std::size_t count(const std::vector<char>& v) {
  std::size_t c = 0;
  for (char x : v) c += x != 0;
  return c;
}

// Irredundant generating set: greedy by index, then drop redundant members.
// For p-groups every irredundant generating set has d(G) elements.
std::vector<std::uint32_t> generating_set(const CayleyTable& t) {
  std::vector<std::uint32_t> gens;
  std::vector<char> in = generated(t, gens);
  for (std::uint32_t x = 1; x < t.order; ++x)
    if (!in[x]) {
      gens.push_back(x);
      in = generated(t, gens);
    }
  for (std::size_t i = gens.size(); i-- > 0;) {
    std::vector<std::uint32_t> rest = gens;
    rest.erase(rest.begin() + static_cast<long>(i));
    if (count(generated(t, rest)) == t.order) gens = rest;
  }
  return gens;
}

}  // namespace

H2Result h2_trivial_coeffs(const CayleyTable& t, std::int64_t m, std::size_t memory_budget) {
  require(m >= 2, ErrorCode::invalid_argument, "coefficient modulus must be at least 2");
  PrimePower mp = as_prime_power(static_cast<std::uint64_t>(m), "coefficient modulus");
  ResidueRing ring(mp.p, mp.k);
  H2Result res;
  res.modulus = m;
  const std::size_t N = t.order;
  if (N <= 1) {
    res.group = AbelianGroup{};
    return res;
  }
  // A normalized 2-cocycle is determined by its values f(w, s) for s in a
  // generating set S: walking a spanning tree of the right Cayley graph,
  //   f(x, y s) = f(x, y) + f(x y, s) - f(y, s),
  // and the cocycle identity for all (x, y, z) follows from the identities
  // with z in S. The unknowns are u(w, s) = f(w, s), w != 1.
  const std::vector<std::uint32_t> gens = generating_set(t);
  const std::size_t S = gens.size();
  const std::size_t U = (N - 1) * S;
  res.unknowns = U;
  const std::size_t bytes = (N * U + U * U) * sizeof(std::int64_t);
  require(bytes <= memory_budget, ErrorCode::size_cap,
          "cohomology elimination needs ~" + std::to_string(bytes >> 20) +
              " MiB, over the memory budget of " + std::to_string(memory_budget >> 20) + " MiB");

  std::vector<std::uint32_t> parent(N, 0), parent_gen(N, 0), bfs{0};
  std::vector<char> seen(N, 0);
  seen[0] = 1;
  for (std::size_t h = 0; h < bfs.size(); ++h)
    for (std::size_t s = 0; s < S; ++s) {
      auto y = t(bfs[h], gens[s]);
      if (!seen[y]) {
        seen[y] = 1;
        parent[y] = bfs[h];
        parent_gen[y] = static_cast<std::uint32_t>(s);
        bfs.push_back(y);
      }
    }
  require(bfs.size() == N, ErrorCode::internal, "generating set does not generate");
  auto unknown = [&](std::size_t w, std::size_t s) { return (w - 1) * S + s; };

  RowModule rel(ring, U);
  std::vector<std::int64_t> form(N * U);  // f(x, y) for fixed x, as linear forms
  auto F = [&](std::size_t y) { return form.data() + y * U; };
  const std::int64_t mod = ring.modulus();
  for (std::size_t x = 1; x < N; ++x) {
    std::fill(F(0), F(0) + U, 0);
    for (std::size_t h = 1; h < N; ++h) {
      const std::size_t y = bfs[h], yp = parent[y], s = parent_gen[y];
      std::int64_t* fy = F(y);
      const std::int64_t* fp = F(yp);
      std::copy(fp, fp + U, fy);
      const std::size_t xyp = t(x, yp);
      if (xyp != 0) fy[unknown(xyp, s)] = (fy[unknown(xyp, s)] + 1) % mod;
      if (yp != 0) fy[unknown(yp, s)] = (fy[unknown(yp, s)] + mod - 1) % mod;
    }
    for (std::size_t y = 0; y < N; ++y)
      for (std::size_t s = 0; s < S; ++s) {
        const std::size_t ys = t(y, gens[s]);
        if (ys != 0 && parent[ys] == y && parent_gen[ys] == s) continue;  // tree edge
        // f(y,s) - f(xy,s) + f(x,ys) - f(x,y) = 0
        ModRow row(U);
        const std::int64_t* a = F(ys);
        const std::int64_t* b = F(y);
        for (std::size_t c = 0; c < U; ++c) {
          std::int64_t v = a[c] - b[c];
          row[c] = v < 0 ? v + mod : v;
        }
        if (y != 0) row[unknown(y, s)] = (row[unknown(y, s)] + 1) % mod;
        const std::size_t xy = t(x, y);
        if (xy != 0) row[unknown(xy, s)] = (row[unknown(xy, s)] + mod - 1) % mod;
        ++res.equations;
        rel.insert(std::move(row));
      }
  }
  // coboundaries of the normalized 1-cochains chi_h, h != 1:
  //   (delta chi_h)(w, s) = [w = h] + [s = h] - [w s = h]
  std::vector<ModRow> cob(N - 1, ModRow(U, 0));
  for (std::size_t w = 1; w < N; ++w)
    for (std::size_t s = 0; s < S; ++s) {
      const std::size_t c = unknown(w, s);
      cob[w - 1][c] += 1;
      cob[gens[s] - 1][c] += 1;
      const std::size_t ws = t(w, gens[s]);
      if (ws != 0) cob[ws - 1][c] -= 1;
    }
  res.group = kernel_mod_image(rel, cob);
  res.stats = rel.stats();
  return res;
}

AbelianGroup abelianization_from_table(const CayleyTable& t) {
  const std::size_t N = t.order;
  if (N <= 1) return {};
  PrimePower np = as_prime_power(N, "group order");
  auto inv = inverses(t);
  std::vector<std::uint32_t> comms;
  std::vector<char> mark(N, 0);
  for (std::size_t x = 0; x < N; ++x)
    for (std::size_t y = 0; y < N; ++y) {
      // x^-1 y^-1 x y
      auto c = t(t(inv[x], inv[y]), t(x, y));
      if (!mark[c]) {
        mark[c] = 1;
        comms.push_back(c);
      }
    }
  std::vector<char> derived = generated(t, comms);
  const std::size_t dsize = count(derived);
  // c_j = log_p |A[p^j]| with A = G/G'
  std::vector<int> counts;
  std::vector<std::uint32_t> pw(N);
  for (std::size_t x = 0; x < N; ++x) pw[x] = static_cast<std::uint32_t>(x);
  for (int j = 1; j <= np.k; ++j) {
    std::size_t killed = 0;
    for (std::size_t x = 0; x < N; ++x) {
      std::uint32_t y = 0;
      for (std::uint64_t r = 0; r < np.p; ++r) y = t(y, pw[x]);
      pw[x] = y;
      if (derived[y]) ++killed;
    }
    std::size_t a = killed / dsize;
    int c = 0;
    while (a > 1) {
      a /= np.p;
      ++c;
    }
    counts.push_back(c);
  }
  return abelian_from_torsion_counts(np.p, counts);
}

MultiplierResult multiplier_via_oracle(const PcPresentation& pres, OracleOptions opts) {
  CayleyTable t = cayley_table(pres, opts.cap);
  const auto m = static_cast<std::int64_t>(t.order);
  MultiplierResult r;
  r.method = Method::oracle;
  if (t.order == 1) {
    r.trace.push_back("oracle: trivial group");
    return r;
  }
  H2Result h2 = h2_trivial_coeffs(t, m, opts.memory_budget);
  AbelianGroup ab = abelianization_from_table(t);
  require(multiset_difference(h2.group, ab, r.multiplier), ErrorCode::internal,
          "oracle inconsistency: G^ab " + ab.to_string() + " is not a summand of H^2 " +
              h2.group.to_string());
  r.trace.push_back("oracle: H^2(G;Z_" + std::to_string(m) + ") = " + h2.group.to_string() +
                    ", G^ab = " + ab.to_string() + ", " + std::to_string(h2.unknowns) +
                    " unknowns, " + std::to_string(h2.equations) + " equations, " +
                    std::to_string(h2.stats.pivots) + " pivots");
  return r;
}

// ----------------------------------------------------------- tails engine

H2Result h2_via_tails(const PcPresentation& pres, std::int64_t m) {
  PrimePower mp = as_prime_power(static_cast<std::uint64_t>(m), "coefficient modulus");
  require(mp.p == pres.prime(), ErrorCode::invalid_argument,
          "tails engine needs coefficients of the group's prime");
  ResidueRing ring(mp.p, mp.k);
  const std::size_t R = pres.relation_count();
  const std::size_t n = pres.rank();
  H2Result res;
  res.modulus = m;
  res.unknowns = R;
  if (n == 0) return res;
  RowModule rel(ring, R);
  for (const Overlap& ov : overlap_tests(pres)) {
    OverlapOutcome o = evaluate_overlap(pres, ov);
    require(o.lhs == o.rhs, ErrorCode::consistency,
            "inconsistent presentation at overlap " + ov.describe(pres));
    ModRow row(R);
    for (std::size_t r = 0; r < R; ++r) row[r] = ring.reduce(o.lhs_tally[r] - o.rhs_tally[r]);
    ++res.equations;
    rel.insert(std::move(row));
  }
  // Re-choosing lifts g_b -> g_b z^{c} shifts the tail of g_i^{r_i} by
  // r_i [i = b] - (w_i)_b and the tail of [g_j, g_i] by -(w_{j,i})_b.
  std::vector<ModRow> cob(n, ModRow(R, 0));
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t v = -pres.power_tail(i).exps[b];
      if (i == b) v += pres.relative_order(i);
      cob[b][pres.power_relation_index(i)] = ring.reduce(v);
      for (std::size_t k = 0; k < i; ++k)
        cob[b][pres.comm_relation_index(i, k)] = ring.reduce(-pres.comm_tail(i, k).exps[b]);
    }
  }
  res.group = kernel_mod_image(rel, cob);
  res.stats = rel.stats();
  return res;
}

MultiplierResult multiplier_via_tails(const PcPresentation& pres) {
  PcPresentation g = refine(pres);
  MultiplierResult r;
  r.method = Method::tails;
  const POrder ord = g.order();
  if (ord.exponent == 0) {
    r.trace.push_back("tails: trivial group");
    return r;
  }
  ResidueRing ring(g.prime(), ord.exponent);
  H2Result h2 = h2_via_tails(g, ring.modulus());
  AbelianGroup ab = abelianization(g);
  require(multiset_difference(h2.group, ab, r.multiplier), ErrorCode::internal,
          "tails inconsistency: G^ab " + ab.to_string() + " is not a summand of H^2 " +
              h2.group.to_string());
  r.trace.push_back("tails: H^2(G;Z_" + std::to_string(ring.modulus()) + ") = " +
                    h2.group.to_string() + ", G^ab = " + ab.to_string() + ", " +
                    std::to_string(h2.equations) + " overlap equations");
  return r;
}

PcPresentation central_extension(const PcPresentation& g, std::span<const std::int64_t> tails,
                                 int m_exponent) {
  require(tails.size() == g.relation_count(), ErrorCode::invalid_argument,
          "one tail value per relation required");
  const std::size_t n = g.rank();
  std::int64_t m = 1;
  for (int i = 0; i < m_exponent; ++i) m *= g.prime();
  auto extend = [&](const NormalWord& w, std::int64_t t) {
    NormalWord r = w;
    r.exps.push_back(static_cast<int>(((t % m) + m) % m));
    return r;
  };
  std::vector<std::string> names = g.generator_names();
  names.push_back("z");
  std::vector<int> rel;
  for (std::size_t i = 0; i < n; ++i) rel.push_back(g.relative_exponent(i));
  rel.push_back(m_exponent);
  std::vector<NormalWord> pw;
  std::vector<std::vector<NormalWord>> cm(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    pw.push_back(extend(g.power_tail(i), tails[g.power_relation_index(i)]));
    for (std::size_t k = 0; k < i; ++k)
      cm[i].push_back(extend(g.comm_tail(i, k), tails[g.comm_relation_index(i, k)]));
  }
  pw.push_back(NormalWord::identity(n + 1));
  for (std::size_t k = 0; k < n; ++k) cm[n].push_back(NormalWord::identity(n + 1));
  return PcPresentation(g.prime(), std::move(names), std::move(rel), std::move(pw), std::move(cm));
}

}  // namespace mlab
