#include "mlab/error.hpp"
#include "mlab/pcgroup.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace mlab {

namespace {

int inverse_mod_p(int a, int p) {
  for (int x = 1; x < p; ++x)
    if ((static_cast<long long>(a) * x) % p == 1) return x;
  throw Error(ErrorCode::internal, "no inverse mod p");
}

void require_prime_step(const PcPresentation& g, const char* what) {
  require(g.prime_step(), ErrorCode::precondition,
          std::string(what) + " requires a presentation with all relative orders p (use refine)");
}

// Induced generating sequence under construction, indexed by leading depth.
class IgsBuilder {
 public:
  explicit IgsBuilder(const PcPresentation& g) : g_(g), table_(g.rank()) {}

  NormalWord sift(NormalWord w) const {
    const int p = static_cast<int>(g_.prime());
    for (;;) {
      std::size_t d = w.depth();
      if (d == w.size() || !table_[d]) return w;
      w = g_.multiply(w, g_.power(*table_[d], p - w.exps[d]));
    }
  }

  void add(std::span<const NormalWord> gens) {
    std::deque<NormalWord> queue(gens.begin(), gens.end());
    const int p = static_cast<int>(g_.prime());
    while (!queue.empty()) {
      NormalWord w = sift(std::move(queue.front()));
      queue.pop_front();
      if (w.is_identity()) continue;
      std::size_t d = w.depth();
      w = g_.power(w, inverse_mod_p(w.exps[d], p));
      queue.push_back(g_.power(w, p));
      for (auto& t : table_)
        if (t) queue.push_back(g_.commutator(w, *t));
      table_[d] = std::move(w);
    }
  }

  Subgroup result() const {
    Subgroup s;
    for (auto& t : table_)
      if (t) s.igs.push_back(*t);
    return s;
  }

 private:
  const PcPresentation& g_;
  std::vector<std::optional<NormalWord>> table_;
};

bool in_set(const std::vector<std::size_t>& v, std::size_t x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// Iterates every normal word of the whole group.
template <class F>
void for_each_element(const PcPresentation& g, F&& fn) {
  NormalWord w = g.identity();
  const std::size_t n = g.rank();
  for (;;) {
    fn(static_cast<const NormalWord&>(w));
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++w.exps[k] < g.relative_order(k)) break;
      w.exps[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace

std::vector<std::size_t> Subgroup::depths() const {
  std::vector<std::size_t> d;
  for (auto& w : igs) d.push_back(w.depth());
  return d;
}

// ----------------------------------------------------------- refinement

PcPresentation refine(const PcPresentation& pres) {
  if (pres.prime_step()) return pres;
  const std::uint32_t p = pres.prime();
  std::vector<std::string> names;
  std::vector<NormalWord> elems;  // refined generator as element of pres
  for (std::size_t i = 0; i < pres.rank(); ++i) {
    int step = 1;
    for (int t = 0; t < pres.relative_exponent(i); ++t) {
      names.push_back(t == 0 ? pres.generator_names()[i]
                             : pres.generator_names()[i] + "_" + std::to_string(step));
      NormalWord w = pres.identity();
      w.exps[i] = step;
      elems.push_back(w);
      step *= static_cast<int>(p);
    }
  }
  const std::size_t n = names.size();
  std::vector<NormalWord> pw;
  std::vector<std::vector<NormalWord>> cm(n);
  for (std::size_t u = 0; u < n; ++u) {
    pw.push_back(to_refined(pres, pres.power(elems[u], p)));
    for (std::size_t v = 0; v < u; ++v)
      cm[u].push_back(to_refined(pres, pres.commutator(elems[u], elems[v])));
  }
  return PcPresentation(p, std::move(names), std::vector<int>(n, 1), std::move(pw), std::move(cm),
                        pres.name());
}

NormalWord to_refined(const PcPresentation& pres, const NormalWord& w) {
  std::vector<int> out;
  const int p = static_cast<int>(pres.prime());
  for (std::size_t i = 0; i < pres.rank(); ++i) {
    int a = w.exps[i];
    for (int t = 0; t < pres.relative_exponent(i); ++t) {
      out.push_back(a % p);
      a /= p;
    }
  }
  return NormalWord(std::move(out));
}

// ----------------------------------------------------------- subgroups

Subgroup subgroup_closure(const PcPresentation& g, std::span<const NormalWord> gens) {
  require_prime_step(g, "subgroup_closure");
  IgsBuilder b(g);
  b.add(gens);
  return b.result();
}

Subgroup whole_group(const PcPresentation& g) {
  require_prime_step(g, "whole_group");
  Subgroup s;
  for (std::size_t i = 0; i < g.rank(); ++i) s.igs.push_back(g.generator(i));
  return s;
}

bool contains(const PcPresentation& g, const Subgroup& h, const NormalWord& w) {
  const int p = static_cast<int>(g.prime());
  NormalWord x = w;
  std::size_t t = 0;
  for (;;) {
    std::size_t d = x.depth();
    if (d == x.size()) return true;
    while (t < h.igs.size() && h.igs[t].depth() < d) ++t;
    if (t == h.igs.size() || h.igs[t].depth() != d) return false;
    x = g.multiply(x, g.power(h.igs[t], p - x.exps[d]));
  }
}

bool is_subset(const PcPresentation& g, const Subgroup& a, const Subgroup& b) {
  return std::all_of(a.igs.begin(), a.igs.end(),
                     [&](const NormalWord& w) { return contains(g, b, w); });
}

bool same_subgroup(const PcPresentation& g, const Subgroup& a, const Subgroup& b) {
  return a.igs.size() == b.igs.size() && is_subset(g, a, b);
}

std::vector<NormalWord> elements(const PcPresentation& g, const Subgroup& h) {
  std::vector<NormalWord> out{g.identity()};
  // h = h_0^{c_0} ... h_{m-1}^{c_{m-1}}; build from the right
  for (std::size_t t = h.igs.size(); t-- > 0;) {
    std::vector<NormalWord> next;
    next.reserve(out.size() * g.prime());
    NormalWord pw = g.identity();
    for (std::uint32_t c = 0; c < g.prime(); ++c) {
      for (auto& r : out) next.push_back(g.multiply(pw, r));
      pw = g.multiply(pw, h.igs[t]);
    }
    out = std::move(next);
  }
  return out;
}

Subgroup normal_closure(const PcPresentation& g, std::span<const NormalWord> gens) {
  Subgroup s = subgroup_closure(g, gens);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t t = 0; t < s.igs.size() && !changed; ++t)
      for (std::size_t x = 0; x < g.rank(); ++x) {
        NormalWord c = g.commutator(s.igs[t], g.generator(x));
        if (!contains(g, s, c)) {
          std::vector<NormalWord> more = s.igs;
          more.push_back(c);
          s = subgroup_closure(g, more);
          changed = true;
          break;
        }
      }
  }
  return s;
}

Subgroup commutator_subgroup(const PcPresentation& g, const Subgroup& a, const Subgroup& b) {
  std::vector<NormalWord> gens;
  for (auto& x : a.igs)
    for (auto& y : b.igs) gens.push_back(g.commutator(x, y));
  return normal_closure(g, gens);
}

Subgroup intersection(const PcPresentation& g, const Subgroup& a, const Subgroup& b) {
  const Subgroup& small = a.igs.size() <= b.igs.size() ? a : b;
  const Subgroup& other = &small == &a ? b : a;
  std::vector<NormalWord> common;
  for (auto& w : elements(g, small))
    if (contains(g, other, w)) common.push_back(w);
  return subgroup_closure(g, common);
}

Subgroup center(const PcPresentation& g) {
  require_prime_step(g, "center");
  std::vector<NormalWord> gens;
  for (std::size_t i = 0; i < g.rank(); ++i) gens.push_back(g.generator(i));
  std::vector<NormalWord> central;
  for_each_element(g, [&](const NormalWord& x) {
    for (auto& y : gens)
      if (g.multiply(x, y) != g.multiply(y, x)) return;
    central.push_back(x);
  });
  return subgroup_closure(g, central);
}

bool is_central(const PcPresentation& g, const Subgroup& h) {
  for (auto& w : h.igs)
    for (std::size_t i = 0; i < g.rank(); ++i) {
      NormalWord x = g.generator(i);
      if (g.multiply(w, x) != g.multiply(x, w)) return false;
    }
  return true;
}

bool is_normal(const PcPresentation& g, const Subgroup& h) {
  for (auto& w : h.igs)
    for (std::size_t i = 0; i < g.rank(); ++i)
      if (!contains(g, h, g.conjugate(w, g.generator(i)))) return false;
  return true;
}

std::vector<int> igs_coordinates(const PcPresentation& g, const Subgroup& h, NormalWord w) {
  std::vector<int> c(h.igs.size(), 0);
  for (std::size_t t = 0; t < h.igs.size(); ++t) {
    std::size_t d = h.igs[t].depth();
    std::size_t wd = w.depth();
    require(wd >= d, ErrorCode::invalid_argument, "element is not in the subgroup");
    if (wd > d) continue;
    c[t] = w.exps[d];
    w = g.multiply(g.power(h.igs[t], -static_cast<long long>(c[t])), w);
  }
  require(w.is_identity(), ErrorCode::invalid_argument, "element is not in the subgroup");
  return c;
}

PcPresentation subgroup_presentation(const PcPresentation& g, const Subgroup& h) {
  const std::size_t m = h.igs.size();
  std::vector<std::string> names;
  for (std::size_t t = 0; t < m; ++t) {
    const NormalWord& w = h.igs[t];
    std::size_t d = w.depth();
    bool unit = w.exps[d] == 1 &&
                std::count_if(w.exps.begin(), w.exps.end(), [](int e) { return e != 0; }) == 1;
    names.push_back(unit ? g.generator_names()[d] : "h" + std::to_string(t));
  }
  std::vector<NormalWord> pw;
  std::vector<std::vector<NormalWord>> cm(m);
  for (std::size_t u = 0; u < m; ++u) {
    pw.emplace_back(igs_coordinates(g, h, g.power(h.igs[u], g.prime())));
    for (std::size_t v = 0; v < u; ++v)
      cm[u].emplace_back(igs_coordinates(g, h, g.commutator(h.igs[u], h.igs[v])));
  }
  return PcPresentation(g.prime(), std::move(names), std::vector<int>(m, 1), std::move(pw),
                        std::move(cm));
}

// ----------------------------------------------------------- structure

bool is_abelian(const PcPresentation& pres) {
  for (std::size_t j = 0; j < pres.rank(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!pres.comm_tail(j, i).is_identity()) return false;
  return true;
}

StructureReport lower_central_report(const PcPresentation& pres) {
  StructureReport r;
  r.group = refine(pres);
  const PcPresentation& g = r.group;
  r.order_exponent = static_cast<int>(g.rank());
  Subgroup whole = whole_group(g);
  r.lower_central.push_back(whole);
  while (!r.lower_central.back().is_trivial())
    r.lower_central.push_back(commutator_subgroup(g, r.lower_central.back(), whole));
  r.nilpotency_class = static_cast<int>(r.lower_central.size()) - 1;
  r.derived = r.lower_central.size() > 1 ? r.lower_central[1] : Subgroup{};
  return r;
}

StructureReport structure_report(const PcPresentation& pres) {
  StructureReport r = lower_central_report(pres);
  const PcPresentation& g = r.group;
  Subgroup whole = whole_group(g);

  std::vector<NormalWord> gens = whole.igs;
  r.upper_central.push_back(Subgroup{});
  while (r.upper_central.back().order_exponent() < r.order_exponent) {
    const Subgroup& prev = r.upper_central.back();
    Subgroup z = prev;
    for_each_element(g, [&](const NormalWord& x) {
      if (contains(g, z, x)) return;
      for (auto& y : gens)
        if (!contains(g, prev, g.commutator(x, y))) return;
      std::vector<NormalWord> more = z.igs;
      more.push_back(x);
      z = subgroup_closure(g, more);
    });
    require(z.order_exponent() > prev.order_exponent(), ErrorCode::internal,
            "upper central series stalled; presentation is not of a p-group");
    r.upper_central.push_back(std::move(z));
  }
  r.center = r.upper_central.size() > 1 ? r.upper_central[1] : Subgroup{};

  int ex = 0;
  for_each_element(g, [&](const NormalWord& x) { ex = std::max(ex, g.element_order_exponent(x)); });
  r.exponent_log = ex;
  int zex = 0;
  for (auto& w : elements(g, r.center)) zex = std::max(zex, g.element_order_exponent(w));
  r.center_exponent_log = zex;
  return r;
}

AbelianGroup abelianization(const PcPresentation& pres) {
  const std::size_t n = pres.rank();
  IntMatrix m(pres.relation_count(), n);
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i, ++row) {
    for (std::size_t k = 0; k < n; ++k) m(row, k) = -pres.power_tail(i).exps[k];
    m(row, i) += pres.relative_order(i);
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i, ++row)
      for (std::size_t k = 0; k < n; ++k) m(row, k) = -pres.comm_tail(j, i).exps[k];
  return cokernel_of_rows(m);
}

namespace {

NormalWord reduce_mod(const PcPresentation& g, const Subgroup& n, NormalWord w) {
  const int p = static_cast<int>(g.prime());
  for (auto& h : n.igs) {
    std::size_t d = h.depth();
    if (w.exps[d]) w = g.multiply(w, g.power(h, p - w.exps[d]));
  }
  return w;
}

}  // namespace

NormalWord Quotient::project(const PcPresentation& g, const Subgroup& n, NormalWord w) const {
  w = reduce_mod(g, n, std::move(w));
  std::vector<int> out;
  for (std::size_t k : kept) out.push_back(w.exps[k]);
  return NormalWord(std::move(out));
}

Quotient quotient(const PcPresentation& g, const Subgroup& n) {
  require_prime_step(g, "quotient");
  require(is_normal(g, n), ErrorCode::precondition, "quotient by a non-normal subgroup");
  Quotient q;
  auto depths = n.depths();
  std::vector<std::string> names;
  for (std::size_t k = 0; k < g.rank(); ++k)
    if (!in_set(depths, k)) {
      q.kept.push_back(k);
      names.push_back(g.generator_names()[k]);
    }
  const std::size_t m = q.kept.size();
  std::vector<NormalWord> pw;
  std::vector<std::vector<NormalWord>> cm(m);
  for (std::size_t u = 0; u < m; ++u) {
    NormalWord x = g.generator(q.kept[u]);
    pw.push_back(q.project(g, n, g.power(x, g.prime())));
    for (std::size_t v = 0; v < u; ++v)
      cm[u].push_back(q.project(g, n, g.commutator(x, g.generator(q.kept[v]))));
  }
  q.group = PcPresentation(g.prime(), std::move(names), std::vector<int>(m, 1), std::move(pw),
                           std::move(cm));
  return q;
}

PcPresentation central_quotient(const PcPresentation& g, const Subgroup& k) {
  require(is_central(g, k), ErrorCode::precondition, "subgroup is not central");
  return quotient(g, k).group;
}

PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b) {
  require(a.prime() == b.prime(), ErrorCode::invalid_argument,
          "direct product of groups for different primes");
  const std::size_t na = a.rank(), nb = b.rank(), n = na + nb;
  std::vector<std::string> names = a.generator_names();
  std::set<std::string> used(names.begin(), names.end());
  for (auto nm : b.generator_names()) {
    while (used.count(nm)) nm += "_2";
    used.insert(nm);
    names.push_back(nm);
  }
  std::vector<int> rel;
  for (std::size_t i = 0; i < na; ++i) rel.push_back(a.relative_exponent(i));
  for (std::size_t i = 0; i < nb; ++i) rel.push_back(b.relative_exponent(i));
  auto pad_a = [&](const NormalWord& w) {
    NormalWord r = NormalWord::identity(n);
    std::copy(w.exps.begin(), w.exps.end(), r.exps.begin());
    return r;
  };
  auto pad_b = [&](const NormalWord& w) {
    NormalWord r = NormalWord::identity(n);
    std::copy(w.exps.begin(), w.exps.end(), r.exps.begin() + static_cast<long>(na));
    return r;
  };
  std::vector<NormalWord> pw;
  std::vector<std::vector<NormalWord>> cm(n);
  for (std::size_t i = 0; i < na; ++i) {
    pw.push_back(pad_a(a.power_tail(i)));
    for (std::size_t k = 0; k < i; ++k) cm[i].push_back(pad_a(a.comm_tail(i, k)));
  }
  for (std::size_t i = 0; i < nb; ++i) {
    pw.push_back(pad_b(b.power_tail(i)));
    for (std::size_t k = 0; k < na; ++k) cm[na + i].push_back(NormalWord::identity(n));
    for (std::size_t k = 0; k < i; ++k) cm[na + i].push_back(pad_b(b.comm_tail(i, k)));
  }
  std::string name;
  if (!a.name().empty() || !b.name().empty()) name = a.name() + "x" + b.name();
  return PcPresentation(a.prime(), std::move(names), std::move(rel), std::move(pw), std::move(cm),
                        name);
}

// ----------------------------------------------------------- tables

NormalWord element_at(const PcPresentation& pres, std::size_t index) {
  NormalWord w = pres.identity();
  for (std::size_t k = pres.rank(); k-- > 0;) {
    w.exps[k] = static_cast<int>(index % pres.relative_order(k));
    index /= pres.relative_order(k);
  }
  return w;
}

std::size_t element_index(const PcPresentation& pres, const NormalWord& w) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < pres.rank(); ++k)
    idx = idx * static_cast<std::size_t>(pres.relative_order(k)) + static_cast<std::size_t>(w.exps[k]);
  return idx;
}

CayleyTable cayley_table(const PcPresentation& pres, std::size_t cap) {
  std::size_t n = 1;
  for (std::size_t k = 0; k < pres.rank(); ++k) {
    n *= static_cast<std::size_t>(pres.relative_order(k));
    require(n <= cap, ErrorCode::size_cap,
            "group order exceeds the Cayley table cap of " + std::to_string(cap));
  }
  CayleyTable t;
  t.order = n;
  t.table.resize(n * n);
  std::vector<NormalWord> el;
  el.reserve(n);
  for (std::size_t i = 0; i < n; ++i) el.push_back(element_at(pres, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      t.table[i * n + j] = static_cast<std::uint32_t>(element_index(pres, pres.multiply(el[i], el[j])));
  return t;
}

// ----------------------------------------------------------- isomorphism witness

IsoWitnessResult iso_witness_check(const PcPresentation& src, const PcPresentation& dst,
                                   std::span<const NormalWord> images) {
  using S = IsoWitnessResult::Status;
  if (images.size() != src.rank())
    return {S::bad_image_count, "expected " + std::to_string(src.rank()) + " images, got " +
                                    std::to_string(images.size())};
  if (!(src.order() == dst.order()))
    return {S::size_mismatch, "|src| = p^" + std::to_string(src.order().exponent) +
                                  " but |dst| = p^" + std::to_string(dst.order().exponent)};
  for (auto& w : images)
    if (!dst.valid_word(w)) return {S::bad_image_count, "image is not a normal word of dst"};
  auto eval = [&](const NormalWord& w) {
    NormalWord r = dst.identity();
    for (std::size_t k = 0; k < src.rank(); ++k)
      if (w.exps[k]) r = dst.multiply(r, dst.power(images[k], w.exps[k]));
    return r;
  };
  for (std::size_t i = 0; i < src.rank(); ++i) {
    if (dst.power(images[i], src.relative_order(i)) != eval(src.power_tail(i)))
      return {S::relation_failed, "power relation of " + src.generator_names()[i] + " fails"};
    for (std::size_t k = 0; k < i; ++k)
      if (dst.commutator(images[i], images[k]) != eval(src.comm_tail(i, k)))
        return {S::relation_failed, "commutator relation [" + src.generator_names()[i] + "," +
                                        src.generator_names()[k] + "] fails"};
  }
  PcPresentation rd = refine(dst);
  std::vector<NormalWord> rimg;
  for (auto& w : images) rimg.push_back(to_refined(dst, w));
  Subgroup s = subgroup_closure(rd, rimg);
  if (s.order_exponent() != dst.order().exponent)
    return {S::not_surjective, "images generate a subgroup of order p^" +
                                   std::to_string(s.order_exponent())};
  return {};
}

}  // namespace mlab
