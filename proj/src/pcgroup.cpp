#include "mlab/pcgroup.hpp"
#include "mlab/error.hpp"

#include <algorithm>
#include <sstream>

namespace mlab {

bool NormalWord::is_identity() const {
  return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
}

std::size_t NormalWord::depth() const {
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] != 0) return i;
  return exps.size();
}

namespace {

int ipow(int b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    r *= b;
    require(r < (1LL << 30), ErrorCode::invalid_argument, "relative order too large");
  }
  return static_cast<int>(r);
}

}  // namespace

PcPresentation::PcPresentation(std::uint32_t p, std::vector<std::string> names,
                               std::vector<int> rel_exponents, std::vector<NormalWord> power_tails,
                               std::vector<std::vector<NormalWord>> comm_tails, std::string name)
    : p_(p),
      name_(std::move(name)),
      names_(std::move(names)),
      rel_exp_(std::move(rel_exponents)),
      power_(std::move(power_tails)),
      comm_(std::move(comm_tails)) {
  const std::size_t n = names_.size();
  require(p_ >= 2, ErrorCode::invalid_argument, "prime must be at least 2");
  for (std::uint32_t q = 2; q * q <= p_; ++q)
    require(p_ % q != 0, ErrorCode::invalid_argument, std::to_string(p_) + " is not prime");
  require(rel_exp_.size() == n && power_.size() == n && comm_.size() == n,
          ErrorCode::invalid_argument, "presentation arrays disagree in length");
  for (std::size_t i = 0; i < n; ++i) {
    require(rel_exp_[i] >= 1, ErrorCode::invalid_argument,
            "relative order of " + names_[i] + " must be p^e with e >= 1");
    rel_order_.push_back(ipow(static_cast<int>(p_), rel_exp_[i]));
  }
  auto check_tail = [&](const NormalWord& w, std::size_t lowest, const std::string& what) {
    require(w.size() == n, ErrorCode::invalid_argument, what + ": tail has wrong length");
    for (std::size_t k = 0; k < n; ++k) {
      require(w.exps[k] >= 0 && w.exps[k] < rel_order_[k], ErrorCode::invalid_argument,
              what + ": tail exponent out of range");
      require(w.exps[k] == 0 || k > lowest, ErrorCode::invalid_argument,
              what + ": tail uses generator " + names_[k] + " of too low index");
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    check_tail(power_[i], i, "power relation of " + names_[i]);
    require(comm_[i].size() == i, ErrorCode::invalid_argument, "commutator table is not triangular");
    for (std::size_t k = 0; k < i; ++k)
      check_tail(comm_[i][k], k, "commutator [" + names_[i] + "," + names_[k] + "]");
  }
}

PcPresentation PcPresentation::abelian_free(std::uint32_t p, std::vector<std::string> names,
                                            std::vector<int> rel_exponents) {
  const std::size_t n = names.size();
  std::vector<NormalWord> pw(n, NormalWord::identity(n));
  std::vector<std::vector<NormalWord>> cm(n);
  for (std::size_t j = 0; j < n; ++j) cm[j].assign(j, NormalWord::identity(n));
  return PcPresentation(p, std::move(names), std::move(rel_exponents), std::move(pw),
                        std::move(cm));
}

std::optional<std::size_t> PcPresentation::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

bool PcPresentation::prime_step() const {
  return std::all_of(rel_exp_.begin(), rel_exp_.end(), [](int e) { return e == 1; });
}

POrder PcPresentation::order() const {
  int e = 0;
  for (int x : rel_exp_) e += x;
  return {p_, e};
}

NormalWord PcPresentation::generator(std::size_t i, int power) const {
  NormalWord w = identity();
  w.exps[i] = 1;
  if (power == 1) return w;
  if (power >= 0 && power < rel_order_[i]) {
    w.exps[i] = power;
    return w;
  }
  return this->power(w, power);
}

bool PcPresentation::valid_word(const NormalWord& w) const {
  if (w.size() != rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i)
    if (w.exps[i] < 0 || w.exps[i] >= rel_order_[i]) return false;
  return true;
}

std::string PcPresentation::format(const NormalWord& w) const {
  if (w.is_identity()) return "1";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!w.exps[i]) continue;
    if (!first) os << '*';
    first = false;
    os << names_[i];
    if (w.exps[i] != 1) os << '^' << w.exps[i];
  }
  return os.str();
}

// Collection from the left. The stack holds letters (gen, count) still to be
// multiplied on the right of `exps`; its back is the next letter.
void PcPresentation::collect_into(std::vector<int>& exps, std::vector<std::pair<int, int>>& stack,
                                  RelationTally* tally) const {
  const int n = static_cast<int>(rank());
  auto push_word_reversed = [&](const NormalWord& w) {
    for (int k = n - 1; k >= 0; --k)
      if (w.exps[k]) stack.emplace_back(k, w.exps[k]);
  };
  while (!stack.empty()) {
    auto [g, c] = stack.back();
    stack.pop_back();
    if (c == 0) continue;
    int last = n - 1;
    while (last > g && exps[last] == 0) --last;
    const int r = rel_order_[g];
    if (last == g) {
      // nothing to the right of g: accumulate and reduce by the power relation
      exps[g] += c;
      const int over = exps[g] / r;
      exps[g] %= r;
      if (over) {
        if (tally) (*tally)[power_relation_index(g)] += over;
        const NormalWord& t = power_[g];
        if (!t.is_identity())
          for (int i = 0; i < over; ++i) push_word_reversed(t);
      }
      continue;
    }
    if (c > 1) stack.emplace_back(g, c - 1);
    // the suffix is conjugated by g: g_k^g = g_k [g_k, g]
    for (int k = last; k > g; --k) {
      const int a = exps[k];
      if (!a) continue;
      const NormalWord& t = comm_[k][g];
      if (tally) (*tally)[comm_relation_index(k, g)] += a;
      if (t.is_identity()) {
        stack.emplace_back(k, a);
      } else {
        for (int rep = 0; rep < a; ++rep) {
          push_word_reversed(t);
          stack.emplace_back(k, 1);
        }
      }
      exps[k] = 0;
    }
    if (++exps[g] == r) {
      exps[g] = 0;
      if (tally) (*tally)[power_relation_index(g)] += 1;
      push_word_reversed(power_[g]);
    }
  }
}

NormalWord PcPresentation::multiply(const NormalWord& a, const NormalWord& b,
                                    RelationTally* tally) const {
  if (tally && tally->size() != relation_count()) tally->assign(relation_count(), 0);
  std::vector<int> exps = a.exps;
  std::vector<std::pair<int, int>> stack;
  for (int k = static_cast<int>(rank()) - 1; k >= 0; --k)
    if (b.exps[k]) stack.emplace_back(k, b.exps[k]);
  collect_into(exps, stack, tally);
  return NormalWord(std::move(exps));
}

NormalWord PcPresentation::inverse(const NormalWord& a) const {
  NormalWord z = a, y = identity();
  for (std::size_t i = 0; i < rank(); ++i) {
    if (!z.exps[i]) continue;
    const int k = rel_order_[i] - z.exps[i];
    z = multiply(z, generator(i, k));
    y.exps[i] = k;
  }
  return y;
}

NormalWord PcPresentation::power(const NormalWord& a, long long k) const {
  NormalWord base = k < 0 ? inverse(a) : a;
  unsigned long long e = static_cast<unsigned long long>(k < 0 ? -k : k);
  NormalWord r = identity();
  while (e) {
    if (e & 1) r = multiply(r, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return r;
}

NormalWord PcPresentation::commutator(const NormalWord& a, const NormalWord& b) const {
  // a^-1 b^-1 a b = (b a)^-1 (a b)
  return multiply(inverse(multiply(b, a)), multiply(a, b));
}

NormalWord PcPresentation::conjugate(const NormalWord& a, const NormalWord& by) const {
  return multiply(inverse(by), multiply(a, by));
}

int PcPresentation::element_order_exponent(const NormalWord& a) const {
  int e = 0;
  NormalWord x = a;
  while (!x.is_identity()) {
    x = power(x, p_);
    ++e;
  }
  return e;
}

NormalWord PcPresentation::collect(std::span<const Letter> word) const {
  NormalWord r = identity();
  for (const Letter& l : word) {
    require(l.gen >= 0 && static_cast<std::size_t>(l.gen) < rank(), ErrorCode::invalid_argument,
            "letter references unknown generator");
    if (l.power >= 0) {
      NormalWord g = identity();
      g.exps[l.gen] = 1;
      r = multiply(r, power(g, l.power));
    } else {
      NormalWord g = identity();
      g.exps[l.gen] = 1;
      r = multiply(r, power(inverse(g), -static_cast<long long>(l.power)));
    }
  }
  return r;
}

// ----------------------------------------------------------- consistency

std::string Overlap::describe(const PcPresentation& pres) const {
  const auto& nm = pres.generator_names();
  std::ostringstream os;
  switch (kind) {
    case Kind::triple:
      os << nm[k] << "(" << nm[j] << " " << nm[i] << ") vs (" << nm[k] << " " << nm[j] << ")"
         << nm[i];
      break;
    case Kind::power_left:
      os << nm[j] << "^" << pres.relative_order(j) << " " << nm[i];
      break;
    case Kind::power_right:
      os << nm[j] << " " << nm[i] << "^" << pres.relative_order(i);
      break;
    case Kind::power_self:
      os << nm[i] << "^" << pres.relative_order(i) + 1;
      break;
  }
  return os.str();
}

std::vector<Overlap> overlap_tests(const PcPresentation& pres) {
  const std::size_t n = pres.rank();
  std::vector<Overlap> out;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i) out.push_back({Overlap::Kind::triple, k, j, i});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      out.push_back({Overlap::Kind::power_left, 0, j, i});
      out.push_back({Overlap::Kind::power_right, 0, j, i});
    }
  for (std::size_t i = 0; i < n; ++i) out.push_back({Overlap::Kind::power_self, 0, 0, i});
  return out;
}

OverlapOutcome evaluate_overlap(const PcPresentation& pres, const Overlap& ov) {
  OverlapOutcome o;
  o.lhs_tally.assign(pres.relation_count(), 0);
  o.rhs_tally.assign(pres.relation_count(), 0);
  auto add = [](RelationTally& into, const RelationTally& t) {
    for (std::size_t x = 0; x < into.size(); ++x) into[x] += t[x];
  };
  RelationTally t1, t2;
  auto mul = [&](const NormalWord& a, const NormalWord& b, RelationTally& into) {
    RelationTally t(pres.relation_count(), 0);
    NormalWord r = pres.multiply(a, b, &t);
    add(into, t);
    return r;
  };
  const auto gen = [&](std::size_t i, int e = 1) {
    NormalWord w = pres.identity();
    w.exps[i] = e;
    return w;
  };
  switch (ov.kind) {
    case Overlap::Kind::triple: {
      NormalWord ji = mul(gen(ov.j), gen(ov.i), o.lhs_tally);
      o.lhs = mul(gen(ov.k), ji, o.lhs_tally);
      NormalWord kj = mul(gen(ov.k), gen(ov.j), o.rhs_tally);
      o.rhs = mul(kj, gen(ov.i), o.rhs_tally);
      break;
    }
    case Overlap::Kind::power_left: {
      // (g_j^{r_j}) g_i  vs  g_j^{r_j - 1} (g_j g_i)
      o.lhs_tally[pres.power_relation_index(ov.j)] += 1;
      o.lhs = mul(pres.power_tail(ov.j), gen(ov.i), o.lhs_tally);
      NormalWord ji = mul(gen(ov.j), gen(ov.i), o.rhs_tally);
      o.rhs = mul(gen(ov.j, pres.relative_order(ov.j) - 1), ji, o.rhs_tally);
      break;
    }
    case Overlap::Kind::power_right: {
      // g_j (g_i^{r_i})  vs  (g_j g_i) g_i^{r_i - 1}
      o.lhs_tally[pres.power_relation_index(ov.i)] += 1;
      o.lhs = mul(gen(ov.j), pres.power_tail(ov.i), o.lhs_tally);
      NormalWord ji = mul(gen(ov.j), gen(ov.i), o.rhs_tally);
      o.rhs = mul(ji, gen(ov.i, pres.relative_order(ov.i) - 1), o.rhs_tally);
      break;
    }
    case Overlap::Kind::power_self: {
      // (g_i^{r_i}) g_i  vs  g_i (g_i^{r_i})
      o.lhs_tally[pres.power_relation_index(ov.i)] += 1;
      o.lhs = mul(pres.power_tail(ov.i), gen(ov.i), o.lhs_tally);
      o.rhs_tally[pres.power_relation_index(ov.i)] += 1;
      o.rhs = mul(gen(ov.i), pres.power_tail(ov.i), o.rhs_tally);
      break;
    }
  }
  return o;
}

ConsistencyReport check_consistency(const PcPresentation& pres) {
  ConsistencyReport rep;
  rep.order = pres.order();
  for (const Overlap& ov : overlap_tests(pres)) {
    ++rep.tests_run;
    OverlapOutcome o = evaluate_overlap(pres, ov);
    if (o.lhs != o.rhs) {
      rep.consistent = false;
      rep.failed = ov;
      rep.failure = "overlap " + ov.describe(pres) + ": " + pres.format(o.lhs) + " != " +
                    pres.format(o.rhs);
      return rep;
    }
  }
  return rep;
}

}  // namespace mlab
