#include "mlab/abgroup.hpp"
#include "mlab/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mlab {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::parse: return "parse";
    case ErrorCode::consistency: return "consistency";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::size_cap: return "size_cap";
    case ErrorCode::not_applicable: return "not_applicable";
    case ErrorCode::ledger: return "ledger";
    case ErrorCode::assertion: return "assertion";
    case ErrorCode::internal: return "internal";
    case ErrorCode::io: return "io";
    case ErrorCode::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

// ---------------------------------------------------------------- Factored

Factored Factored::prime_power(std::uint64_t p, int e) {
  Factored f;
  if (e > 0) f.pf_.emplace_back(p, e);
  return f;
}

Factored Factored::from_integer(std::uint64_t n) {
  require(n > 0, ErrorCode::invalid_argument, "cannot factor 0");
  Factored f;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e) f.pf_.emplace_back(q, e);
  }
  if (n > 1) f.pf_.emplace_back(n, 1);
  return f;
}

int Factored::exponent_of(std::uint64_t p) const {
  for (auto& [q, e] : pf_)
    if (q == p) return e;
  return 0;
}

BigInt Factored::value() const {
  BigInt v = 1;
  for (auto& [q, e] : pf_)
    for (int i = 0; i < e; ++i) v *= q;
  return v;
}

Factored gcd(const Factored& a, const Factored& b) {
  Factored g;
  for (auto& [q, e] : a.pf_) {
    int m = std::min(e, b.exponent_of(q));
    if (m > 0) g.pf_.emplace_back(q, m);
  }
  return g;
}

Factored operator*(const Factored& a, const Factored& b) {
  std::map<std::uint64_t, int> m;
  for (auto& [q, e] : a.pf_) m[q] += e;
  for (auto& [q, e] : b.pf_) m[q] += e;
  Factored r;
  for (auto& [q, e] : m) r.pf_.emplace_back(q, e);
  return r;
}

std::string Factored::to_string() const {
  if (pf_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < pf_.size(); ++i) {
    if (i) os << '*';
    os << pf_[i].first << '^' << pf_[i].second;
  }
  return os.str();
}

// ------------------------------------------------------------ AbelianGroup

namespace {

// prime -> multiset of exponents of the primary cyclic components
using Primary = std::map<std::uint64_t, std::vector<int>>;

Primary primary_parts(const std::vector<Factored>& orders) {
  Primary parts;
  for (auto& d : orders)
    for (auto& [q, e] : d.factors()) parts[q].push_back(e);
  return parts;
}

std::vector<Factored> chain_from_primary(Primary parts) {
  std::size_t len = 0;
  for (auto& [q, es] : parts) {
    std::sort(es.begin(), es.end(), std::greater<>());
    len = std::max(len, es.size());
  }
  // position 0 is the largest invariant
  std::vector<Factored> chain(len);
  for (auto& [q, es] : parts)
    for (std::size_t i = 0; i < es.size(); ++i)
      chain[i] = chain[i] * Factored::prime_power(q, es[i]);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace

AbelianGroup AbelianGroup::from_cyclic_orders(const std::vector<Factored>& orders) {
  AbelianGroup g;
  g.inv_ = chain_from_primary(primary_parts(orders));
  return g;
}

AbelianGroup AbelianGroup::from_cyclic_orders(const std::vector<std::uint64_t>& orders) {
  std::vector<Factored> f;
  f.reserve(orders.size());
  for (auto n : orders) f.push_back(Factored::from_integer(n));
  return from_cyclic_orders(f);
}

AbelianGroup AbelianGroup::from_p_exponents(std::uint64_t p, const std::vector<int>& exps) {
  std::vector<Factored> f;
  for (int e : exps) f.push_back(Factored::prime_power(p, e));
  return from_cyclic_orders(f);
}

Factored AbelianGroup::order() const {
  Factored o;
  for (auto& d : inv_) o = o * d;
  return o;
}

bool AbelianGroup::is_p_group(std::uint64_t p) const {
  for (auto& d : inv_)
    if (d.factors().size() != 1 || d.factors()[0].first != p) return false;
  return true;
}

int AbelianGroup::order_exponent(std::uint64_t p) const {
  require(is_p_group(p), ErrorCode::invalid_argument,
          "abelian group " + to_string() + " is not a " + std::to_string(p) + "-group");
  return order().exponent_of(p);
}

std::vector<int> AbelianGroup::p_exponents(std::uint64_t p) const {
  require(is_p_group(p), ErrorCode::invalid_argument,
          "abelian group " + to_string() + " is not a " + std::to_string(p) + "-group");
  std::vector<int> out;
  for (auto& d : inv_) out.push_back(d.factors()[0].second);
  return out;
}

std::string AbelianGroup::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < inv_.size(); ++i) {
    if (i) s += ',';
    s += inv_[i].to_string();
  }
  return s + "]";
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  auto orders = a.invariants();
  orders.insert(orders.end(), b.invariants().begin(), b.invariants().end());
  return AbelianGroup::from_cyclic_orders(orders);
}

bool multiset_difference(const AbelianGroup& whole, const AbelianGroup& sub,
                         AbelianGroup& out) {
  Primary w = primary_parts(whole.invariants());
  Primary s = primary_parts(sub.invariants());
  for (auto& [q, es] : s) {
    auto& ws = w[q];
    for (int e : es) {
      auto it = std::find(ws.begin(), ws.end(), e);
      if (it == ws.end()) return false;
      ws.erase(it);
    }
  }
  AbelianGroup r;
  std::vector<Factored> parts;
  for (auto& [q, es] : w)
    for (int e : es) parts.push_back(Factored::prime_power(q, e));
  out = AbelianGroup::from_cyclic_orders(parts);
  return true;
}

AbelianGroup abelian_from_torsion_counts(std::uint64_t p, const std::vector<int>& counts) {
  // Number of cyclic factors of order >= p^j is c_j - c_{j-1}.
  std::vector<int> exps;
  int prev = 0;
  std::vector<int> at_least;
  for (int c : counts) {
    at_least.push_back(c - prev);
    prev = c;
  }
  at_least.push_back(0);
  for (std::size_t j = 0; j + 1 < at_least.size(); ++j) {
    int exactly = at_least[j] - at_least[j + 1];
    require(exactly >= 0, ErrorCode::internal, "torsion counts are not those of an abelian group");
    for (int i = 0; i < exactly; ++i) exps.push_back(static_cast<int>(j) + 1);
  }
  return AbelianGroup::from_p_exponents(p, exps);
}

// ------------------------------------------------------------------- SNF

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (auto& r : rows) {
    require(r.size() == cols_, ErrorCode::invalid_argument, "ragged matrix literal");
    for (long long v : r) a_.emplace_back(v);
  }
}

std::vector<BigInt> snf(IntMatrix m) {
  const std::size_t R = m.rows(), C = m.cols();
  const std::size_t D = std::min(R, C);
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < D; ++t) {
    for (;;) {
      // smallest nonzero |entry| in the trailing block
      std::size_t pr = R, pc = C;
      BigInt best;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j) {
          const BigInt& v = m(i, j);
          if (v == 0) continue;
          BigInt av = abs(v);
          if (pr == R || av < best) {
            best = av;
            pr = i;
            pc = j;
          }
        }
      if (pr == R) {
        // rest is zero
        for (std::size_t k = t; k < D; ++k) diag.push_back(0);
        return diag;
      }
      if (pr != t)
        for (std::size_t j = 0; j < C; ++j) std::swap(m(t, j), m(pr, j));
      if (pc != t)
        for (std::size_t i = 0; i < R; ++i) std::swap(m(i, t), m(i, pc));
      const BigInt piv = m(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (m(i, t) == 0) continue;
        BigInt q = m(i, t) / piv;
        for (std::size_t j = t; j < C; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (m(t, j) == 0) continue;
        BigInt q = m(t, j) / piv;
        for (std::size_t i = t; i < R; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // pivot must divide the whole trailing block
      std::size_t bad = R;
      for (std::size_t i = t + 1; i < R && bad == R; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (m(i, j) % piv != 0) {
            bad = i;
            break;
          }
      if (bad == R) break;
      for (std::size_t j = t; j < C; ++j) m(t, j) += m(bad, j);
    }
    diag.push_back(abs(m(t, t)));
  }
  return diag;
}

AbelianGroup cokernel_of_rows(const IntMatrix& relations) {
  const std::size_t C = relations.cols();
  std::vector<BigInt> d = relations.rows() ? snf(relations) : std::vector<BigInt>{};
  require(d.size() == C || C == 0, ErrorCode::precondition,
          "relation matrix has fewer rows than columns: infinite cokernel");
  std::vector<std::uint64_t> orders;
  for (auto& v : d) {
    require(v != 0, ErrorCode::precondition, "infinite cokernel");
    orders.push_back(static_cast<std::uint64_t>(v));
  }
  return AbelianGroup::from_cyclic_orders(orders);
}

AbelianGroup tensor(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<Factored> parts;
  for (auto& d : a.invariants())
    for (auto& e : b.invariants()) parts.push_back(gcd(d, e));
  return AbelianGroup::from_cyclic_orders(parts);
}

AbelianGroup exterior_square(const AbelianGroup& a) {
  const auto& inv = a.invariants();
  std::vector<Factored> parts;
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (std::size_t j = i + 1; j < inv.size(); ++j) parts.push_back(gcd(inv[i], inv[j]));
  return AbelianGroup::from_cyclic_orders(parts);
}

AbelianGroup kunneth(const AbelianGroup& mA, const AbelianGroup& mB,
                     const AbelianGroup& aAb, const AbelianGroup& bAb) {
  return direct_sum(direct_sum(mA, mB), tensor(aAb, bAb));
}

}  // namespace mlab
