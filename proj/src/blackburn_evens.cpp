#include "mlab/blackburn_evens.hpp"
#include "mlab/error.hpp"

#include <algorithm>
#include <random>

namespace mlab {

namespace {

int modp(long long x, std::uint32_t p) {
  const long long r = x % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

int inv_modp(int a, std::uint32_t p) {
  int r = 1;
  for (std::uint32_t e = p - 2, b = static_cast<std::uint32_t>(a); e; e >>= 1) {
    if (e & 1) r = static_cast<int>((1LL * r * b) % p);
    b = static_cast<std::uint32_t>((1ULL * b * b) % p);
  }
  return r;
}

// Reduced echelon basis over GF(p), pivots at lowest index.
class GfSpan {
 public:
  GfSpan(std::uint32_t p, std::size_t width) : p_(p), width_(width) {}

  GfRow reduce(GfRow v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const int c = v[piv_[r]];
      if (!c) continue;
      for (std::size_t j = 0; j < width_; ++j)
        v[j] = modp(v[j] - 1LL * c * rows_[r][j], p_);
    }
    return v;
  }

  bool add(GfRow v) {
    v = reduce(std::move(v));
    std::size_t c = 0;
    while (c < width_ && v[c] == 0) ++c;
    if (c == width_) return false;
    const int u = inv_modp(v[c], p_);
    for (auto& x : v) x = static_cast<int>((1LL * x * u) % p_);
    for (auto& r : rows_) {
      const int k = r[c];
      if (!k) continue;
      for (std::size_t j = 0; j < width_; ++j) r[j] = modp(r[j] - 1LL * k * v[j], p_);
    }
    rows_.push_back(std::move(v));
    piv_.push_back(c);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  const std::vector<GfRow>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return piv_; }

 private:
  std::uint32_t p_;
  std::size_t width_;
  std::vector<GfRow> rows_;
  std::vector<std::size_t> piv_;
};

struct Prepared {
  StructureReport s;
  Quotient q;
};

Prepared prepare(const PcPresentation& pres) {
  if (auto why = be_inapplicable(pres)) throw Error(ErrorCode::precondition, "blackburn-evens: " + *why);
  Prepared r{lower_central_report(pres), {}};
  r.q = quotient(r.s.group, r.s.derived);
  return r;
}

}  // namespace

std::size_t gf_rank(std::uint32_t p, std::vector<GfRow> rows) {
  if (rows.empty()) return 0;
  GfSpan s(p, rows[0].size());
  for (auto& r : rows) s.add(std::move(r));
  return s.rank();
}

std::optional<std::string> be_inapplicable(const PcPresentation& pres) {
  if (pres.prime() == 2) return "even p";
  StructureReport s = lower_central_report(pres);
  if (s.nilpotency_class != 2)
    return "nilpotency class " + std::to_string(s.nilpotency_class) + ", not 2";
  const PcPresentation& g = s.group;
  for (std::size_t i = 0; i < g.rank(); ++i)
    if (!contains(g, s.derived, g.power(g.generator(i), g.prime())))
      return "G/G' not elementary abelian";
  for (const auto& w : s.derived.igs)
    if (!g.power(w, g.prime()).is_identity()) return "G' not elementary abelian";
  return std::nullopt;
}

BeData build_be_data(const PcPresentation& pres, std::uint64_t seed) {
  Prepared pr = prepare(pres);
  const PcPresentation& g = pr.s.group;
  const Subgroup& der = pr.s.derived;
  const std::uint32_t p = g.prime();
  BeData d;
  d.p = p;
  d.dV = pr.q.kept.size();
  d.dW = der.igs.size();

  std::vector<NormalWord> reps;
  for (std::size_t k : pr.q.kept) reps.push_back(g.generator(k));
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> digit(0, static_cast<int>(p) - 1);
    std::vector<GfRow> a;
    for (;;) {
      a.assign(d.dV, GfRow(d.dV));
      for (auto& row : a)
        for (auto& x : row) x = digit(rng);
      if (gf_rank(p, a) == d.dV) break;
    }
    std::vector<NormalWord> fresh;
    for (std::size_t i = 0; i < d.dV; ++i) {
      NormalWord w = g.identity();
      for (std::size_t j = 0; j < d.dV; ++j) w = g.multiply(w, g.power(reps[j], a[i][j]));
      for (const auto& z : der.igs) w = g.multiply(w, g.power(z, digit(rng)));
      fresh.push_back(std::move(w));
    }
    reps = std::move(fresh);
  }

  auto wcoords = [&](const NormalWord& w) {
    std::vector<int> c = igs_coordinates(g, der, w);
    GfRow r(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) r[i] = modp(c[i], p);
    return r;
  };
  d.pairing.assign(d.dV, std::vector<GfRow>(d.dV));
  for (std::size_t a = 0; a < d.dV; ++a) {
    for (std::size_t b = 0; b < d.dV; ++b) d.pairing[a][b] = wcoords(g.commutator(reps[a], reps[b]));
    d.f.push_back(wcoords(g.power(reps[a], p)));
  }

  const std::size_t width = d.dV * d.dW;
  auto tensor_into = [&](GfRow& out, std::size_t a, const GfRow& w, int scale) {
    for (std::size_t k = 0; k < d.dW; ++k)
      out[a * d.dW + k] = modp(out[a * d.dW + k] + 1LL * scale * w[k], p);
  };
  GfSpan x(p, width), x1(p, width), x2(p, width);
  for (std::size_t a = 0; a < d.dV; ++a)
    for (std::size_t b = a + 1; b < d.dV; ++b)
      for (std::size_t c = b + 1; c < d.dV; ++c) {
        GfRow v(width, 0);
        tensor_into(v, a, d.pairing[b][c], 1);
        tensor_into(v, b, d.pairing[c][a], 1);
        tensor_into(v, c, d.pairing[a][b], 1);
        x1.add(v);
        x.add(std::move(v));
      }
  for (std::size_t a = 0; a < d.dV; ++a) {
    GfRow v(width, 0);
    tensor_into(v, a, d.f[a], 1);
    x2.add(v);
    x.add(std::move(v));
    for (std::size_t b = a + 1; b < d.dV; ++b) {
      GfRow fab(d.dW);
      for (std::size_t k = 0; k < d.dW; ++k) fab[k] = modp(d.f[a][k] + d.f[b][k], p);
      GfRow s(width, 0);
      tensor_into(s, a, fab, 1);
      tensor_into(s, b, fab, 1);
      x2.add(s);
      x.add(std::move(s));
    }
  }
  d.x_basis = x.rows();
  d.x1_rank = x1.rank();
  d.x2_rank = x2.rank();
  return d;
}

BeExtensionData be_extension(const BeData& d) {
  const std::uint32_t p = d.p;
  const std::size_t width = d.dV * d.dW;
  BeExtensionData e;
  e.dN = width - d.x_basis.size();
  GfSpan x(p, width);
  for (const auto& r : d.x_basis) x.add(r);

  std::vector<std::pair<std::size_t, std::size_t>> wedge;
  for (std::size_t a = 0; a < d.dV; ++a)
    for (std::size_t b = a + 1; b < d.dV; ++b) wedge.emplace_back(a, b);
  e.wedge_dim = wedge.size();

  // ker rho: nullspace of the dW x wedge_dim matrix, via the transpose trick
  // on [rho^T | I].
  const std::size_t L = wedge.size();
  GfSpan aug(p, d.dW + L);
  for (std::size_t t = 0; t < L; ++t) {
    GfRow r(d.dW + L, 0);
    for (std::size_t k = 0; k < d.dW; ++k) r[k] = d.pairing[wedge[t].first][wedge[t].second][k];
    r[d.dW + t] = 1;
    aug.add(std::move(r));
  }
  std::size_t rho_rank = 0;
  for (std::size_t r = 0; r < aug.rank(); ++r) {
    if (aug.pivots()[r] < d.dW) {
      ++rho_rank;
    } else {
      e.ker_rho.emplace_back(aug.rows()[r].begin() + static_cast<long>(d.dW), aug.rows()[r].end());
    }
  }
  require(rho_rank == d.dW, ErrorCode::internal, "commutator pairing does not span G'");

  GfSpan image(p, width);
  for (const auto& k : e.ker_rho) {
    GfRow s(width, 0);
    for (std::size_t t = 0; t < L; ++t) {
      if (!k[t]) continue;
      const auto [a, b] = wedge[t];
      for (std::size_t w = 0; w < d.dW; ++w)
        s[a * d.dW + w] = modp(s[a * d.dW + w] + 1LL * k[t] * d.f[b][w], p);
    }
    image.add(x.reduce(std::move(s)));
  }
  e.sigma_rank = image.rank();
  return e;
}

MultiplierResult multiplier_via_be(const PcPresentation& pres, std::uint64_t seed) {
  BeData d = build_be_data(pres, seed);
  BeExtensionData e = be_extension(d);
  const int log_m = static_cast<int>(e.dN + e.ker_rho.size());
  const int kernel_sigma = static_cast<int>(e.ker_rho.size() - e.sigma_rank);
  const int a = log_m - (kernel_sigma + static_cast<int>(e.dN));
  const int b = log_m - 2 * a;
  require(a >= 0 && b >= 0, ErrorCode::internal, "blackburn-evens structure counts negative");
  std::vector<int> exps(static_cast<std::size_t>(b), 1);
  exps.insert(exps.end(), static_cast<std::size_t>(a), 2);
  MultiplierResult r;
  r.method = Method::blackburn_evens;
  r.multiplier = AbelianGroup::from_p_exponents(d.p, exps);
  r.trace.push_back("be: dV=" + std::to_string(d.dV) + " dW=" + std::to_string(d.dW) +
                    " dimX=" + std::to_string(d.x_basis.size()) + " dN=" + std::to_string(e.dN) +
                    " dim ker rho=" + std::to_string(e.ker_rho.size()) +
                    " rank sigma=" + std::to_string(e.sigma_rank) + " -> " +
                    r.multiplier.to_string());
  return r;
}

}  // namespace mlab
