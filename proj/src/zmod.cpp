#include "mlab/zmod.hpp"
#include "mlab/error.hpp"

#include <algorithm>

namespace mlab {

ResidueRing::ResidueRing(std::uint64_t p, int k) : p_(p), k_(k), m_(1) {
  require(p >= 2 && k >= 1, ErrorCode::invalid_argument, "residue ring needs p >= 2, k >= 1");
  pow_.push_back(1);
  for (int i = 0; i < k; ++i) {
    m_ *= static_cast<std::int64_t>(p);
    require(m_ < (std::int64_t{1} << 31), ErrorCode::invalid_argument,
            "modulus p^k too large for word-sized residue arithmetic");
    pow_.push_back(m_);
  }
}

int ResidueRing::valuation(std::int64_t x) const {
  x = reduce(x);
  if (x == 0) return k_;
  int v = 0;
  const auto p = static_cast<std::int64_t>(p_);
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

std::int64_t ResidueRing::inverse_unit(std::int64_t u) const {
  // extended Euclid on (u, m)
  std::int64_t a = reduce(u), b = m_, x0 = 1, x1 = 0;
  while (b) {
    std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
  }
  require(a == 1, ErrorCode::internal, "inverse of a non-unit");
  return reduce(x0);
}

// ----------------------------------------------------------- RowModule

RowModule::RowModule(const ResidueRing& ring, std::size_t width)
    : ring_(ring), width_(width), pivot_(width) {}

bool RowModule::insert(ModRow row) {
  ++stats_.rows_processed;
  const std::int64_t m = ring_.modulus();
  std::size_t c = 0;
  for (;;) {
    while (c < width_ && row[c] == 0) ++c;
    if (c == width_) return false;
    const int v = ring_.valuation(row[c]);
    // scale so the leading entry is exactly p^v
    const std::int64_t u = row[c] / ring_.p_power(v);
    if (u != 1) {
      const std::int64_t ui = ring_.inverse_unit(u);
      for (std::size_t j = c; j < width_; ++j) row[j] = (row[j] * ui) % m;
    }
    ModRow& piv = pivot_[c];
    if (piv.empty()) {
      piv = std::move(row);
      ++stats_.pivots;
      return true;
    }
    const int a = ring_.valuation(piv[c]);
    if (v < a) {
      std::swap(piv, row);
      ++stats_.pivot_swaps;
    }
    // now row[c] = p^{v'} with v' >= valuation of the pivot entry
    const std::int64_t q = row[c] / piv[c];
    for (std::size_t j = c; j < width_; ++j) {
      row[j] = (row[j] - q * piv[j]) % m;
      if (row[j] < 0) row[j] += m;
    }
  }
}

std::vector<ModRow> RowModule::rows() const {
  std::vector<ModRow> out;
  for (auto& r : pivot_)
    if (!r.empty()) out.push_back(r);
  return out;
}

// ----------------------------------------------------------- Smith forms

namespace {

struct LocalSnf {
  const ResidueRing& ring;
  std::vector<ModRow>& a;  // rows x cols
  std::size_t cols;
  std::vector<ModRow>* track = nullptr;  // rows of Q^-1 D, one per column of a
  std::vector<int> diag;                 // valuations of pivots

  void run() {
    const std::int64_t m = ring.modulus();
    const std::size_t rows = a.size();
    const std::size_t steps = std::min(rows, cols);
    for (std::size_t t = 0; t < steps; ++t) {
      int best = ring.power();
      std::size_t pr = 0, pc = 0;
      for (std::size_t i = t; i < rows && best > 0; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          int v = ring.valuation(a[i][j]);
          if (v < best) {
            best = v;
            pr = i;
            pc = j;
            if (v == 0) break;
          }
        }
      if (best == ring.power()) return;
      std::swap(a[t], a[pr]);
      if (pc != t) {
        for (auto& r : a) std::swap(r[t], r[pc]);
        if (track) std::swap((*track)[t], (*track)[pc]);
      }
      const std::int64_t u = a[t][t] / ring.p_power(best);
      if (u != 1) {
        const std::int64_t ui = ring.inverse_unit(u);
        for (std::size_t i = t; i < rows; ++i) a[i][t] = (a[i][t] * ui) % m;
        if (track)
          for (auto& y : (*track)[t]) y = (y * u) % m;
      }
      const std::int64_t piv = a[t][t];
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const std::int64_t q = a[i][t] / piv;
        for (std::size_t j = t; j < cols; ++j) {
          a[i][j] = (a[i][j] - q * a[t][j]) % m;
          if (a[i][j] < 0) a[i][j] += m;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const std::int64_t q = a[t][j] / piv;
        a[t][j] = 0;
        // column op col_j -= q col_t acts on Q^-1 D as row_t += q row_j
        if (track) {
          auto& yt = (*track)[t];
          const auto& yj = (*track)[j];
          for (std::size_t x = 0; x < yt.size(); ++x) yt[x] = (yt[x] + q * yj[x]) % m;
        }
      }
      diag.push_back(best);
    }
  }
};

}  // namespace

std::vector<int> cokernel_exponents(const ResidueRing& ring, std::vector<ModRow> matrix,
                                    std::size_t cols) {
  const std::size_t rows = matrix.size();
  LocalSnf s{ring, matrix, cols, nullptr, {}};
  s.run();
  std::vector<int> out;
  for (int v : s.diag)
    if (v > 0) out.push_back(v);
  for (std::size_t i = s.diag.size(); i < rows; ++i) out.push_back(ring.power());
  return out;
}

AbelianGroup kernel_mod_image(const RowModule& relations, const std::vector<ModRow>& image_columns) {
  const ResidueRing& ring = relations.ring();
  const std::int64_t m = ring.modulus();
  const std::size_t U = relations.width();
  const std::size_t nd = image_columns.size();
  // Y = D as a U x nd matrix stored by rows
  std::vector<ModRow> y(U, ModRow(nd, 0));
  for (std::size_t j = 0; j < nd; ++j) {
    require(image_columns[j].size() == U, ErrorCode::internal, "image column has wrong length");
    for (std::size_t i = 0; i < U; ++i) y[i][j] = ring.reduce(image_columns[j][i]);
  }
  std::vector<ModRow> a = relations.rows();
  LocalSnf s{ring, a, U, &y, {}};
  s.run();
  const std::size_t rank = s.diag.size();
  // Kernel in the transformed coordinates: component t < rank lives in
  // p^{k - v_t} R (cyclic of order p^{v_t}); components >= rank are free.
  std::vector<std::size_t> comp;
  std::vector<int> comp_exp;
  for (std::size_t t = 0; t < U; ++t) {
    const int v = t < rank ? s.diag[t] : ring.power();
    const std::int64_t scale = ring.p_power(ring.power() - v);
    for (std::size_t j = 0; j < nd; ++j) {
      require(y[t][j] % scale == 0, ErrorCode::internal,
              "coboundary is not a cocycle: image not contained in kernel");
    }
    if (v == 0) continue;
    comp.push_back(t);
    comp_exp.push_back(v);
  }
  const std::size_t K = comp.size();
  std::vector<ModRow> rel(K, ModRow(nd + K, 0));
  for (std::size_t c = 0; c < K; ++c) {
    const std::size_t t = comp[c];
    const int v = comp_exp[c];
    const std::int64_t scale = ring.p_power(ring.power() - v);
    for (std::size_t j = 0; j < nd; ++j) rel[c][j] = (y[t][j] / scale) % m;
    if (v < ring.power()) rel[c][nd + c] = ring.p_power(v);
  }
  return AbelianGroup::from_p_exponents(ring.prime(), cokernel_exponents(ring, rel, nd + K));
}

}  // namespace mlab
