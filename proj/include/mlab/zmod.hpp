#pragma once

// Linear algebra over the local ring Z/p^k: streamed row echelon forms with
// valuation-ordered pivots, Smith forms, and kernel-modulo-image quotients.

#include "mlab/abgroup.hpp"

#include <cstdint>
#include <vector>

namespace mlab {

class ResidueRing {
 public:
  ResidueRing(std::uint64_t p, int k);

  std::uint64_t prime() const { return p_; }
  int power() const { return k_; }
  std::int64_t modulus() const { return m_; }

  std::int64_t reduce(std::int64_t x) const {
    x %= m_;
    return x < 0 ? x + m_ : x;
  }
  /// p-adic valuation in [0, k]; k means zero.
  int valuation(std::int64_t x) const;
  std::int64_t p_power(int e) const { return pow_[static_cast<std::size_t>(e)]; }
  std::int64_t inverse_unit(std::int64_t u) const;

 private:
  std::uint64_t p_;
  int k_;
  std::int64_t m_;
  std::vector<std::int64_t> pow_;
};

using ModRow = std::vector<std::int64_t>;

struct EliminationStats {
  std::size_t rows_processed = 0;
  std::size_t pivots = 0;
  std::size_t pivot_swaps = 0;
};

/// Row module of a matrix over Z/p^k kept in echelon form: at most one row
/// per leading column, leading entry a power of p. Rows are streamed in and
/// reduced immediately; the full matrix is never stored.
class RowModule {
 public:
  RowModule(const ResidueRing& ring, std::size_t width);

  /// Returns true if the module grew.
  bool insert(ModRow row);

  std::size_t width() const { return width_; }
  const ResidueRing& ring() const { return ring_; }
  /// Echelon rows in leading-column order.
  std::vector<ModRow> rows() const;
  const EliminationStats& stats() const { return stats_; }

 private:
  ResidueRing ring_;
  std::size_t width_;
  std::vector<ModRow> pivot_;  // indexed by leading column; empty = none
  EliminationStats stats_;
};

/// Exponents e with R^rows / (column span) = sum of Z/p^e (zeros dropped).
std::vector<int> cokernel_exponents(const ResidueRing& ring, std::vector<ModRow> matrix,
                                    std::size_t cols);

/// ker(C) / im(D) where C's row module is `relations` and D is given by its
/// columns (each of length relations.width()). Every column of D must lie in
/// ker(C); violations raise an internal error.
AbelianGroup kernel_mod_image(const RowModule& relations, const std::vector<ModRow>& image_columns);

}  // namespace mlab
