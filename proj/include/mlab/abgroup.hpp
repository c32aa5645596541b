#pragma once

// Finite abelian groups in invariant-factor form, integer Smith normal form,
// and the tensor / exterior-square identities used for multipliers of
// abelian groups and direct products.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mlab {

using BigInt = boost::multiprecision::cpp_int;

/// A positive integer held as its prime factorization, primes ascending.
class Factored {
 public:
  Factored() = default;  // the integer 1
  static Factored prime_power(std::uint64_t p, int e);
  static Factored from_integer(std::uint64_t n);

  const std::vector<std::pair<std::uint64_t, int>>& factors() const { return pf_; }
  bool is_one() const { return pf_.empty(); }
  int exponent_of(std::uint64_t p) const;
  BigInt value() const;

  friend Factored gcd(const Factored& a, const Factored& b);
  friend Factored operator*(const Factored& a, const Factored& b);
  friend bool operator==(const Factored&, const Factored&) = default;

  /// `p^e` for prime powers, `p^e*q^f` otherwise, `1` for one.
  std::string to_string() const;

 private:
  std::vector<std::pair<std::uint64_t, int>> pf_;
};

/// Finite abelian group as an invariant-factor chain d1 | d2 | ... | dk,
/// every d_i > 1. The empty chain is the trivial group.
class AbelianGroup {
 public:
  AbelianGroup() = default;

  /// Builds the canonical chain of the direct sum of cyclic groups of the
  /// given orders (any order, any divisibility pattern; 1s are dropped).
  static AbelianGroup from_cyclic_orders(const std::vector<Factored>& orders);
  static AbelianGroup from_cyclic_orders(const std::vector<std::uint64_t>& orders);
  /// Z_{p^e1} + Z_{p^e2} + ...
  static AbelianGroup from_p_exponents(std::uint64_t p, const std::vector<int>& exps);
  static AbelianGroup elementary(std::uint64_t p, int rank) {
    return from_p_exponents(p, std::vector<int>(rank, 1));
  }

  const std::vector<Factored>& invariants() const { return inv_; }
  bool is_trivial() const { return inv_.empty(); }
  std::size_t rank() const { return inv_.size(); }
  Factored order() const;
  /// log_p of the order; the group must be a p-group.
  int order_exponent(std::uint64_t p) const;
  /// Exponents e_i of the invariants p^{e_i}, ascending; requires a p-group.
  std::vector<int> p_exponents(std::uint64_t p) const;
  bool is_p_group(std::uint64_t p) const;

  /// `[p^e1,p^e2,...]`
  std::string to_string() const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::vector<Factored> inv_;
};

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);

/// Removes the invariants of `sub` from the multiset of invariants of
/// `whole` (both p-groups, cyclic decompositions into prime powers).
/// Returns false if `sub` is not a sub-multiset.
bool multiset_difference(const AbelianGroup& whole, const AbelianGroup& sub,
                         AbelianGroup& out);

/// Abelian p-group from the counts c_j = log_p |A[p^j]| for j = 1, 2, ...
/// (the sequence must become constant).
AbelianGroup abelian_from_torsion_counts(std::uint64_t p, const std::vector<int>& counts);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  BigInt& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> a_;
};

/// Smith normal form diagonal, length min(rows, cols), non-negative,
/// each entry dividing the next; zeros (free rank) come last.
std::vector<BigInt> snf(IntMatrix m);

/// Cokernel Z^cols / (row span) as an abelian group, provided it is finite;
/// free rank raises.
AbelianGroup cokernel_of_rows(const IntMatrix& relations);

AbelianGroup tensor(const AbelianGroup& a, const AbelianGroup& b);
/// For finite abelian A this is also M(A).
AbelianGroup exterior_square(const AbelianGroup& a);
/// M(A x B) from M(A), M(B) and the abelianizations of A and B.
AbelianGroup kunneth(const AbelianGroup& mA, const AbelianGroup& mB,
                     const AbelianGroup& aAb, const AbelianGroup& bAb);

}  // namespace mlab
