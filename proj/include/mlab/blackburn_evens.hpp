#pragma once

// Schur multipliers of odd-p class-2 groups with G/G' and G' elementary
// abelian. V = G/G' and W = G' are GF(p) spaces; (v1, v2) is the commutator
// pairing V x V -> W and f: V -> W the p-th power map. With
//   X1 = < u (x) (v, w) + v (x) (w, u) + w (x) (u, v) >,  X2 = < v (x) f(v) >,
// N = V (x) W / (X1 + X2) and sigma(v1 ^ v2) = v1 (x) f(v2) + X, the
// multiplier is an extension of ker(rho: V^V -> W) by N in which
// m^p = sigma(m).

#include "mlab/multiplier.hpp"
#include "mlab/pcgroup.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mlab {

using GfRow = std::vector<int>;

struct BeData {
  std::uint32_t p = 0;
  std::size_t dV = 0, dW = 0;
  /// pairing[a][b] = W-coordinates of [r_a, r_b]
  std::vector<std::vector<GfRow>> pairing;
  /// f[a] = W-coordinates of r_a^p
  std::vector<GfRow> f;
  /// echelon basis of X inside V (x) W; coordinate a * dW + w
  std::vector<GfRow> x_basis;
  std::size_t x1_rank = 0, x2_rank = 0;
};

struct BeExtensionData {
  std::size_t dN = 0;
  std::size_t wedge_dim = 0;       // dV (dV - 1) / 2
  std::vector<GfRow> ker_rho;      // basis, coordinates on e_a ^ e_b (a < b)
  std::size_t sigma_rank = 0;      // rank of sigma-bar: ker rho -> N
};

/// Reason the construction does not apply, or nullopt.
std::optional<std::string> be_inapplicable(const PcPresentation& pres);

/// `seed` != 0 picks a random V-basis of coset representatives (random
/// invertible change of basis, random G' cofactors).
BeData build_be_data(const PcPresentation& pres, std::uint64_t seed = 0);
BeExtensionData be_extension(const BeData& d);

MultiplierResult multiplier_via_be(const PcPresentation& pres, std::uint64_t seed = 0);

/// Rank of the span over GF(p).
std::size_t gf_rank(std::uint32_t p, std::vector<GfRow> rows);

}  // namespace mlab
