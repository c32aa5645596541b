#pragma once

// Second cohomology with trivial coefficients Z_m, and the Schur multiplier
// read off from it:
//
//   H^2(G; Z_m) = Ext(G^ab, Z_m) + Hom(M(G), Z_m),
//
// which for m = |G| is G^ab + M(G) as abstract groups.
//
// Two independent engines compute H^2:
//   * the Cayley-table oracle works on normalized 2-cochains of the table;
//   * the tails engine works on a pc presentation, with 2-cocycles given by
//     tails of the defining relations subject to the overlap conditions.

#include "mlab/multiplier.hpp"
#include "mlab/pcgroup.hpp"
#include "mlab/zmod.hpp"

#include <cstddef>
#include <cstdint>
#include <span>

namespace mlab {

struct H2Result {
  std::int64_t modulus = 0;
  AbelianGroup group;  // invariants of H^2(G; Z_m)
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  EliminationStats stats;
};

inline constexpr std::size_t default_oracle_cap = 128;
inline constexpr std::size_t default_memory_budget = std::size_t{1} << 30;

/// MLAB_ORACLE_CAP if set, else the default cap.
std::size_t oracle_cap_from_env();

/// Raises on non-prime-power m, and when the elimination would exceed the
/// memory budget.
H2Result h2_trivial_coeffs(const CayleyTable& t, std::int64_t m,
                           std::size_t memory_budget = default_memory_budget);

/// G/G' computed from the table alone.
AbelianGroup abelianization_from_table(const CayleyTable& t);

struct OracleOptions {
  std::size_t cap = oracle_cap_from_env();
  std::size_t memory_budget = default_memory_budget;
};

MultiplierResult multiplier_via_oracle(const PcPresentation& pres, OracleOptions opts = {});

/// H^2(G; Z_m) from tails of the pc relations; m a power of the group's prime.
H2Result h2_via_tails(const PcPresentation& pres, std::int64_t m);
MultiplierResult multiplier_via_tails(const PcPresentation& pres);

/// Central extension of G by Z_m = <z> whose relations carry the tail
/// values z^{tails[r]} (relation order as in PcPresentation).
PcPresentation central_extension(const PcPresentation& g, std::span<const std::int64_t> tails,
                                 int m_exponent);

}  // namespace mlab
