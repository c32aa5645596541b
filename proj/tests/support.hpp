#pragma once

#include "mlab/catalog.hpp"
#include "mlab/dsl.hpp"
#include "mlab/error.hpp"

#include <random>
#include <string>

namespace mlab::test {

inline const Catalog& catalog() {
  static const Catalog c = Catalog::load_default();
  return c;
}

inline PcPresentation group(const std::string& id, std::uint32_t p) {
  return catalog().instantiate(id, p);
}

inline AbelianGroup pexp(std::uint64_t p, std::vector<int> e) {
  return AbelianGroup::from_p_exponents(p, e);
}

// Fixed-seed engine per property so failures reproduce.
inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(0x5eed0000u + salt); }

}  // namespace mlab::test
