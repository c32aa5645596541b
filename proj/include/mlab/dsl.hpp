#pragma once

// Text format for parametric presentations and catalog entries.
//
//   prime 2                      fixed prime (optional)
//   gen a p^2                    generator with relative order p^2
//   pow a = b^p*c                a^{relative order} = word
//   comm b a = c^(p-1)           [b, a] = word, either argument order
//
// Words are *-separated atoms name^expr or the literal 1; expressions use
// integers, the symbol p, + - * / ^ and parentheses (division must be
// exact). Relations not given are trivial.
//
// Catalog metadata:
//   name "<display name>"
//   constraint odd|two|any
//   product <ID> <ID> ...        direct product of other entries
//   expect multiplier p^1 p^1 "<source>"   (1 for the trivial group)
//   expect order p^9 "<source>"
//   expect t 6 "<source>"
//   suite <suite> <label>
//   squeeze <script file>
//   disabled "<reason>"
//   witness_for <ID>             the entry is a cover E with E/Z(E) = <ID>
//   image <word>                 image of the target's i-th generator

#include "mlab/pcgroup.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mlab {

/// Value of an exponent expression at p.
long long eval_expr(const std::string& expr, long long p);

struct DslStatement {
  std::size_t line = 0;
  std::string keyword;
  std::vector<std::string> args;  // split on whitespace; '=' kept as a token
};

struct Expectation {
  enum class Kind { multiplier, order, t };
  Kind kind = Kind::order;
  std::vector<std::string> values;  // p-power expressions, or the t value
  std::string source;
};

struct SuiteTag {
  std::string suite;
  std::string label;
};

struct CatalogEntry {
  std::string id;
  std::string display_name;
  std::string constraint = "any";
  std::optional<std::uint32_t> fixed_prime;
  std::vector<DslStatement> presentation;  // gen / pow / comm
  std::vector<std::string> product;
  std::vector<Expectation> expectations;
  std::vector<SuiteTag> suites;
  std::optional<std::string> squeeze;
  std::optional<std::string> disabled;
  std::optional<std::string> witness_for;
  std::vector<std::string> images;

  bool is_product() const { return !product.empty(); }
  /// Reason p is not admissible, or nullopt.
  std::optional<std::string> reject_prime(std::uint32_t p) const;
};

CatalogEntry parse_entry(const std::string& text, std::string id = {});

/// Builds and consistency-checks the presentation of a non-product entry.
PcPresentation instantiate(const CatalogEntry& e, std::uint32_t p);

/// Parses and instantiates presentation text.
PcPresentation load_group_dsl(const std::string& text, std::uint32_t p);

/// Parses a word in the generators of `g` into a normal word.
NormalWord parse_word(const PcPresentation& g, const std::string& word, long long p);

bool is_prime(std::uint64_t n);

}  // namespace mlab
