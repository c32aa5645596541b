#pragma once

// Finite p-groups given by power-commutator presentations.
//
// Generators g_0 .. g_{n-1} have relative orders p^{e_i}. Relations:
//   g_i^{r_i}   = w_i      (w_i uses generators of index > i)
//   [g_j, g_i]  = w_{j,i}  (j > i, w_{j,i} uses generators of index > i)
// with [x, y] = x^-1 y^-1 x y. Elements are normal words g_0^{a_0} ... g_{n-1}^{a_{n-1}}.

#include "mlab/abgroup.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mlab {

/// |G| = p^exponent; orders are never held as raw integers.
struct POrder {
  std::uint32_t p = 0;
  int exponent = 0;
  friend bool operator==(const POrder&, const POrder&) = default;
};

struct NormalWord {
  std::vector<int> exps;

  NormalWord() = default;
  explicit NormalWord(std::vector<int> e) : exps(std::move(e)) {}
  static NormalWord identity(std::size_t n) { return NormalWord(std::vector<int>(n, 0)); }

  bool is_identity() const;
  /// index of the first nonzero exponent, or size() for the identity
  std::size_t depth() const;
  std::size_t size() const { return exps.size(); }
  auto operator<=>(const NormalWord&) const = default;
};

/// One signed letter g_gen^power of an input word.
struct Letter {
  int gen = 0;
  int power = 1;
};

/// Per-relation application counts recorded during collection. Index i < n is
/// the power relation of g_i; index n + j(j-1)/2 + i is the commutator (j, i).
using RelationTally = std::vector<long long>;

class PcPresentation {
 public:
  PcPresentation() = default;
  /// Tails are validated (index bounds, exponent ranges) but not checked for
  /// consistency; see check_consistency.
  PcPresentation(std::uint32_t p, std::vector<std::string> names, std::vector<int> rel_exponents,
                 std::vector<NormalWord> power_tails,
                 std::vector<std::vector<NormalWord>> comm_tails, std::string name = {});

  /// Presentation with the given relative orders and every relation trivial.
  static PcPresentation abelian_free(std::uint32_t p, std::vector<std::string> names,
                                     std::vector<int> rel_exponents);

  std::uint32_t prime() const { return p_; }
  std::size_t rank() const { return names_.size(); }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const std::vector<std::string>& generator_names() const { return names_; }
  std::optional<std::size_t> generator_index(const std::string& name) const;

  int relative_exponent(std::size_t i) const { return rel_exp_[i]; }
  int relative_order(std::size_t i) const { return rel_order_[i]; }
  bool prime_step() const;  // every relative order equals p
  POrder order() const;

  const NormalWord& power_tail(std::size_t i) const { return power_[i]; }
  /// tail of [g_j, g_i], j > i
  const NormalWord& comm_tail(std::size_t j, std::size_t i) const { return comm_[j][i]; }
  std::size_t relation_count() const { return rank() + rank() * (rank() - 1) / 2; }
  std::size_t power_relation_index(std::size_t i) const { return i; }
  std::size_t comm_relation_index(std::size_t j, std::size_t i) const {
    return rank() + j * (j - 1) / 2 + i;
  }

  NormalWord identity() const { return NormalWord::identity(rank()); }
  NormalWord generator(std::size_t i, int power = 1) const;

  /// a * b. When `tally` is given, relation applications are added into it.
  NormalWord multiply(const NormalWord& a, const NormalWord& b,
                      RelationTally* tally = nullptr) const;
  NormalWord inverse(const NormalWord& a) const;
  NormalWord power(const NormalWord& a, long long k) const;
  NormalWord commutator(const NormalWord& a, const NormalWord& b) const;
  NormalWord conjugate(const NormalWord& a, const NormalWord& by) const;
  /// Order of an element as a p-power exponent.
  int element_order_exponent(const NormalWord& a) const;

  /// Collection of an arbitrary signed word to normal form.
  NormalWord collect(std::span<const Letter> word) const;

  bool valid_word(const NormalWord& w) const;
  std::string format(const NormalWord& w) const;

 private:
  void collect_into(std::vector<int>& exps, std::vector<std::pair<int, int>>& stack,
                    RelationTally* tally) const;

  std::uint32_t p_ = 2;
  std::string name_;
  std::vector<std::string> names_;
  std::vector<int> rel_exp_;
  std::vector<int> rel_order_;
  std::vector<NormalWord> power_;
  std::vector<std::vector<NormalWord>> comm_;  // comm_[j][i], i < j
};

// ----------------------------------------------------------- consistency

/// One overlap test: both sides are collected along different rewriting paths.
struct Overlap {
  enum class Kind { triple, power_left, power_right, power_self };
  Kind kind;
  std::size_t k = 0, j = 0, i = 0;
  std::string describe(const PcPresentation& pres) const;
};

std::vector<Overlap> overlap_tests(const PcPresentation& pres);

struct OverlapOutcome {
  NormalWord lhs, rhs;
  RelationTally lhs_tally, rhs_tally;
};

/// Evaluates both sides of an overlap; tallies include the relation
/// substituted by the test setup itself.
OverlapOutcome evaluate_overlap(const PcPresentation& pres, const Overlap& ov);

struct ConsistencyReport {
  bool consistent = true;
  POrder order;
  std::size_t tests_run = 0;
  std::optional<Overlap> failed;
  std::string failure;  // description with both collected normal forms
};

ConsistencyReport check_consistency(const PcPresentation& pres);

// ----------------------------------------------------------- subgroups

/// Subgroup given by an induced generating sequence: leading depths strictly
/// increasing, each leading exponent 1. Requires a prime-step presentation.
struct Subgroup {
  std::vector<NormalWord> igs;
  int order_exponent() const { return static_cast<int>(igs.size()); }
  bool is_trivial() const { return igs.empty(); }
  std::vector<std::size_t> depths() const;
};

/// Presentation with all relative orders p; generator g of order p^e becomes
/// g, g^p, ..., g^{p^{e-1}}. Returns a copy when already prime-step.
PcPresentation refine(const PcPresentation& pres);
/// Image of a normal word of `pres` in refine(pres).
NormalWord to_refined(const PcPresentation& pres, const NormalWord& w);

Subgroup subgroup_closure(const PcPresentation& g, std::span<const NormalWord> gens);
Subgroup whole_group(const PcPresentation& g);
bool contains(const PcPresentation& g, const Subgroup& h, const NormalWord& w);
bool is_subset(const PcPresentation& g, const Subgroup& a, const Subgroup& b);
bool same_subgroup(const PcPresentation& g, const Subgroup& a, const Subgroup& b);
std::vector<NormalWord> elements(const PcPresentation& g, const Subgroup& h);
Subgroup normal_closure(const PcPresentation& g, std::span<const NormalWord> gens);
/// [A, B] for normal subgroups A, B.
Subgroup commutator_subgroup(const PcPresentation& g, const Subgroup& a, const Subgroup& b);
Subgroup intersection(const PcPresentation& g, const Subgroup& a, const Subgroup& b);
Subgroup center(const PcPresentation& g);
bool is_central(const PcPresentation& g, const Subgroup& h);
bool is_normal(const PcPresentation& g, const Subgroup& h);
/// Coordinates of w in terms of h's igs (w must lie in h).
std::vector<int> igs_coordinates(const PcPresentation& g, const Subgroup& h, NormalWord w);
/// Presentation of h on its induced generating sequence.
PcPresentation subgroup_presentation(const PcPresentation& g, const Subgroup& h);

// ----------------------------------------------------------- structure

struct StructureReport {
  PcPresentation group;  // refined presentation all subgroups refer to
  int order_exponent = 0;
  int nilpotency_class = 0;
  Subgroup derived;
  Subgroup center;
  std::vector<Subgroup> lower_central;  // gamma_1 = G, ..., gamma_{c+1} = 1
  std::vector<Subgroup> upper_central;  // Z_0 = 1, ..., Z_c = G
  int exponent_log = 0;                 // exp(G) = p^exponent_log
  int center_exponent_log = 0;
};

StructureReport structure_report(const PcPresentation& pres);
/// Only group, order_exponent, nilpotency_class, derived and lower_central;
/// no element enumeration.
StructureReport lower_central_report(const PcPresentation& pres);
bool is_abelian(const PcPresentation& pres);

AbelianGroup abelianization(const PcPresentation& pres);

/// Presentation of G/N for a normal subgroup N, with `project` mapping
/// elements of G (refined) to G/N.
struct Quotient {
  PcPresentation group;
  std::vector<std::size_t> kept;  // refined generator indices surviving in G/N
  NormalWord project(const PcPresentation& g, const Subgroup& n, NormalWord w) const;
};

Quotient quotient(const PcPresentation& g, const Subgroup& n);
/// G/K for central K; raises a precondition error otherwise.
PcPresentation central_quotient(const PcPresentation& g, const Subgroup& k);

PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b);

// ----------------------------------------------------------- tables

inline constexpr std::size_t default_table_cap = 128;

struct CayleyTable {
  std::size_t order = 0;
  std::vector<std::uint32_t> table;  // row-major order x order
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return table[i * order + j]; }
};

/// Elements enumerated as normal words in lexicographic order (first
/// generator most significant); index 0 is the identity.
CayleyTable cayley_table(const PcPresentation& pres, std::size_t cap = default_table_cap);
NormalWord element_at(const PcPresentation& pres, std::size_t index);
std::size_t element_index(const PcPresentation& pres, const NormalWord& w);

// ----------------------------------------------------------- isomorphism witness

struct IsoWitnessResult {
  enum class Status { isomorphism, size_mismatch, bad_image_count, relation_failed, not_surjective };
  Status status = Status::isomorphism;
  std::string detail;
  explicit operator bool() const { return status == Status::isomorphism; }
};

/// Checks that g_i -> images[i] defines an isomorphism src -> dst.
IsoWitnessResult iso_witness_check(const PcPresentation& src, const PcPresentation& dst,
                                   std::span<const NormalWord> images);

}  // namespace mlab
