#pragma once

// Ledger of facts about |M(G)| with provenance, derivation rules and a small
// script language to replay derivations.
//
// Script lines (blank lines and # comments ignored):
//   use <groupID> [p]
//   assume upper|lower|exact p^k "<citation>"
//   assume capable "<citation>"
//   apply green | class_bound | extraspecial
//   apply jones <subgroup> | transgression <subgroup>
//   apply compute <method> | capable_witness <coverID>
//   expect upper|lower|exact p^k
// with <subgroup> one of center, derived, gens(x,y,...).

#include "mlab/multiplier.hpp"
#include "mlab/pcgroup.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mlab {

enum class FactKind { exact_order, exact_structure, upper, lower, property, capable };
const char* fact_kind_name(FactKind k);

struct Provenance {
  enum class Type { computed, rule, assumed };
  Type type = Type::computed;
  std::string detail;  // method, rule name, or citation
  std::vector<int> premises;
};

struct Fact {
  int id = -1;
  std::string subject;
  FactKind kind = FactKind::property;
  int exponent = 0;  // |M| = p^exponent for order facts
  std::optional<AbelianGroup> structure;
  std::string note;
  Provenance prov;

  bool is_exact() const { return kind == FactKind::exact_order || kind == FactKind::exact_structure; }
  std::string describe() const;
};

class Ledger {
 public:
  /// Adds a fact after checking it against the subject's existing facts;
  /// contradictions raise a ledger error. When the bounds meet, an exact
  /// fact (rule "squeeze") is derived as well. Returns the new fact's id.
  int add(Fact f);

  const Fact& fact(int id) const { return facts_.at(static_cast<std::size_t>(id)); }
  const std::vector<Fact>& facts() const { return facts_; }

  std::optional<int> min_upper(const std::string& subject) const;  // exact facts count
  std::optional<int> max_lower(const std::string& subject) const;  // exact facts count
  std::optional<int> exact(const std::string& subject) const;
  /// id of a fact realizing the bound
  std::optional<int> min_upper_fact(const std::string& subject) const;
  std::optional<int> max_lower_fact(const std::string& subject) const;
  /// Tightest fact of kind upper or lower only, ignoring exact facts.
  std::optional<int> best_bound_fact(const std::string& subject, FactKind kind) const;
  std::optional<int> exact_fact(const std::string& subject) const;
  std::optional<int> find(const std::string& subject, FactKind kind) const;

  /// Assumed facts among `id` and its transitive premises.
  std::vector<int> assumed_in_derivation(int id) const;

 private:
  std::vector<Fact> facts_;
};

// ----------------------------------------------------------- rules

/// Subject name for M(G/K).
std::string quotient_subject(const std::string& subject, const std::string& k_label);

int rule_green(Ledger& l, const std::string& subject, std::uint32_t p, int n);
/// Needs an upper or exact fact for quotient_subject(subject, k_label).
int rule_jones(Ledger& l, const std::string& subject, const PcPresentation& g, const Subgroup& k,
               const std::string& k_label);
/// Needs an upper or exact fact for quotient_subject(subject, "gamma_c").
int rule_class_bound(Ledger& l, const std::string& subject, const PcPresentation& g);
int rule_extraspecial(Ledger& l, const std::string& subject, const PcPresentation& g);
/// Needs a capable fact for `subject` and a lower or exact fact for
/// quotient_subject(subject, z_label).
int rule_transgression_lower(Ledger& l, const std::string& subject, const PcPresentation& g,
                             const Subgroup& z, const std::string& z_label);
/// Capability of G from a cover E with E/Z(E) = G, checked by an explicit
/// isomorphism G -> E/Z(E) sending generator i to the image of images[i].
int rule_capable_witness(Ledger& l, const std::string& subject, const PcPresentation& g,
                         const std::string& cover_id, const PcPresentation& cover,
                         const std::vector<NormalWord>& images);

/// Records a computed multiplier as an exact-structure fact.
int record_computed(Ledger& l, const std::string& subject, std::uint32_t p,
                    const MultiplierResult& r);

// ----------------------------------------------------------- scripts

struct WitnessSpec {
  PcPresentation cover;
  std::string target;               // group the cover witnesses
  std::vector<NormalWord> images;   // in the cover's presentation
};

/// Where scripts get groups and multipliers from.
struct GroupSource {
  std::function<PcPresentation(const std::string& id, std::uint32_t p)> load;
  std::function<MultiplierResult(const PcPresentation& g, Method m)> compute;
  std::function<WitnessSpec(const std::string& id, std::uint32_t p)> witness;
};

struct ScriptLine {
  std::size_t line = 0;
  std::string text;
  std::vector<std::string> words;  // tokenized; quoted strings kept whole
};

std::vector<ScriptLine> parse_script(const std::string& text);

struct ReplayResult {
  bool passed = true;
  std::string subject;
  std::uint32_t p = 0;
  std::optional<std::size_t> failed_line;
  std::string failure;
  std::vector<std::string> trace;
  std::optional<int> final_fact;
  std::vector<int> assumed;  // assumed facts behind the final fact
  Ledger ledger;
};

/// Runs the script; stops at the first failing step. `p_override` replaces
/// the prime given by `use`.
ReplayResult replay_script(const std::string& text, const GroupSource& src,
                           std::optional<std::uint32_t> p_override = std::nullopt);

}  // namespace mlab
