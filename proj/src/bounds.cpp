#include "mlab/bounds.hpp"
#include "mlab/error.hpp"

#include <algorithm>
#include <set>

namespace mlab {

const char* fact_kind_name(FactKind k) {
  switch (k) {
    case FactKind::exact_order: return "exact";
    case FactKind::exact_structure: return "exact-structure";
    case FactKind::upper: return "upper";
    case FactKind::lower: return "lower";
    case FactKind::property: return "property";
    case FactKind::capable: return "capable";
  }
  return "?";
}

std::string Fact::describe() const {
  std::string s = "#" + std::to_string(id) + " " + subject + " " + fact_kind_name(kind);
  if (kind != FactKind::property && kind != FactKind::capable) s += " p^" + std::to_string(exponent);
  if (structure) s += " " + structure->to_string();
  if (!note.empty()) s += " {" + note + "}";
  switch (prov.type) {
    case Provenance::Type::computed: s += " (computed: " + prov.detail + ")"; break;
    case Provenance::Type::assumed: s += " (assumed: \"" + prov.detail + "\")"; break;
    case Provenance::Type::rule: {
      s += " (rule " + prov.detail + " <-";
      for (int p : prov.premises) s += " #" + std::to_string(p);
      s += ")";
      break;
    }
  }
  return s;
}

// ----------------------------------------------------------- ledger

namespace {

bool counts_upper(const Fact& f) { return f.kind == FactKind::upper || f.is_exact(); }
bool counts_lower(const Fact& f) { return f.kind == FactKind::lower || f.is_exact(); }

}  // namespace

std::optional<int> Ledger::min_upper_fact(const std::string& subject) const {
  std::optional<int> best;
  for (const auto& f : facts_)
    if (f.subject == subject && counts_upper(f) && (!best || f.exponent < fact(*best).exponent))
      best = f.id;
  return best;
}

std::optional<int> Ledger::max_lower_fact(const std::string& subject) const {
  std::optional<int> best;
  for (const auto& f : facts_)
    if (f.subject == subject && counts_lower(f) && (!best || f.exponent > fact(*best).exponent))
      best = f.id;
  return best;
}

std::optional<int> Ledger::best_bound_fact(const std::string& subject, FactKind kind) const {
  std::optional<int> best;
  for (const auto& f : facts_) {
    if (f.subject != subject || f.kind != kind) continue;
    const bool better = !best || (kind == FactKind::upper ? f.exponent < fact(*best).exponent
                                                          : f.exponent > fact(*best).exponent);
    if (better) best = f.id;
  }
  return best;
}

std::optional<int> Ledger::exact_fact(const std::string& subject) const {
  for (const auto& f : facts_)
    if (f.subject == subject && f.is_exact()) return f.id;
  return std::nullopt;
}

std::optional<int> Ledger::find(const std::string& subject, FactKind kind) const {
  for (const auto& f : facts_)
    if (f.subject == subject && f.kind == kind) return f.id;
  return std::nullopt;
}

std::optional<int> Ledger::min_upper(const std::string& subject) const {
  if (auto id = min_upper_fact(subject)) return fact(*id).exponent;
  return std::nullopt;
}

std::optional<int> Ledger::max_lower(const std::string& subject) const {
  if (auto id = max_lower_fact(subject)) return fact(*id).exponent;
  return std::nullopt;
}

std::optional<int> Ledger::exact(const std::string& subject) const {
  if (auto id = exact_fact(subject)) return fact(*id).exponent;
  return std::nullopt;
}

int Ledger::add(Fact f) {
  require(f.prov.type != Provenance::Type::rule || !f.prov.premises.empty(), ErrorCode::internal,
          "rule fact without premises");
  for (int p : f.prov.premises)
    require(p >= 0 && static_cast<std::size_t>(p) < facts_.size(), ErrorCode::internal,
            "premise refers to an unknown fact");
  f.id = static_cast<int>(facts_.size());
  const auto lo = max_lower(f.subject), hi = min_upper(f.subject);
  auto clash = [&](const std::string& what) {
    throw Error(ErrorCode::ledger, "ledger contradiction for " + f.subject + ": " + f.describe() + " " + what);
  };
  if (counts_upper(f) && lo && f.exponent < *lo) clash("is below the lower bound p^" + std::to_string(*lo));
  if (counts_lower(f) && hi && f.exponent > *hi) clash("is above the upper bound p^" + std::to_string(*hi));
  if (f.kind == FactKind::exact_structure)
    for (const auto& g : facts_)
      if (g.subject == f.subject && g.structure && *g.structure != *f.structure)
        clash("disagrees with " + g.describe());
  facts_.push_back(f);
  const int id = f.id;
  if (f.kind == FactKind::upper || f.kind == FactKind::lower) {
    auto l = max_lower_fact(f.subject), u = min_upper_fact(f.subject);
    if (!exact_fact(f.subject) && l && u && fact(*l).exponent == fact(*u).exponent) {
      Fact sq;
      sq.subject = f.subject;
      sq.kind = FactKind::exact_order;
      sq.exponent = fact(*l).exponent;
      sq.prov = {Provenance::Type::rule, "squeeze", {*l, *u}};
      add(std::move(sq));
    }
  }
  return id;
}

std::vector<int> Ledger::assumed_in_derivation(int id) const {
  std::set<int> seen, out;
  std::vector<int> todo{id};
  while (!todo.empty()) {
    int x = todo.back();
    todo.pop_back();
    if (!seen.insert(x).second) continue;
    const Fact& f = fact(x);
    if (f.prov.type == Provenance::Type::assumed) out.insert(x);
    for (int p : f.prov.premises) todo.push_back(p);
  }
  return {out.begin(), out.end()};
}

// ----------------------------------------------------------- rules

namespace {

int log_order(const AbelianGroup& a, std::uint32_t p) { return a.order_exponent(p); }

AbelianGroup subgroup_structure(const PcPresentation& g, const Subgroup& k) {
  return abelianization(subgroup_presentation(g, k));
}

void need_prime_step(const PcPresentation& g) {
  require(g.prime_step(), ErrorCode::invalid_argument, "rules expect a refined presentation");
}

int derived_rule(Ledger& l, const std::string& subject, FactKind kind, int value,
                 const std::string& rule, std::vector<int> premises, std::string note) {
  Fact f;
  f.subject = subject;
  f.kind = kind;
  f.exponent = value;
  f.note = std::move(note);
  f.prov = {Provenance::Type::rule, rule, std::move(premises)};
  return l.add(std::move(f));
}

int property_fact(Ledger& l, const std::string& subject, std::string note, std::string how) {
  Fact f;
  f.subject = subject;
  f.kind = FactKind::property;
  f.note = std::move(note);
  f.prov = {Provenance::Type::computed, std::move(how), {}};
  return l.add(std::move(f));
}

}  // namespace

std::string quotient_subject(const std::string& subject, const std::string& k_label) {
  return subject + "/" + k_label;
}

int rule_green(Ledger& l, const std::string& subject, std::uint32_t p, int n) {
  require(n >= 0, ErrorCode::invalid_argument, "negative order exponent");
  const int prop = property_fact(l, subject, "|G| = " + std::to_string(p) + "^" + std::to_string(n),
                                 "presentation order");
  return derived_rule(l, subject, FactKind::upper, n * (n - 1) / 2, "green", {prop},
                      "n(n-1)/2 with n=" + std::to_string(n));
}

int rule_jones(Ledger& l, const std::string& subject, const PcPresentation& g, const Subgroup& k,
               const std::string& k_label) {
  need_prime_step(g);
  require(is_central(g, k), ErrorCode::precondition, "jones: " + k_label + " is not central");
  const std::string qs = quotient_subject(subject, k_label);
  const auto premise = l.min_upper_fact(qs);
  require(premise.has_value(), ErrorCode::precondition,
          "jones: missing premise fact for |M(" + qs + ")|");
  const std::uint32_t p = g.prime();
  const int mq = l.fact(*premise).exponent;
  const AbelianGroup kab = subgroup_structure(g, k);
  const int mk = log_order(exterior_square(kab), p);
  const AbelianGroup qab = abelianization(quotient(g, k).group);
  const int tk = log_order(tensor(qab, kab), p);
  const Subgroup meet = intersection(g, structure_report(g).derived, k);
  const int dk = meet.order_exponent();
  const int prop = property_fact(
      l, subject,
      k_label + " = " + kab.to_string() + ", M(K) = p^" + std::to_string(mk) + ", (G/K)^ab = " +
          qab.to_string() + ", |(G/K)^ab (x) K| = p^" + std::to_string(tk) + ", |G' n K| = p^" +
          std::to_string(dk),
      "subgroup computation");
  const int value = mq + mk + tk - dk;
  return derived_rule(l, subject, FactKind::upper, value, "jones", {*premise, prop},
                      "|M(G)| p^" + std::to_string(dk) + " divides p^" + std::to_string(mq) +
                          " p^" + std::to_string(mk) + " p^" + std::to_string(tk));
}

int rule_class_bound(Ledger& l, const std::string& subject, const PcPresentation& g) {
  need_prime_step(g);
  const StructureReport sr = structure_report(g);
  const int c = sr.nilpotency_class;
  require(c >= 2, ErrorCode::precondition, "class_bound: group is abelian");
  const Subgroup& gc = sr.lower_central[static_cast<std::size_t>(c - 1)];
  const Subgroup& zc1 = sr.upper_central[static_cast<std::size_t>(c - 1)];
  const std::string qs = quotient_subject(subject, "gamma_" + std::to_string(c));
  const auto premise = l.min_upper_fact(qs);
  require(premise.has_value(), ErrorCode::precondition,
          "class_bound: missing premise fact for |M(" + qs + ")|");
  const std::uint32_t p = g.prime();
  const int mq = l.fact(*premise).exponent;
  const AbelianGroup gcab = subgroup_structure(g, gc);
  const AbelianGroup zab = abelianization(quotient(sr.group, zc1).group);
  const int tz = log_order(tensor(zab, gcab), p);
  const int prop = property_fact(
      l, subject,
      "class " + std::to_string(c) + ", gamma_c = " + gcab.to_string() + ", (G/Z_{c-1})^ab = " +
          zab.to_string(),
      "subgroup computation");
  return derived_rule(l, subject, FactKind::upper, mq + tz - gc.order_exponent(), "class_bound",
                      {*premise, prop},
                      "|gamma_c| |M(G)| <= p^" + std::to_string(mq) + " p^" + std::to_string(tz));
}

int rule_extraspecial(Ledger& l, const std::string& subject, const PcPresentation& g) {
  need_prime_step(g);
  const StructureReport sr = structure_report(g);
  const std::uint32_t p = g.prime();
  const bool ok = sr.derived.order_exponent() == 1 && sr.center.order_exponent() == 1 &&
                  same_subgroup(g, sr.derived, sr.center) && sr.order_exponent % 2 == 1 &&
                  sr.order_exponent >= 3;
  require(ok, ErrorCode::precondition,
          "extraspecial: |G'| = p^" + std::to_string(sr.derived.order_exponent()) + ", |Z| = p^" +
              std::to_string(sr.center.order_exponent()) + ", not extraspecial");
  // G/Z elementary abelian: G' = Z and every p-th power central
  for (std::size_t i = 0; i < g.rank(); ++i)
    require(contains(g, sr.center, g.power(g.generator(i), p)), ErrorCode::precondition,
            "extraspecial: G/Z not elementary abelian");
  const int n = (sr.order_exponent - 1) / 2;
  std::string note = "extraspecial of order p^" + std::to_string(sr.order_exponent);
  Fact f;
  f.subject = subject;
  if (n >= 2) {
    f.kind = FactKind::exact_order;
    f.exponent = 2 * n * n - n - 1;
  } else {
    f.kind = FactKind::exact_structure;
    if (p == 2) {
      int involutions = 0;
      for (const auto& w : elements(g, whole_group(g)))
        if (g.element_order_exponent(w) == 1) ++involutions;
      note += involutions == 5 ? ", dihedral" : ", quaternion";
      f.structure = involutions == 5 ? AbelianGroup::elementary(2, 1) : AbelianGroup{};
    } else {
      note += sr.exponent_log == 1 ? ", exponent p" : ", exponent p^2";
      f.structure = sr.exponent_log == 1 ? AbelianGroup::elementary(p, 2) : AbelianGroup{};
    }
    f.exponent = f.structure->order_exponent(p);
  }
  const int prop = property_fact(l, subject, note, "structure check");
  f.prov = {Provenance::Type::rule, "extraspecial", {prop}};
  return l.add(std::move(f));
}

int rule_transgression_lower(Ledger& l, const std::string& subject, const PcPresentation& g,
                             const Subgroup& z, const std::string& z_label) {
  need_prime_step(g);
  const auto cap = l.find(subject, FactKind::capable);
  require(cap.has_value(), ErrorCode::precondition,
          "transgression: no capability fact for " + subject +
              "; refusing to assume the map to G/G' (x) Z is nontrivial");
  require(is_central(g, z), ErrorCode::precondition, "transgression: " + z_label + " is not central");
  const std::string qs = quotient_subject(subject, z_label);
  const auto premise = l.max_lower_fact(qs);
  require(premise.has_value(), ErrorCode::precondition,
          "transgression: missing premise fact for |M(" + qs + ")|");
  const int mq = l.fact(*premise).exponent;
  const int dz = intersection(g, structure_report(g).derived, z).order_exponent();
  const int prop = property_fact(l, subject, "|G' n " + z_label + "| = p^" + std::to_string(dz),
                                 "subgroup computation");
  return derived_rule(l, subject, FactKind::lower, 1 + mq - dz, "transgression",
                      {*cap, *premise, prop},
                      "|M(G)| > p^" + std::to_string(mq) + " / p^" + std::to_string(dz));
}

int rule_capable_witness(Ledger& l, const std::string& subject, const PcPresentation& g,
                         const std::string& cover_id, const PcPresentation& cover,
                         const std::vector<NormalWord>& images) {
  need_prime_step(g);
  const PcPresentation e = refine(cover);
  const Subgroup z = center(e);
  const Quotient q = quotient(e, z);
  std::vector<NormalWord> img;
  for (const auto& w : images) img.push_back(q.project(e, z, to_refined(cover, w)));
  const IsoWitnessResult r = iso_witness_check(g, q.group, img);
  require(static_cast<bool>(r), ErrorCode::assertion,
          "capable_witness: " + cover_id + "/Z(" + cover_id + ") is not " + subject + ": " + r.detail);
  Fact f;
  f.subject = subject;
  f.kind = FactKind::capable;
  f.note = cover_id + "/Z(" + cover_id + ") = " + subject;
  f.prov = {Provenance::Type::computed, "iso witness", {}};
  return l.add(std::move(f));
}

int record_computed(Ledger& l, const std::string& subject, std::uint32_t p,
                    const MultiplierResult& r) {
  Fact f;
  f.subject = subject;
  f.kind = FactKind::exact_structure;
  f.structure = r.multiplier;
  f.exponent = r.multiplier.order_exponent(p);
  f.prov = {Provenance::Type::computed, method_name(r.method), {}};
  return l.add(std::move(f));
}

}  // namespace mlab

// ----------------------------------------------------------- scripts

namespace mlab {

std::vector<ScriptLine> parse_script(const std::string& text) {
  std::vector<ScriptLine> out;
  std::size_t lineno = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;
    ScriptLine sl;
    sl.line = lineno;
    std::string cur;
    bool quoted = false, any = false;
    for (char c : line) {
      if (quoted) {
        if (c == '"') {
          quoted = false;
        } else {
          cur += c;
        }
        continue;
      }
      if (c == '#') break;
      if (c == '"') {
        quoted = any = true;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        if (any) sl.words.push_back(cur);
        cur.clear();
        any = false;
      } else {
        cur += c;
        any = true;
      }
    }
    require(!quoted, ErrorCode::parse, "line " + std::to_string(lineno) + ": unterminated quote");
    if (any) sl.words.push_back(cur);
    if (sl.words.empty()) continue;
    const auto first = line.find_first_not_of(" \t");
    sl.text = line.substr(first);
    while (!sl.text.empty() && (sl.text.back() == '\r' || sl.text.back() == ' ')) sl.text.pop_back();
    out.push_back(std::move(sl));
  }
  return out;
}

namespace {

int parse_order_value(const std::string& s) {
  if (s == "1") return 0;
  if (s == "p") return 1;
  require(s.size() > 2 && s.rfind("p^", 0) == 0, ErrorCode::parse, "bad order value '" + s + "'");
  std::size_t used = 0;
  int k = 0;
  try {
    k = std::stoi(s.substr(2), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == s.size() - 2 && k >= 0, ErrorCode::parse, "bad order value '" + s + "'");
  return k;
}

FactKind parse_bound_kind(const std::string& s) {
  if (s == "upper") return FactKind::upper;
  if (s == "lower") return FactKind::lower;
  if (s == "exact") return FactKind::exact_order;
  if (s == "capable") return FactKind::capable;
  throw Error(ErrorCode::parse, "unknown fact kind '" + s + "'");
}

struct Replayer {
  const GroupSource& src;
  std::optional<std::uint32_t> p_override;
  ReplayResult res;
  PcPresentation g;
  bool have_group = false;

  void log(const std::string& s) { res.trace.push_back(s); }

  void log_new_facts(std::size_t from) {
    for (std::size_t i = from; i < res.ledger.facts().size(); ++i)
      log("  " + res.ledger.facts()[i].describe());
  }

  std::pair<Subgroup, std::string> subgroup_arg(const std::vector<std::string>& words, std::size_t at) {
    std::string spec;
    for (std::size_t i = at; i < words.size(); ++i) spec += words[i];
    require(!spec.empty(), ErrorCode::parse, "missing subgroup argument");
    if (spec == "center") return {center(g), "Z"};
    if (spec == "derived") return {structure_report(g).derived, "G'"};
    require(spec.rfind("gens(", 0) == 0 && spec.back() == ')', ErrorCode::parse,
            "subgroup must be center, derived or gens(...), got '" + spec + "'");
    std::vector<NormalWord> gens;
    std::string inner = spec.substr(5, spec.size() - 6), name;
    inner += ',';
    for (char c : inner) {
      if (c != ',') {
        name += c;
        continue;
      }
      auto idx = g.generator_index(name);
      require(idx.has_value(), ErrorCode::parse, "unknown generator '" + name + "'");
      gens.push_back(g.generator(*idx));
      name.clear();
    }
    return {subgroup_closure(g, gens), "<" + spec.substr(5, spec.size() - 6) + ">"};
  }

  // Computes |M(G/K)| into the ledger unless a fact for it is present.
  void ensure_quotient_premise(const Subgroup& k, const std::string& label) {
    const std::string qs = quotient_subject(res.subject, label);
    if (res.ledger.exact(qs)) return;
    const PcPresentation q = quotient(g, k).group;
    MultiplierResult r = src.compute(q, Method::auto_select);
    record_computed(res.ledger, qs, g.prime(), r);
    for (const auto& t : r.trace) log("  premise " + qs + ": " + t);
  }

  void step(const ScriptLine& sl) {
    const auto& w = sl.words;
    const std::string& verb = w[0];
    if (verb == "use") {
      require(w.size() == 2 || w.size() == 3, ErrorCode::parse, "use <groupID> [p]");
      std::uint32_t p = 0;
      if (w.size() == 3) p = static_cast<std::uint32_t>(std::stoul(w[2]));
      if (p_override) p = *p_override;
      require(p != 0, ErrorCode::invalid_argument, "no prime given for " + w[1]);
      g = refine(src.load(w[1], p));
      have_group = true;
      res.subject = w[1];
      res.p = p;
      log("  group " + w[1] + " at p=" + std::to_string(p) + ", order p^" +
          std::to_string(g.order().exponent));
      return;
    }
    require(have_group, ErrorCode::parse, "no group selected; start with 'use'");
    if (verb == "assume") {
      require(w.size() >= 3, ErrorCode::parse, "assume <kind> [value] \"<citation>\"");
      Fact f;
      f.subject = res.subject;
      f.kind = parse_bound_kind(w[1]);
      if (f.kind == FactKind::capable) {
        require(w.size() == 3, ErrorCode::parse, "assume capable \"<citation>\"");
        f.prov = {Provenance::Type::assumed, w[2], {}};
      } else {
        require(w.size() == 4, ErrorCode::parse, "assume <kind> p^k \"<citation>\"");
        f.exponent = parse_order_value(w[2]);
        f.prov = {Provenance::Type::assumed, w[3], {}};
      }
      res.ledger.add(std::move(f));
      return;
    }
    if (verb == "apply") {
      require(w.size() >= 2, ErrorCode::parse, "apply <rule> <args>");
      const std::string& rule = w[1];
      Ledger& l = res.ledger;
      if (rule == "green") {
        rule_green(l, res.subject, g.prime(), g.order().exponent);
      } else if (rule == "jones") {
        auto [k, label] = subgroup_arg(w, 2);
        ensure_quotient_premise(k, label);
        rule_jones(l, res.subject, g, k, label);
      } else if (rule == "class_bound") {
        const StructureReport sr = structure_report(g);
        require(sr.nilpotency_class >= 2, ErrorCode::precondition, "class_bound: group is abelian");
        ensure_quotient_premise(sr.lower_central[static_cast<std::size_t>(sr.nilpotency_class - 1)],
                                "gamma_" + std::to_string(sr.nilpotency_class));
        rule_class_bound(l, res.subject, g);
      } else if (rule == "extraspecial") {
        rule_extraspecial(l, res.subject, g);
      } else if (rule == "transgression") {
        auto [z, label] = subgroup_arg(w, 2);
        ensure_quotient_premise(z, label);
        rule_transgression_lower(l, res.subject, g, z, label);
      } else if (rule == "compute") {
        require(w.size() == 3, ErrorCode::parse, "apply compute <method>");
        auto m = parse_method(w[2]);
        require(m.has_value(), ErrorCode::parse, "unknown method '" + w[2] + "'");
        MultiplierResult r = src.compute(g, *m);
        for (const auto& t : r.trace) log("  " + t);
        record_computed(l, res.subject, g.prime(), r);
      } else if (rule == "capable_witness") {
        require(w.size() == 3, ErrorCode::parse, "apply capable_witness <coverID>");
        WitnessSpec ws = src.witness(w[2], g.prime());
        require(ws.target == res.subject, ErrorCode::precondition,
                w[2] + " is a witness for " + ws.target + ", not " + res.subject);
        rule_capable_witness(l, res.subject, g, w[2], ws.cover, ws.images);
      } else {
        throw Error(ErrorCode::parse, "unknown rule '" + rule + "'");
      }
      return;
    }
    if (verb == "expect") {
      require(w.size() == 3, ErrorCode::parse, "expect <kind> p^k");
      const FactKind kind = parse_bound_kind(w[1]);
      const int want = parse_order_value(w[2]);
      std::optional<int> id;
      if (kind == FactKind::upper || kind == FactKind::lower)
        id = res.ledger.best_bound_fact(res.subject, kind);
      if (kind == FactKind::exact_order) id = res.ledger.exact_fact(res.subject);
      require(kind != FactKind::capable, ErrorCode::parse, "expect takes upper, lower or exact");
      if (!id)
        throw Error(ErrorCode::assertion, "expected " + w[1] + " p^" + std::to_string(want) +
                                              " but the ledger has no " + w[1] + " fact");
      const Fact& f = res.ledger.fact(*id);
      if (f.exponent != want)
        throw Error(ErrorCode::assertion, "expected " + w[1] + " p^" + std::to_string(want) +
                                              ", ledger gives p^" + std::to_string(f.exponent) +
                                              " from " + f.describe());
      res.final_fact = *id;
      log("  ok: " + f.describe());
      return;
    }
    throw Error(ErrorCode::parse, "unknown statement '" + verb + "'");
  }
};

}  // namespace

ReplayResult replay_script(const std::string& text, const GroupSource& src,
                           std::optional<std::uint32_t> p_override) {
  Replayer r{src, p_override, {}, {}, false};
  std::vector<ScriptLine> lines;
  try {
    lines = parse_script(text);
  } catch (const Error& e) {
    r.res.passed = false;
    r.res.failure = e.what();
    return r.res;
  }
  for (const auto& sl : lines) {
    r.log("L" + std::to_string(sl.line) + ": " + sl.text);
    const std::size_t before = r.res.ledger.facts().size();
    try {
      r.step(sl);
    } catch (const std::exception& e) {
      r.log_new_facts(before);
      r.res.passed = false;
      r.res.failed_line = sl.line;
      r.res.failure = "line " + std::to_string(sl.line) + " (" + sl.text + "): " + e.what();
      r.log("  FAILED: " + std::string(e.what()));
      return r.res;
    }
    r.log_new_facts(before);
  }
  if (r.res.final_fact) r.res.assumed = r.res.ledger.assumed_in_derivation(*r.res.final_fact);
  return r.res;
}

}  // namespace mlab
