#pragma once

// Catalog of presentations, method selection, t(G) and verification suites.

#include "mlab/bounds.hpp"
#include "mlab/cohomology.hpp"
#include "mlab/dsl.hpp"
#include "mlab/multiplier.hpp"

#include <map>
#include <string>
#include <vector>

namespace mlab {

class Catalog {
 public:
  /// Every *.grp file in `dir`; the entry ID is the file stem.
  static Catalog load_dir(const std::string& dir);
  static Catalog load_default();  // MLAB_CATALOG_DIR

  void add(CatalogEntry e);
  bool has(const std::string& id) const { return entries_.count(id) > 0; }
  const CatalogEntry& entry(const std::string& id) const;
  const std::map<std::string, CatalogEntry>& entries() const { return entries_; }

  /// Presentation of an entry at p; products are built from their factors.
  PcPresentation instantiate(const std::string& id, std::uint32_t p) const;
  WitnessSpec witness(const std::string& id, std::uint32_t p) const;

 private:
  std::map<std::string, CatalogEntry> entries_;
};

struct ComputeOptions {
  Method method = Method::auto_select;
  OracleOptions oracle;
  /// largest order the oracle is used for as a cross-check
  std::size_t cross_check_cap = 81;
};

/// Why each method does or does not apply.
struct Applicability {
  bool kunneth = false, be = false, oracle = false;
  std::string kunneth_why, be_why, oracle_why;
};

Applicability applicability(const PcPresentation& g, const CatalogEntry* entry,
                            const ComputeOptions& opts);

/// `entry` (may be null) supplies a product recipe for Kunneth.
MultiplierResult compute_multiplier(const Catalog* cat, const CatalogEntry* entry,
                                    const PcPresentation& g, std::uint32_t p,
                                    const ComputeOptions& opts = {});
MultiplierResult compute_multiplier(const Catalog& cat, const std::string& id, std::uint32_t p,
                                    const ComputeOptions& opts = {});

/// t = n(n-1)/2 - log_p |M|
int compute_t(int n, const AbelianGroup& m, std::uint32_t p);

struct Report {
  std::string group;
  std::uint32_t p = 0;
  int n = 0;
  std::string method;
  std::string multiplier;  // invariant list
  std::optional<int> t;
  std::string status;      // PASS, FAIL, PASS-WITH-ASSUMPTION, SKIPPED, ERROR
  std::vector<std::string> assumed;
  std::vector<std::string> trace;
  long long millis = 0;
};

bool report_ok(const Report& r);  // PASS, PASS-WITH-ASSUMPTION or SKIPPED

/// Computes and checks one entry against its expectations (and, when
/// `want_t` is given, against that t value).
Report check_entry(const Catalog& cat, const std::string& id, std::uint32_t p,
                   std::optional<int> want_t = std::nullopt, const ComputeOptions& opts = {});

/// Entries tagged `suite <name> <label>`, in label order, run on `threads`
/// workers; output order is the entry order.
std::vector<Report> run_suite(const Catalog& cat, const std::string& suite, std::uint32_t p,
                              std::optional<int> want_t, unsigned threads = 0,
                              const ComputeOptions& opts = {});

/// part "odd" (p odd) or "two" (p = 2); asserts t = 6.
std::vector<Report> verify_theorem(const Catalog& cat, std::uint32_t p, const std::string& part,
                                   unsigned threads = 0, const ComputeOptions& opts = {});
std::vector<Report> table24(const Catalog& cat, std::uint32_t p, unsigned threads = 0,
                            const ComputeOptions& opts = {});

GroupSource catalog_source(const Catalog& cat, const ComputeOptions& opts = {});

/// Replays a script file (path relative to MLAB_SCRIPT_DIR unless absolute).
ReplayResult replay_file(const Catalog& cat, const std::string& path,
                         std::optional<std::uint32_t> p = std::nullopt);
std::string script_path(const std::string& name);

/// format "table" or "jsonl"
std::string emit_report(const std::vector<Report>& reports, const std::string& format);
std::vector<Report> parse_jsonl_reports(const std::string& text);

}  // namespace mlab
