#include "mlab/catalog.hpp"
#include "mlab/blackburn_evens.hpp"
#include "mlab/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace mlab {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// p^n, or SIZE_MAX when it does not fit
std::size_t order_of(std::uint32_t p, int n) {
  std::size_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > SIZE_MAX / p) return SIZE_MAX;
    r *= p;
  }
  return r;
}

}  // namespace

// ----------------------------------------------------------- catalog

Catalog Catalog::load_dir(const std::string& dir) {
  require(fs::is_directory(dir), ErrorCode::io, "catalog directory " + dir + " not found");
  std::vector<fs::path> files;
  for (const auto& de : fs::directory_iterator(dir))
    if (de.is_regular_file() && de.path().extension() == ".grp") files.push_back(de.path());
  std::sort(files.begin(), files.end());
  Catalog c;
  for (const auto& f : files) {
    try {
      c.add(parse_entry(read_file(f.string()), f.stem().string()));
    } catch (const Error& e) {
      throw Error(e.code(), f.filename().string() + ": " + e.what());
    }
  }
  return c;
}

Catalog Catalog::load_default() { return load_dir(MLAB_CATALOG_DIR); }

void Catalog::add(CatalogEntry e) {
  require(!e.id.empty(), ErrorCode::invalid_argument, "catalog entry without ID");
  entries_[e.id] = std::move(e);
}

const CatalogEntry& Catalog::entry(const std::string& id) const {
  auto it = entries_.find(id);
  require(it != entries_.end(), ErrorCode::invalid_argument, "unknown catalog entry '" + id + "'");
  return it->second;
}

PcPresentation Catalog::instantiate(const std::string& id, std::uint32_t p) const {
  const CatalogEntry& e = entry(id);
  require(!e.disabled, ErrorCode::precondition, id + " is disabled: " + e.disabled.value_or(""));
  if (!e.is_product()) return mlab::instantiate(e, p);
  if (auto why = e.reject_prime(p)) throw Error(ErrorCode::invalid_argument, id + ": " + *why);
  PcPresentation g = instantiate(e.product[0], p);
  for (std::size_t i = 1; i < e.product.size(); ++i) g = direct_product(g, instantiate(e.product[i], p));
  g.set_name(id);
  return g;
}

WitnessSpec Catalog::witness(const std::string& id, std::uint32_t p) const {
  const CatalogEntry& e = entry(id);
  require(e.witness_for.has_value(), ErrorCode::invalid_argument, id + " is not a capability witness");
  WitnessSpec w;
  w.cover = instantiate(id, p);
  w.target = *e.witness_for;
  for (const auto& s : e.images) w.images.push_back(parse_word(w.cover, s, p));
  return w;
}

// ----------------------------------------------------------- methods

Applicability applicability(const PcPresentation& g, const CatalogEntry* entry,
                            const ComputeOptions& opts) {
  Applicability a;
  if (entry && entry->is_product()) {
    a.kunneth = true;
    a.kunneth_why = "product recipe";
  } else if (is_abelian(g)) {
    a.kunneth = true;
    a.kunneth_why = "abelian: M = exterior square";
  } else {
    a.kunneth_why = "not a product recipe and not abelian";
  }
  if (auto why = be_inapplicable(g)) {
    a.be_why = *why;
  } else {
    a.be = true;
  }
  const std::size_t order = order_of(g.prime(), g.order().exponent);
  a.oracle = order <= opts.oracle.cap;
  a.oracle_why = a.oracle ? "order " + std::to_string(order)
                          : "order exceeds the oracle cap " + std::to_string(opts.oracle.cap);
  return a;
}

namespace {

MultiplierResult run_kunneth(const Catalog* cat, const CatalogEntry* entry, const PcPresentation& g,
                             std::uint32_t p, const ComputeOptions& opts) {
  MultiplierResult r;
  r.method = Method::kunneth;
  if (!(entry && entry->is_product())) {
    require(is_abelian(g), ErrorCode::not_applicable, "kunneth: not a product recipe and not abelian");
    const AbelianGroup ab = abelianization(g);
    r.multiplier = exterior_square(ab);
    r.trace.push_back("kunneth: abelian " + ab.to_string() + ", M = exterior square = " +
                      r.multiplier.to_string());
    return r;
  }
  require(cat != nullptr, ErrorCode::internal, "product recipe without catalog");
  ComputeOptions sub = opts;
  sub.method = Method::auto_select;
  AbelianGroup m_acc, ab_acc;
  bool first = true;
  for (const auto& fid : entry->product) {
    const CatalogEntry& fe = cat->entry(fid);
    const PcPresentation fg = cat->instantiate(fid, p);
    MultiplierResult fr = compute_multiplier(cat, &fe, fg, p, sub);
    const AbelianGroup fab = abelianization(fg);
    for (const auto& t : fr.trace) r.trace.push_back("  [" + fid + "] " + t);
    if (first) {
      m_acc = fr.multiplier;
      ab_acc = fab;
      first = false;
    } else {
      m_acc = kunneth(m_acc, fr.multiplier, ab_acc, fab);
      ab_acc = direct_sum(ab_acc, fab);
    }
  }
  r.multiplier = m_acc;
  std::string factors;
  for (const auto& f : entry->product) factors += (factors.empty() ? "" : " x ") + f;
  r.trace.push_back("kunneth: " + factors + " -> " + r.multiplier.to_string());
  return r;
}

MultiplierResult run_method(Method m, const Catalog* cat, const CatalogEntry* entry,
                            const PcPresentation& g, std::uint32_t p, const ComputeOptions& opts) {
  switch (m) {
    case Method::kunneth: return run_kunneth(cat, entry, g, p, opts);
    case Method::blackburn_evens: return multiplier_via_be(g);
    case Method::oracle: return multiplier_via_oracle(g, opts.oracle);
    case Method::tails: return multiplier_via_tails(g);
    case Method::ledger:
      throw Error(ErrorCode::not_applicable, "the ledger method runs through replay scripts");
    case Method::auto_select: break;
  }
  throw Error(ErrorCode::internal, "unhandled method");
}

}  // namespace

MultiplierResult compute_multiplier(const Catalog* cat, const CatalogEntry* entry,
                                    const PcPresentation& g, std::uint32_t p,
                                    const ComputeOptions& opts) {
  require(g.prime() == p, ErrorCode::invalid_argument, "prime mismatch");
  if (opts.method != Method::auto_select) {
    if (opts.method == Method::kunneth) {
      const Applicability a = applicability(g, entry, opts);
      require(a.kunneth, ErrorCode::not_applicable, "kunneth: " + a.kunneth_why);
    }
    return run_method(opts.method, cat, entry, g, p, opts);
  }
  const Applicability a = applicability(g, entry, opts);
  const std::size_t order = order_of(p, g.order().exponent);
  std::vector<Method> methods;
  if (a.kunneth) methods.push_back(Method::kunneth);
  if (a.be) methods.push_back(Method::blackburn_evens);
  if (a.oracle && (methods.empty() || order <= opts.cross_check_cap)) methods.push_back(Method::oracle);
  // the tails engine is the fallback, and a cheap cross-check for small ranks
  if (methods.empty() || refine(g).rank() <= 8) methods.push_back(Method::tails);

  std::optional<MultiplierResult> primary;
  std::vector<std::string> notes;
  for (Method m : methods) {
    MultiplierResult r;
    try {
      r = run_method(m, cat, entry, g, p, opts);
    } catch (const Error& e) {
      notes.push_back(std::string(method_name(m)) + " failed: " + e.what());
      continue;
    }
    if (!primary) {
      primary = std::move(r);
      continue;
    }
    require(r.multiplier == primary->multiplier, ErrorCode::assertion,
            std::string("methods disagree: ") + method_name(primary->method) + " gives " +
                primary->multiplier.to_string() + ", " + method_name(r.method) + " gives " +
                r.multiplier.to_string());
    for (const auto& t : r.trace) primary->trace.push_back(t);
    notes.push_back(std::string("agrees: ") + method_name(r.method));
  }
  if (!primary) {
    std::string why = "no method succeeded; kunneth: " + a.kunneth_why + "; be: " +
                      (a.be ? std::string("applies") : a.be_why) + "; oracle: " + a.oracle_why;
    for (const auto& n : notes) why += "; " + n;
    throw Error(ErrorCode::not_applicable, why);
  }
  std::string summary = std::string("auto: ") + method_name(primary->method);
  for (const auto& n : notes) summary += "; " + n;
  primary->trace.insert(primary->trace.begin(), summary);
  return *primary;
}

MultiplierResult compute_multiplier(const Catalog& cat, const std::string& id, std::uint32_t p,
                                    const ComputeOptions& opts) {
  const CatalogEntry& e = cat.entry(id);
  return compute_multiplier(&cat, &e, cat.instantiate(id, p), p, opts);
}

int compute_t(int n, const AbelianGroup& m, std::uint32_t p) {
  return n * (n - 1) / 2 - m.order_exponent(p);
}

// ----------------------------------------------------------- reports

bool report_ok(const Report& r) {
  return r.status == "PASS" || r.status == "PASS-WITH-ASSUMPTION" || r.status == "SKIPPED";
}

namespace {

int p_exponent_of(const std::string& value, std::uint32_t p) {
  long long v = eval_expr(value, p);
  int e = 0;
  while (v > 1 && v % p == 0) {
    v /= p;
    ++e;
  }
  require(v == 1, ErrorCode::parse, "expected value " + value + " is not a power of p");
  return e;
}

// Compares against the entry's expectations; returns failures.
std::vector<std::string> check_expectations(const CatalogEntry& e, std::uint32_t p, int log_m,
                                            const std::optional<AbelianGroup>& m, int t) {
  std::vector<std::string> bad;
  for (const auto& x : e.expectations) {
    switch (x.kind) {
      case Expectation::Kind::multiplier: {
        std::vector<int> exps;
        for (const auto& v : x.values)
          if (int k = p_exponent_of(v, p); k > 0) exps.push_back(k);
        const AbelianGroup want = AbelianGroup::from_p_exponents(p, exps);
        if (!m) {
          if (want.order_exponent(p) != log_m)
            bad.push_back("expected order of " + want.to_string() + " (" + x.source + ")");
        } else if (want != *m) {
          bad.push_back("expected " + want.to_string() + " (" + x.source + "), got " + m->to_string());
        }
        break;
      }
      case Expectation::Kind::order: {
        const int k = p_exponent_of(x.values[0], p);
        if (k != log_m)
          bad.push_back("expected |M| = p^" + std::to_string(k) + " (" + x.source + "), got p^" +
                        std::to_string(log_m));
        break;
      }
      case Expectation::Kind::t: {
        const long long want = eval_expr(x.values[0], p);
        if (want != t)
          bad.push_back("expected t = " + std::to_string(want) + " (" + x.source + "), got " +
                        std::to_string(t));
        break;
      }
    }
  }
  return bad;
}

}  // namespace

Report check_entry(const Catalog& cat, const std::string& id, std::uint32_t p,
                   std::optional<int> want_t, const ComputeOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.group = id;
  r.p = p;
  auto finish = [&] {
    r.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0).count();
    return r;
  };
  try {
    const CatalogEntry& e = cat.entry(id);
    if (e.disabled) {
      r.status = "SKIPPED";
      r.method = "-";
      r.trace.push_back("disabled: " + *e.disabled);
      return finish();
    }
    if (auto why = e.reject_prime(p)) throw Error(ErrorCode::invalid_argument, *why);
    const PcPresentation g = cat.instantiate(id, p);
    r.n = g.order().exponent;
    int log_m = 0;
    std::optional<AbelianGroup> m;
    if (e.squeeze) {
      ReplayResult rr = replay_file(cat, *e.squeeze, p);
      r.method = "ledger";
      r.trace = rr.trace;
      if (!rr.passed || !rr.final_fact) {
        r.status = "FAIL";
        r.trace.push_back("replay failed: " + rr.failure);
        return finish();
      }
      const Fact& f = rr.ledger.fact(*rr.final_fact);
      require(f.is_exact(), ErrorCode::assertion, "squeeze script did not end in an exact fact");
      log_m = f.exponent;
      if (f.structure) m = f.structure;
      r.multiplier = m ? m->to_string() : "p^" + std::to_string(log_m);
      for (int a : rr.assumed) r.assumed.push_back(rr.ledger.fact(a).describe());
    } else {
      MultiplierResult mr = compute_multiplier(&cat, &e, g, p, opts);
      r.method = method_name(mr.method);
      r.trace = mr.trace;
      m = mr.multiplier;
      log_m = mr.multiplier.order_exponent(p);
      r.multiplier = mr.multiplier.to_string();
    }
    r.t = r.n * (r.n - 1) / 2 - log_m;
    std::vector<std::string> bad = check_expectations(e, p, log_m, m, *r.t);
    if (want_t && *want_t != *r.t)
      bad.push_back("expected t = " + std::to_string(*want_t) + ", got " + std::to_string(*r.t));
    for (const auto& b : bad) r.trace.push_back("MISMATCH: " + b);
    if (!bad.empty()) r.status = "FAIL";
    else r.status = r.assumed.empty() ? "PASS" : "PASS-WITH-ASSUMPTION";
  } catch (const std::exception& ex) {
    r.status = "ERROR";
    if (r.method.empty()) r.method = "-";
    r.trace.push_back(std::string("error: ") + ex.what());
  }
  return finish();
}

std::vector<Report> run_suite(const Catalog& cat, const std::string& suite, std::uint32_t p,
                              std::optional<int> want_t, unsigned threads,
                              const ComputeOptions& opts) {
  std::vector<std::pair<std::string, std::string>> todo;  // label, id
  for (const auto& [id, e] : cat.entries())
    for (const auto& s : e.suites)
      if (s.suite == suite && !e.reject_prime(p)) todo.emplace_back(s.label, id);
  std::sort(todo.begin(), todo.end());
  std::vector<Report> out(todo.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(todo.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < todo.size();) out[i] = check_entry(cat, todo[i].second, p, want_t, opts);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::vector<Report> verify_theorem(const Catalog& cat, std::uint32_t p, const std::string& part,
                                   unsigned threads, const ComputeOptions& opts) {
  require(is_prime(p), ErrorCode::invalid_argument, std::to_string(p) + " is not prime");
  if (part == "odd") {
    require(p != 2, ErrorCode::invalid_argument, "part odd needs an odd prime");
    return run_suite(cat, "main_odd", p, 6, threads, opts);
  }
  if (part == "two") {
    require(p == 2, ErrorCode::invalid_argument, "part two needs p = 2");
    return run_suite(cat, "main_two", p, 6, threads, opts);
  }
  throw Error(ErrorCode::invalid_argument, "part must be odd or two, got '" + part + "'");
}

std::vector<Report> table24(const Catalog& cat, std::uint32_t p, unsigned threads,
                            const ComputeOptions& opts) {
  require(is_prime(p) && p != 2, ErrorCode::invalid_argument, "table24 needs an odd prime");
  ComputeOptions o = opts;
  if (o.method == Method::auto_select && order_of(p, 4) <= o.oracle.cap) o.method = Method::oracle;
  return run_suite(cat, "table24", p, std::nullopt, threads, o);
}

// ----------------------------------------------------------- scripts

GroupSource catalog_source(const Catalog& cat, const ComputeOptions& opts) {
  GroupSource s;
  s.load = [&cat](const std::string& id, std::uint32_t p) { return cat.instantiate(id, p); };
  s.compute = [&cat, opts](const PcPresentation& g, Method m) {
    ComputeOptions o = opts;
    o.method = m;
    return compute_multiplier(&cat, nullptr, g, g.prime(), o);
  };
  s.witness = [&cat](const std::string& id, std::uint32_t p) { return cat.witness(id, p); };
  return s;
}

std::string script_path(const std::string& name) {
  fs::path p(name);
  if (p.is_absolute() || fs::exists(p)) return p.string();
  return (fs::path(MLAB_SCRIPT_DIR) / p).string();
}

ReplayResult replay_file(const Catalog& cat, const std::string& path, std::optional<std::uint32_t> p) {
  const std::string text = read_file(script_path(path));
  return replay_script(text, catalog_source(cat), p);
}

}  // namespace mlab
