#include "mlab/mlab.h"

#include "mlab/catalog.hpp"
#include "mlab/error.hpp"

#include <cstdlib>
#include <cstring>
#include <sstream>

struct mlab_catalog {
  mlab::Catalog cat;
};

struct mlab_group {
  mlab::PcPresentation pres;
  const mlab_catalog* cat = nullptr;  // set for catalog groups
  std::string id;
};

struct mlab_result {
  mlab::MultiplierResult r;
  std::uint32_t p = 0;
  int n = 0;
};

struct mlab_reports {
  std::vector<mlab::Report> reports;
};

struct mlab_replay {
  mlab::ReplayResult r;
};

namespace {

thread_local std::string last_error;

mlab_status to_status(mlab::ErrorCode c) {
  using mlab::ErrorCode;
  switch (c) {
    case ErrorCode::ok: return MLAB_OK;
    case ErrorCode::parse: return MLAB_E_PARSE;
    case ErrorCode::consistency: return MLAB_E_CONSISTENCY;
    case ErrorCode::precondition: return MLAB_E_PRECONDITION;
    case ErrorCode::size_cap: return MLAB_E_SIZE_CAP;
    case ErrorCode::not_applicable: return MLAB_E_NOT_APPLICABLE;
    case ErrorCode::ledger: return MLAB_E_LEDGER;
    case ErrorCode::assertion: return MLAB_E_ASSERTION;
    case ErrorCode::internal: return MLAB_E_INTERNAL;
    case ErrorCode::io: return MLAB_E_IO;
    case ErrorCode::invalid_argument: return MLAB_E_INVALID_ARGUMENT;
  }
  return MLAB_E_INTERNAL;
}

template <class F>
mlab_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return MLAB_OK;
  } catch (const mlab::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return MLAB_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return MLAB_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  mlab::require(p != nullptr, mlab::ErrorCode::invalid_argument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += x + "\n";
  return s;
}

mlab::Method method_arg(const char* m) {
  if (!m) return mlab::Method::auto_select;
  auto parsed = mlab::parse_method(m);
  mlab::require(parsed.has_value(), mlab::ErrorCode::invalid_argument,
                std::string("unknown method '") + m + "'");
  return *parsed;
}

}  // namespace

extern "C" {

const char* mlab_last_error(void) { return last_error.c_str(); }

const char* mlab_status_name(mlab_status s) {
  switch (s) {
    case MLAB_OK: return "ok";
    case MLAB_E_PARSE: return "parse";
    case MLAB_E_CONSISTENCY: return "consistency";
    case MLAB_E_PRECONDITION: return "precondition";
    case MLAB_E_SIZE_CAP: return "size_cap";
    case MLAB_E_NOT_APPLICABLE: return "not_applicable";
    case MLAB_E_LEDGER: return "ledger";
    case MLAB_E_ASSERTION: return "assertion";
    case MLAB_E_INTERNAL: return "internal";
    case MLAB_E_IO: return "io";
    case MLAB_E_INVALID_ARGUMENT: return "invalid_argument";
  }
  return "unknown";
}

void mlab_string_free(char* s) { std::free(s); }

mlab_status mlab_catalog_open(const char* dir, mlab_catalog** out) {
  return guard([&] {
    need(out, "out");
    auto c = std::make_unique<mlab_catalog>();
    c->cat = dir ? mlab::Catalog::load_dir(dir) : mlab::Catalog::load_default();
    *out = c.release();
  });
}

void mlab_catalog_free(mlab_catalog* c) { delete c; }

mlab_status mlab_catalog_ids(const mlab_catalog* c, char** out) {
  return guard([&] {
    need(c, "catalog");
    need(out, "out");
    std::vector<std::string> ids;
    for (const auto& [id, e] : c->cat.entries()) ids.push_back(id);
    *out = dup(join(ids));
  });
}

mlab_status mlab_group_from_dsl(const char* text, unsigned p, mlab_group** out) {
  return guard([&] {
    need(text, "text");
    need(out, "out");
    auto g = std::make_unique<mlab_group>();
    g->pres = mlab::load_group_dsl(text, p);
    *out = g.release();
  });
}

mlab_status mlab_group_from_catalog(const mlab_catalog* c, const char* id, unsigned p,
                                    mlab_group** out) {
  return guard([&] {
    need(c, "catalog");
    need(id, "id");
    need(out, "out");
    auto g = std::make_unique<mlab_group>();
    g->pres = c->cat.instantiate(id, p);
    g->cat = c;
    g->id = id;
    *out = g.release();
  });
}

void mlab_group_free(mlab_group* g) { delete g; }

mlab_status mlab_group_order_exponent(const mlab_group* g, int* out) {
  return guard([&] {
    need(g, "group");
    need(out, "out");
    *out = g->pres.order().exponent;
  });
}

mlab_status mlab_group_check(const mlab_group* g, char** out) {
  return guard([&] {
    need(g, "group");
    need(out, "out");
    const auto& pres = g->pres;
    const mlab::ConsistencyReport cr = mlab::check_consistency(pres);
    std::ostringstream s;
    s << "group " << (pres.name().empty() ? "(unnamed)" : pres.name()) << " p=" << pres.prime()
      << "\nconsistent: " << (cr.consistent ? "yes" : "no") << " (" << cr.tests_run
      << " overlap tests)\n";
    if (!cr.consistent) {
      s << "failure: " << cr.failure << "\n";
    } else {
      const mlab::StructureReport sr = mlab::structure_report(pres);
      s << "order: p^" << sr.order_exponent << "\nclass: " << sr.nilpotency_class
        << "\n|G'|: p^" << sr.derived.order_exponent() << "\n|Z(G)|: p^"
        << sr.center.order_exponent() << "\nexponent: p^" << sr.exponent_log
        << "\nabelianization: " << mlab::abelianization(pres).to_string() << "\n";
    }
    *out = dup(s.str());
  });
}

mlab_status mlab_compute(const mlab_group* g, const char* method, mlab_result** out) {
  return guard([&] {
    need(g, "group");
    need(out, "out");
    mlab::ComputeOptions opts;
    opts.method = method_arg(method);
    auto r = std::make_unique<mlab_result>();
    r->p = g->pres.prime();
    r->n = g->pres.order().exponent;
    const mlab::Catalog* cat = g->cat ? &g->cat->cat : nullptr;
    const mlab::CatalogEntry* e = cat ? &cat->entry(g->id) : nullptr;
    r->r = mlab::compute_multiplier(cat, e, g->pres, r->p, opts);
    *out = r.release();
  });
}

void mlab_result_free(mlab_result* r) { delete r; }

mlab_status mlab_result_multiplier(const mlab_result* r, char** out) {
  return guard([&] {
    need(r, "result");
    need(out, "out");
    *out = dup(r->r.multiplier.to_string());
  });
}

mlab_status mlab_result_exponents(const mlab_result* r, int* exps, size_t cap, size_t* count) {
  return guard([&] {
    need(r, "result");
    need(count, "count");
    const auto e = r->r.multiplier.p_exponents(r->p);
    *count = e.size();
    for (std::size_t i = 0; i < e.size() && i < cap; ++i) {
      need(exps, "exps");
      exps[i] = e[i];
    }
  });
}

mlab_status mlab_result_method(const mlab_result* r, char** out) {
  return guard([&] {
    need(r, "result");
    need(out, "out");
    *out = dup(mlab::method_name(r->r.method));
  });
}

mlab_status mlab_result_trace(const mlab_result* r, char** out) {
  return guard([&] {
    need(r, "result");
    need(out, "out");
    *out = dup(join(r->r.trace));
  });
}

mlab_status mlab_result_t(const mlab_result* r, int* out) {
  return guard([&] {
    need(r, "result");
    need(out, "out");
    *out = mlab::compute_t(r->n, r->r.multiplier, r->p);
  });
}

mlab_status mlab_verify_theorem(const mlab_catalog* c, unsigned p, const char* part,
                                unsigned threads, mlab_reports** out) {
  return guard([&] {
    need(c, "catalog");
    need(part, "part");
    need(out, "out");
    auto r = std::make_unique<mlab_reports>();
    r->reports = mlab::verify_theorem(c->cat, p, part, threads);
    *out = r.release();
  });
}

mlab_status mlab_table24(const mlab_catalog* c, unsigned p, unsigned threads, mlab_reports** out) {
  return guard([&] {
    need(c, "catalog");
    need(out, "out");
    auto r = std::make_unique<mlab_reports>();
    r->reports = mlab::table24(c->cat, p, threads);
    *out = r.release();
  });
}

mlab_status mlab_check_entry(const mlab_catalog* c, const char* id, unsigned p, const char* method,
                             mlab_reports** out) {
  return guard([&] {
    need(c, "catalog");
    need(id, "id");
    need(out, "out");
    mlab::ComputeOptions opts;
    opts.method = method_arg(method);
    auto r = std::make_unique<mlab_reports>();
    r->reports.push_back(mlab::check_entry(c->cat, id, p, std::nullopt, opts));
    *out = r.release();
  });
}

void mlab_reports_free(mlab_reports* r) { delete r; }

mlab_status mlab_reports_emit(const mlab_reports* r, const char* format, char** out) {
  return guard([&] {
    need(r, "reports");
    need(format, "format");
    need(out, "out");
    *out = dup(mlab::emit_report(r->reports, format));
  });
}

mlab_status mlab_reports_count(const mlab_reports* r, size_t* total, size_t* failed) {
  return guard([&] {
    need(r, "reports");
    if (total) *total = r->reports.size();
    if (failed) {
      *failed = 0;
      for (const auto& x : r->reports)
        if (!mlab::report_ok(x)) ++*failed;
    }
  });
}

mlab_status mlab_replay_script(const mlab_catalog* c, const char* script, unsigned p, mlab_replay** out) {
  return guard([&] {
    need(c, "catalog");
    need(script, "script");
    need(out, "out");
    auto r = std::make_unique<mlab_replay>();
    r->r = mlab::replay_file(c->cat, script,
                             p ? std::optional<std::uint32_t>(p) : std::nullopt);
    *out = r.release();
  });
}

void mlab_replay_free(mlab_replay* r) { delete r; }

int mlab_replay_passed(const mlab_replay* r) { return r && r->r.passed ? 1 : 0; }

size_t mlab_replay_failed_line(const mlab_replay* r) {
  return r && r->r.failed_line ? *r->r.failed_line : 0;
}

size_t mlab_replay_assumed_count(const mlab_replay* r) { return r ? r->r.assumed.size() : 0; }

mlab_status mlab_replay_trace(const mlab_replay* r, char** out) {
  return guard([&] {
    need(r, "replay");
    need(out, "out");
    *out = dup(join(r->r.trace));
  });
}

mlab_status mlab_replay_failure(const mlab_replay* r, char** out) {
  return guard([&] {
    need(r, "replay");
    need(out, "out");
    *out = dup(r->r.failure);
  });
}

}  // extern "C"
