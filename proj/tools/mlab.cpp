// Command line front end; talks to the library only through the C API.

#include "mlab/mlab.h"

#include "CLI11.hpp"

#include <cstdio>
#include <memory>
#include <string>

namespace {

struct Str {
  char* s = nullptr;
  ~Str() { mlab_string_free(s); }
};

int fail(mlab_status st) {
  std::fprintf(stderr, "error (%s): %s\n", mlab_status_name(st), mlab_last_error());
  return 2;
}

int print_reports(mlab_reports* r, const std::string& format) {
  std::unique_ptr<mlab_reports, void (*)(mlab_reports*)> hold(r, mlab_reports_free);
  Str out;
  if (mlab_status st = mlab_reports_emit(r, format.c_str(), &out.s)) return fail(st);
  std::fputs(out.s, stdout);
  size_t total = 0, failed = 0;
  mlab_reports_count(r, &total, &failed);
  if (format == "table") std::printf("%zu entries, %zu failed\n", total, failed);
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schur multipliers of finite p-groups"};
  app.require_subcommand(1);
  std::string catalog_dir;
  app.add_option("--catalog", catalog_dir, "catalog directory (default: installed catalog)");

  std::string group, method = "auto", format = "table", part, script;
  unsigned p = 0, threads = 0;

  auto* compute = app.add_subcommand("compute", "Schur multiplier and t(G) of a catalog entry");
  compute->add_option("--group", group, "catalog ID")->required();
  compute->add_option("--p", p, "prime")->required();
  compute->add_option("--method", method, "auto|oracle|be|kunneth|tails");
  compute->add_option("--format", format, "table|jsonl");
  compute->add_flag("--trace", "print the derivation trace");

  auto* verify = app.add_subcommand("verify-theorem", "t(G) = 6 verification suite");
  verify->add_option("--p", p, "prime")->required();
  verify->add_option("--part", part, "odd|two")->required();
  verify->add_option("--format", format, "table|jsonl");
  verify->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* t24 = app.add_subcommand("table24", "order-p^4 multiplier table suite");
  t24->add_option("--p", p, "odd prime")->required();
  t24->add_option("--format", format, "table|jsonl");
  t24->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* replay = app.add_subcommand("replay", "replay a bound derivation script");
  replay->add_option("--script", script, "script file")->required();
  replay->add_option("--p", p, "prime (overrides the script)");

  auto* check = app.add_subcommand("check", "consistency and structure of a catalog entry");
  check->add_option("--group", group, "catalog ID")->required();
  check->add_option("--p", p, "prime")->required();

  CLI11_PARSE(app, argc, argv);

  mlab_catalog* cat = nullptr;
  if (mlab_status st = mlab_catalog_open(catalog_dir.empty() ? nullptr : catalog_dir.c_str(), &cat))
    return fail(st);
  std::unique_ptr<mlab_catalog, void (*)(mlab_catalog*)> hold(cat, mlab_catalog_free);

  if (*compute) {
    mlab_reports* r = nullptr;
    if (mlab_status st = mlab_check_entry(cat, group.c_str(), p, method.c_str(), &r)) return fail(st);
    if (compute->count("--trace")) {
      Str j;
      mlab_reports_emit(r, "jsonl", &j.s);
      std::fputs(j.s, stderr);
    }
    return print_reports(r, format);
  }
  if (*verify) {
    mlab_reports* r = nullptr;
    if (mlab_status st = mlab_verify_theorem(cat, p, part.c_str(), threads, &r)) return fail(st);
    return print_reports(r, format);
  }
  if (*t24) {
    mlab_reports* r = nullptr;
    if (mlab_status st = mlab_table24(cat, p, threads, &r)) return fail(st);
    return print_reports(r, format);
  }
  if (*replay) {
    mlab_replay* r = nullptr;
    if (mlab_status st = mlab_replay_script(cat, script.c_str(), p, &r)) return fail(st);
    std::unique_ptr<mlab_replay, void (*)(mlab_replay*)> hr(r, mlab_replay_free);
    Str trace;
    mlab_replay_trace(r, &trace.s);
    std::fputs(trace.s, stdout);
    if (!mlab_replay_passed(r)) {
      Str why;
      mlab_replay_failure(r, &why.s);
      std::printf("REPLAY FAILED at %s\n", why.s);
      return 1;
    }
    std::printf("REPLAY PASSED (%zu assumed facts)\n", mlab_replay_assumed_count(r));
    return 0;
  }
  if (*check) {
    mlab_group* g = nullptr;
    if (mlab_status st = mlab_group_from_catalog(cat, group.c_str(), p, &g)) return fail(st);
    std::unique_ptr<mlab_group, void (*)(mlab_group*)> hg(g, mlab_group_free);
    Str out;
    if (mlab_status st = mlab_group_check(g, &out.s)) return fail(st);
    std::fputs(out.s, stdout);
    return 0;
  }
  return 0;
}
