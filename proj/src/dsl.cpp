#include "mlab/dsl.hpp"
#include "mlab/error.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace mlab {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ----------------------------------------------------------- expressions

namespace {

struct ExprParser {
  const std::string& s;
  long long p;
  std::size_t i = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::parse, "expression '" + s + "': " + why);
  }
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  long long sum() {
    long long v = product();
    for (;;) {
      if (eat('+')) v += product();
      else if (eat('-')) v -= product();
      else return v;
    }
  }
  long long product() {
    long long v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        const long long d = unary();
        if (d == 0 || v % d != 0) fail("inexact division");
        v /= d;
      } else {
        return v;
      }
    }
  }
  long long unary() {
    if (eat('-')) return -unary();
    return power();
  }
  long long power() {
    long long base = atom();
    if (!eat('^')) return base;
    long long e = unary();
    if (e < 0) fail("negative exponent");
    if (e > 62) fail("exponent too large");
    long long r = 1;
    for (long long k = 0; k < e; ++k) {
      if (base != 0 && (r > (1LL << 62) / (base < 0 ? -base : base))) fail("overflow");
      r *= base;
    }
    return r;
  }
  long long atom() {
    skip();
    if (eat('(')) {
      long long v = sum();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (i < s.size() && s[i] == 'p') {
      ++i;
      return p;
    }
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      long long v = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + (s[i] - '0');
        if (v > (1LL << 40)) fail("literal too large");
        ++i;
      }
      return v;
    }
    fail(i < s.size() ? std::string("unexpected '") + s[i] + "'" : "unexpected end");
  }
};

}  // namespace

long long eval_expr(const std::string& expr, long long p) {
  ExprParser e{expr, p};
  long long v = e.sum();
  e.skip();
  if (e.i != expr.size()) e.fail("trailing input");
  return v;
}

// ----------------------------------------------------------- statements

namespace {

std::vector<std::string> tokenize(const std::string& line, std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, any = false;
  auto flush = [&] {
    if (any) out.push_back(cur);
    cur.clear();
    any = false;
  };
  for (char c : line) {
    if (quoted) {
      if (c == '"') quoted = false;
      else cur += c;
      continue;
    }
    if (c == '#') break;
    if (c == '"') {
      quoted = any = true;
    } else if (c == '=') {
      flush();
      out.emplace_back("=");
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur += c;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::parse, "line " + std::to_string(lineno) + ": unterminated quote");
  flush();
  return out;
}

[[noreturn]] void bad(const DslStatement& st, const std::string& why) {
  throw Error(ErrorCode::parse, "line " + std::to_string(st.line) + " (" + st.keyword + "): " + why);
}

// args after '=' joined into one word
std::string rhs_word(const DslStatement& st, std::size_t lhs_count) {
  if (st.args.size() < lhs_count + 2 || st.args[lhs_count] != "=")
    bad(st, "expected '" + st.keyword + (lhs_count == 1 ? " <gen>" : " <gen> <gen>") + " = <word>'");
  std::string w;
  for (std::size_t i = lhs_count + 1; i < st.args.size(); ++i) {
    if (st.args[i] == "=") bad(st, "more than one '='");
    w += st.args[i];
  }
  return w;
}

}  // namespace

CatalogEntry parse_entry(const std::string& text, std::string id) {
  CatalogEntry e;
  e.id = std::move(id);
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line, lineno);
    if (tok.empty()) continue;
    DslStatement st{lineno, tok[0], {tok.begin() + 1, tok.end()}};
    const auto& a = st.args;
    const std::string& k = st.keyword;
    if (k == "gen" || k == "pow" || k == "comm") {
      if (k == "gen" && a.size() != 2) bad(st, "expected 'gen <name> <relative order>'");
      if (k == "pow") rhs_word(st, 1);
      if (k == "comm") rhs_word(st, 2);
      e.presentation.push_back(std::move(st));
    } else if (k == "prime") {
      if (a.size() != 1) bad(st, "expected 'prime <int>'");
      long long v = eval_expr(a[0], 0);
      if (v < 2 || !is_prime(static_cast<std::uint64_t>(v))) bad(st, a[0] + " is not prime");
      e.fixed_prime = static_cast<std::uint32_t>(v);
    } else if (k == "name") {
      if (a.size() != 1) bad(st, "expected 'name \"<text>\"'");
      e.display_name = a[0];
    } else if (k == "constraint") {
      if (a.size() != 1 || (a[0] != "odd" && a[0] != "two" && a[0] != "any"))
        bad(st, "constraint must be odd, two or any");
      e.constraint = a[0];
    } else if (k == "product") {
      if (a.size() < 2) bad(st, "a product needs at least two factors");
      e.product = a;
    } else if (k == "expect") {
      if (a.size() < 3) bad(st, "expected 'expect <kind> <values> \"<source>\"'");
      Expectation x;
      if (a[0] == "multiplier") x.kind = Expectation::Kind::multiplier;
      else if (a[0] == "order") x.kind = Expectation::Kind::order;
      else if (a[0] == "t") x.kind = Expectation::Kind::t;
      else bad(st, "unknown expectation '" + a[0] + "'");
      x.values.assign(a.begin() + 1, a.end() - 1);
      x.source = a.back();
      if (x.kind != Expectation::Kind::multiplier && x.values.size() != 1)
        bad(st, "expect " + a[0] + " takes one value");
      e.expectations.push_back(std::move(x));
    } else if (k == "suite") {
      if (a.size() != 2) bad(st, "expected 'suite <suite> <label>'");
      e.suites.push_back({a[0], a[1]});
    } else if (k == "squeeze") {
      if (a.size() != 1) bad(st, "expected 'squeeze <script>'");
      e.squeeze = a[0];
    } else if (k == "disabled") {
      if (a.size() != 1) bad(st, "expected 'disabled \"<reason>\"'");
      e.disabled = a[0];
    } else if (k == "witness_for") {
      if (a.size() != 1) bad(st, "expected 'witness_for <ID>'");
      e.witness_for = a[0];
    } else if (k == "image") {
      if (a.empty()) bad(st, "expected 'image <word>'");
      std::string w;
      for (const auto& s : a) w += s;
      e.images.push_back(w);
    } else {
      bad(st, "unknown statement");
    }
  }
  if (e.is_product() && !e.presentation.empty())
    throw Error(ErrorCode::parse, "entry mixes 'product' with generators");
  return e;
}

std::optional<std::string> CatalogEntry::reject_prime(std::uint32_t p) const {
  if (!is_prime(p)) return std::to_string(p) + " is not prime";
  if (fixed_prime && *fixed_prime != p)
    return "entry is fixed at p=" + std::to_string(*fixed_prime);
  if (constraint == "odd" && p == 2) return "entry needs odd p";
  if (constraint == "two" && p != 2) return "entry needs p=2";
  return std::nullopt;
}

// ----------------------------------------------------------- instantiation

namespace {

std::vector<std::string> split_atoms(const std::string& word) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : word) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '*' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Letters of a word over the names in `names`.
std::vector<Letter> letters(const std::vector<std::string>& names, const std::string& word, long long p) {
  std::vector<Letter> out;
  if (word == "1") return out;
  for (const auto& atom : split_atoms(word)) {
    if (atom.empty()) throw Error(ErrorCode::parse, "empty factor in word '" + word + "'");
    const auto hat = atom.find('^');
    const std::string name = atom.substr(0, hat);
    long long e = hat == std::string::npos ? 1 : eval_expr(atom.substr(hat + 1), p);
    std::size_t idx = names.size();
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) idx = i;
    if (idx == names.size()) throw Error(ErrorCode::parse, "unknown generator '" + name + "' in word '" + word + "'");
    if (e > (1LL << 30) || e < -(1LL << 30)) throw Error(ErrorCode::parse, "exponent too large in '" + atom + "'");
    if (e != 0) out.push_back({static_cast<int>(idx), static_cast<int>(e)});
  }
  return out;
}

}  // namespace

NormalWord parse_word(const PcPresentation& g, const std::string& word, long long p) {
  auto ls = letters(g.generator_names(), word, p);
  return g.collect(ls);
}

PcPresentation instantiate(const CatalogEntry& e, std::uint32_t p) {
  require(!e.is_product(), ErrorCode::invalid_argument, e.id + " is a product entry");
  if (auto why = e.reject_prime(p)) throw Error(ErrorCode::invalid_argument, e.id + ": " + *why);
  std::vector<std::string> names;
  std::vector<int> rel;
  std::map<std::string, std::size_t> index;
  for (const auto& st : e.presentation) {
    if (st.keyword != "gen") continue;
    const std::string& name = st.args[0];
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])) || name == "p")
      bad(st, "bad generator name '" + name + "'");
    if (index.count(name)) bad(st, "duplicate generator '" + name + "'");
    long long r = eval_expr(st.args[1], p);
    int ex = 0;
    while (r > 1 && r % p == 0) {
      r /= p;
      ++ex;
    }
    if (r != 1 || ex == 0) bad(st, "relative order " + st.args[1] + " is not a positive power of p");
    index[name] = names.size();
    names.push_back(name);
    rel.push_back(ex);
  }
  const std::size_t n = names.size();
  require(n > 0, ErrorCode::parse, "presentation has no generators");
  std::vector<const DslStatement*> pw(n, nullptr);
  std::vector<std::vector<const DslStatement*>> cm(n, std::vector<const DslStatement*>(n, nullptr));
  auto gen_of = [&](const DslStatement& st, const std::string& nm) {
    auto it = index.find(nm);
    if (it == index.end()) bad(st, "unknown generator '" + nm + "'");
    return it->second;
  };
  for (const auto& st : e.presentation) {
    if (st.keyword == "pow") {
      auto i = gen_of(st, st.args[0]);
      if (pw[i]) bad(st, "second power relation for '" + st.args[0] + "'");
      pw[i] = &st;
    } else if (st.keyword == "comm") {
      auto x = gen_of(st, st.args[0]), y = gen_of(st, st.args[1]);
      if (x == y) bad(st, "commutator of a generator with itself");
      auto j = std::max(x, y), i = std::min(x, y);
      if (cm[j][i]) bad(st, "second commutator relation for (" + names[j] + ", " + names[i] + ")");
      cm[j][i] = &st;
    }
  }

  std::vector<NormalWord> power(n, NormalWord::identity(n));
  std::vector<std::vector<NormalWord>> comm(n);
  for (std::size_t j = 0; j < n; ++j) comm[j].assign(j, NormalWord::identity(n));

  // Tails of relations whose lowest generator is g_i live in the subgroup
  // on g_{i+1} .. g_{n-1}, whose presentation is complete by then.
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t m = n - i - 1;
    std::vector<std::string> sub_names(names.begin() + static_cast<long>(i + 1), names.end());
    std::vector<int> sub_rel(rel.begin() + static_cast<long>(i + 1), rel.end());
    auto shrink = [&](const NormalWord& w) {
      return NormalWord(std::vector<int>(w.exps.begin() + static_cast<long>(i + 1), w.exps.end()));
    };
    std::vector<NormalWord> sub_pw;
    std::vector<std::vector<NormalWord>> sub_cm(m);
    for (std::size_t a = i + 1; a < n; ++a) {
      sub_pw.push_back(shrink(power[a]));
      for (std::size_t b = i + 1; b < a; ++b) sub_cm[a - i - 1].push_back(shrink(comm[a][b]));
    }
    std::optional<PcPresentation> sub;
    if (m > 0) sub.emplace(p, sub_names, sub_rel, sub_pw, sub_cm);
    auto tail = [&](const DslStatement& st, std::size_t lhs, bool invert) {
      const std::string w = rhs_word(st, lhs);
      std::vector<Letter> ls;
      try {
        ls = letters(names, w, p);
      } catch (const Error& err) {
        bad(st, err.what());
      }
      for (auto& l : ls) {
        if (static_cast<std::size_t>(l.gen) <= i)
          bad(st, "tail uses '" + names[static_cast<std::size_t>(l.gen)] + "', which is not below the relation");
        l.gen -= static_cast<int>(i + 1);
      }
      if (!sub) return NormalWord::identity(n);
      NormalWord t = sub->collect(ls);
      if (invert) t = sub->inverse(t);
      std::vector<int> full(i + 1, 0);
      full.insert(full.end(), t.exps.begin(), t.exps.end());
      return NormalWord(std::move(full));
    };
    if (pw[i]) power[i] = tail(*pw[i], 1, false);
    for (std::size_t j = i + 1; j < n; ++j)
      if (cm[j][i]) {
        // comm x y with x = g_i means [g_i, g_j] = w, i.e. [g_j, g_i] = w^-1
        const bool invert = index.at(cm[j][i]->args[0]) == i;
        comm[j][i] = tail(*cm[j][i], 2, invert);
      }
  }
  PcPresentation g(p, names, rel, power, comm, e.id);
  const ConsistencyReport rep = check_consistency(g);
  require(rep.consistent, ErrorCode::consistency,
          (e.id.empty() ? std::string("presentation") : e.id) + " at p=" + std::to_string(p) +
              " is inconsistent: " + rep.failure);
  return g;
}

PcPresentation load_group_dsl(const std::string& text, std::uint32_t p) {
  return instantiate(parse_entry(text), p);
}

}  // namespace mlab
