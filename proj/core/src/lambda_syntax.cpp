#include <cctype>

#include "kinfty/error.hpp"
#include "kinfty/lambda.hpp"

namespace kinfty::lambda {

TermPtr var(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::var;
  t->name = std::move(name);
  return t;
}

TermPtr app(TermPtr fn, TermPtr arg) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::app;
  t->fn = std::move(fn);
  t->arg = std::move(arg);
  return t;
}

TermPtr abs(std::string binder, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = Term::Kind::abs;
  t->name = std::move(binder);
  t->body = std::move(body);
  return t;
}

// --- parsing ------------------------------------------------------------------

namespace {

constexpr std::string_view kLambda = "λ";

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  TermPtr run() {
    auto t = term();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("term syntax error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool at_lambda() {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == '\\') return true;
    return src_.substr(pos_, kLambda.size()) == kLambda;
  }

  bool at_ident() {
    skip_space();
    return pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]));
  }

  bool at_atom() { return at_ident() || (pos_ < src_.size() && src_[pos_] == '('); }

  std::string ident() {
    if (!at_ident()) fail("expected an identifier");
    const auto start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= src_.size() || src_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  TermPtr term() {
    if (at_lambda()) {
      pos_ += src_[pos_] == '\\' ? 1 : kLambda.size();
      auto binder = ident();
      expect('.');
      return abs(std::move(binder), term());
    }
    if (!at_atom()) fail(pos_ < src_.size() ? "expected a term" : "unexpected end of input");
    auto t = atom();
    while (at_atom()) t = app(std::move(t), atom());
    return t;
  }

  TermPtr atom() {
    if (at_ident()) return var(ident());
    expect('(');
    auto t = term();
    expect(')');
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

void collect_free(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind) {
    case Term::Kind::var:
      if (!bound.count(t->name)) out.insert(t->name);
      return;
    case Term::Kind::app:
      collect_free(t->fn, bound, out);
      collect_free(t->arg, bound, out);
      return;
    case Term::Kind::abs: {
      const bool fresh = bound.insert(t->name).second;
      collect_free(t->body, bound, out);
      if (fresh) bound.erase(t->name);
      return;
    }
  }
}

TermPtr canonical_rec(const TermPtr& t, std::map<std::string, std::string>& names, int depth) {
  switch (t->kind) {
    case Term::Kind::var: {
      auto it = names.find(t->name);
      return it == names.end() ? t : var(it->second);
    }
    case Term::Kind::app:
      return app(canonical_rec(t->fn, names, depth), canonical_rec(t->arg, names, depth));
    case Term::Kind::abs: {
      const std::string fresh = "%" + std::to_string(depth);
      auto saved = names.find(t->name) == names.end() ? std::nullopt
                                                      : std::optional<std::string>(names[t->name]);
      names[t->name] = fresh;
      auto body = canonical_rec(t->body, names, depth + 1);
      if (saved)
        names[t->name] = *saved;
      else
        names.erase(t->name);
      return abs(fresh, std::move(body));
    }
  }
  return t;
}

bool same_tree(const TermPtr& s, const TermPtr& t) {
  if (s->kind != t->kind) return false;
  switch (s->kind) {
    case Term::Kind::var:
      return s->name == t->name;
    case Term::Kind::app:
      return same_tree(s->fn, t->fn) && same_tree(s->arg, t->arg);
    case Term::Kind::abs:
      return s->name == t->name && same_tree(s->body, t->body);
  }
  return false;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 1;; ++i) {
    auto n = base + std::to_string(i);
    if (!avoid.count(n)) return n;
  }
}

bool is_eta_redex(const TermPtr& t) {
  if (t->kind != Term::Kind::abs || t->body->kind != Term::Kind::app) return false;
  const auto& a = t->body->arg;
  return a->kind == Term::Kind::var && a->name == t->name && !free_vars(t->body->fn).count(t->name);
}

void collect_redexes(const TermPtr& root, const TermPtr& t, Position& p, std::vector<ConversionStep>& out) {
  if (t->kind == Term::Kind::app && t->fn->kind == Term::Kind::abs) out.push_back(beta_step(root, p));
  if (is_eta_redex(t)) out.push_back(eta_step(root, p));
  switch (t->kind) {
    case Term::Kind::var:
      return;
    case Term::Kind::app:
      p.push_back(0);
      collect_redexes(root, t->fn, p, out);
      p.back() = 1;
      collect_redexes(root, t->arg, p, out);
      p.pop_back();
      return;
    case Term::Kind::abs:
      p.push_back(0);
      collect_redexes(root, t->body, p, out);
      p.pop_back();
      return;
  }
}

}  // namespace

TermPtr parse(std::string_view src) { return Parser(src).run(); }

std::string render(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::var:
      return t->name;
    case Term::Kind::abs:
      return "λ" + t->name + "." + render(t->body);
    case Term::Kind::app: {
      auto f = render(t->fn);
      if (t->fn->kind == Term::Kind::abs) f = "(" + f + ")";
      auto a = render(t->arg);
      if (t->arg->kind != Term::Kind::var) a = "(" + a + ")";
      return f + " " + a;
    }
  }
  return {};
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(t, bound, out);
  return out;
}

std::size_t size(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::var:
      return 1;
    case Term::Kind::app:
      return 1 + size(t->fn) + size(t->arg);
    case Term::Kind::abs:
      return 1 + size(t->body);
  }
  return 0;
}

TermPtr canonical(const TermPtr& t) {
  std::map<std::string, std::string> names;
  return canonical_rec(t, names, 0);
}

bool alpha_equal(const TermPtr& s, const TermPtr& t) { return same_tree(canonical(s), canonical(t)); }

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& n) {
  switch (t->kind) {
    case Term::Kind::var:
      return t->name == x ? n : t;
    case Term::Kind::app:
      return app(substitute(t->fn, x, n), substitute(t->arg, x, n));
    case Term::Kind::abs: {
      if (t->name == x) return t;
      const auto body_free = free_vars(t->body);
      if (!body_free.count(x)) return t;
      const auto n_free = free_vars(n);
      if (!n_free.count(t->name)) return abs(t->name, substitute(t->body, x, n));
      auto avoid = n_free;
      avoid.insert(body_free.begin(), body_free.end());
      avoid.insert(x);
      const auto fresh = fresh_name(t->name, avoid);
      return abs(fresh, substitute(substitute(t->body, t->name, var(fresh)), x, n));
    }
  }
  return t;
}

// --- positions ----------------------------------------------------------------

std::string render(const Position& p) {
  if (p.empty()) return "root";
  std::string out;
  for (int i : p) {
    if (!out.empty()) out += ".";
    out += std::to_string(i);
  }
  return out;
}

TermPtr subterm(const TermPtr& t, const Position& p) {
  TermPtr cur = t;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const int step = p[i];
    if (cur->kind == Term::Kind::app && (step == 0 || step == 1)) {
      cur = step == 0 ? cur->fn : cur->arg;
    } else if (cur->kind == Term::Kind::abs && step == 0) {
      cur = cur->body;
    } else {
      throw InputError("position " + render(p) + " leaves the term " + render(t));
    }
  }
  return cur;
}

TermPtr replace_at(const TermPtr& t, const Position& p, TermPtr with) {
  std::vector<TermPtr> path{t};
  for (std::size_t i = 0; i < p.size(); ++i) path.push_back(subterm(path.back(), {p[i]}));
  TermPtr cur = std::move(with);
  for (std::size_t i = p.size(); i-- > 0;) {
    const auto& parent = path[i];
    if (parent->kind == Term::Kind::abs)
      cur = abs(parent->name, cur);
    else
      cur = p[i] == 0 ? app(cur, parent->arg) : app(parent->fn, cur);
  }
  return cur;
}

// --- conversions --------------------------------------------------------------

std::string to_string(ConversionStep::Kind k) {
  switch (k) {
    case ConversionStep::Kind::beta:
      return "beta";
    case ConversionStep::Kind::eta:
      return "eta";
    case ConversionStep::Kind::refl:
      return "refl";
  }
  return {};
}

ConversionStep beta_step(const TermPtr& t, const Position& p) {
  const auto r = subterm(t, p);
  if (r->kind != Term::Kind::app || r->fn->kind != Term::Kind::abs)
    throw InputError("no beta-redex at " + render(p) + " in " + render(t));
  auto contractum = substitute(r->fn->body, r->fn->name, r->arg);
  return {ConversionStep::Kind::beta, p, t, replace_at(t, p, std::move(contractum))};
}

ConversionStep eta_step(const TermPtr& t, const Position& p) {
  const auto r = subterm(t, p);
  if (!is_eta_redex(r)) throw InputError("no eta-redex at " + render(p) + " in " + render(t));
  return {ConversionStep::Kind::eta, p, t, replace_at(t, p, r->body->fn)};
}

ConversionStep refl_step(const TermPtr& t) { return {ConversionStep::Kind::refl, {}, t, t}; }

std::vector<ConversionStep> redexes(const TermPtr& t) {
  std::vector<ConversionStep> out;
  Position p;
  collect_redexes(t, t, p, out);
  return out;
}

}  // namespace kinfty::lambda
