#include "cli.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kinfty/error.hpp"
#include "kinfty/funcspace.hpp"
#include "kinfty/homotopy.hpp"
#include "kinfty/horns.hpp"
#include "kinfty/lambda.hpp"
#include "kinfty/text_format.hpp"

namespace kinfty::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::optional<int> to_int(const std::string& s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

int builtin_int(const std::string& source, const std::string& field) {
  auto v = to_int(field);
  if (!v || *v < 0) throw InputError("bad number '" + field + "' in builtin '" + source + "'");
  return *v;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

std::optional<hpo::WeakDomain> builtin_domain(const std::string& source) {
  const auto parts = split(source, ':');
  if (parts.empty()) return std::nullopt;
  if (parts[0] == "nplus" && parts.size() == 2) return hpo::build_N_plus(builtin_int(source, parts[1]));
  if (parts[0] == "chain" && parts.size() == 2) {
    const int n = builtin_int(source, parts[1]);
    if (n < 1) throw InputError("chain needs at least one element");
    return hpo::chain_domain(n);
  }
  if (source == "butterfly") return hpo::butterfly_domain();
  if (source == "point") return hpo::point_domain();
  return std::nullopt;
}

tower::TowerConfig config_or(const std::optional<std::string>& path, tower::TowerConfig fallback,
                             std::string& identity) {
  if (!path) return fallback;
  identity += read_file(*path);
  return tower::load_config(*path);
}

std::string describe_config(const tower::TowerConfig& c) {
  return "K0 = " + c.k0_source + ", N = " + std::to_string(c.N) + ", rep = " + c.rep;
}

std::string join_components(const tower::Tower& t, tower::TowerElement x) {
  std::string out;
  for (const auto& s : t.render_components(x)) out += (out.empty() ? "(" : ", ") + s;
  return out + ")";
}

std::string render_class(const std::vector<std::int64_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + "]";
}

}  // namespace

int RunReport::exit_code() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.passed; }) ? kOk
                                                                                               : kVerdictFail;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = hex[h & 0xf];
  return out;
}

// --- reports ------------------------------------------------------------------

std::string to_json(const RunReport& r) {
  json j;
  j["command"] = r.command;
  j["inputs_digest"] = r.inputs_digest;
  j["verdicts"] = json::array();
  for (const auto& v : r.verdicts) j["verdicts"].push_back({{"name", v.name}, {"value", v.value}, {"passed", v.passed}});
  j["witnesses"] = json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back({{"name", w.name}, {"text", w.text}});
  j["seconds"] = r.seconds;
  j["exit_code"] = r.exit_code();
  return j.dump(2);
}

RunReport from_json(std::string_view text) {
  try {
    const auto j = json::parse(text);
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.inputs_digest = j.at("inputs_digest").get<std::string>();
    for (const auto& v : j.at("verdicts"))
      r.verdicts.push_back({v.at("name").get<std::string>(), v.at("value").get<std::string>(), v.at("passed").get<bool>()});
    for (const auto& w : j.at("witnesses"))
      r.witnesses.push_back({w.at("name").get<std::string>(), w.at("text").get<std::string>()});
    r.seconds = j.at("seconds").get<double>();
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

std::string to_text(const RunReport& r) {
  std::ostringstream out;
  out << "command: " << r.command << "\n";
  out << "inputs: " << r.inputs_digest << "\n";
  for (const auto& w : r.witnesses) out << "  " << w.name << ": " << w.text << "\n";
  for (const auto& v : r.verdicts) out << (v.passed ? "[ok]   " : "[FAIL] ") << v.name << ": " << v.value << "\n";
  out << "time: " << r.seconds << " s\n";
  return out.str();
}

// --- inputs -------------------------------------------------------------------

simplicial::FiniteComplex load_complex(const std::string& source, std::string* identity) {
  const auto parts = split(source, ':');
  if (identity) *identity = source;
  if (parts.size() == 2 && parts[0] == "delta") return simplicial::standard_simplex(builtin_int(source, parts[1]));
  if (parts.size() == 2 && parts[0] == "boundary") {
    const int n = builtin_int(source, parts[1]);
    if (n < 1) throw InputError("boundary:n needs n >= 1");
    return simplicial::boundary_complex(n);
  }
  if (parts.size() == 3 && parts[0] == "horn") {
    const int n = builtin_int(source, parts[1]);
    const int i = builtin_int(source, parts[2]);
    if (n < 1 || i > n) throw InputError("horn:n:i needs n >= 1 and 0 <= i <= n");
    return simplicial::horn_complex(n, i);
  }
  const auto text = read_file(source);
  if (identity) *identity = text;
  return simplicial::parse_document(text).complex;
}

hpo::WeakDomain load_domain(const std::string& source, std::string* identity) {
  if (identity) *identity = source;
  if (source.rfind("fun:", 0) == 0) {
    auto base = builtin_domain(source.substr(4));
    if (!base) throw InputError("fun: needs a builtin domain, got '" + source.substr(4) + "'");
    return funcspace::function_space_domain(*base, *base).domain;
  }
  if (auto d = builtin_domain(source)) return *d;
  const auto text = read_file(source);
  if (identity) *identity = text;
  return hpo::WeakDomain::from_document(simplicial::parse_document(text));
}

std::vector<std::pair<std::string, std::string>> parse_env(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  if (text.empty()) return out;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
      throw InputError("environment entries look like name=vertex, got '" + item + "'");
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

std::size_t instance_cap() {
  const char* v = std::getenv("KINFTY_MAX_INSTANCES");
  if (!v) return simplicial::kDefaultInstanceCap;
  std::size_t n = 0;
  const std::string_view s(v);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc() || p != s.data() + s.size() || n == 0)
    throw InputError("KINFTY_MAX_INSTANCES must be a positive integer");
  return n;
}

// --- commands -----------------------------------------------------------------

RunReport cmd_kan_check(const std::string& source, const KanOptions& opts) {
  const auto start = Clock::now();
  if (opts.dim < 1) throw InputError("--dim must be at least 1");
  std::string identity;
  const auto x = load_complex(source, &identity);
  const auto scope = opts.inner_only ? simplicial::HornScope::inner : simplicial::HornScope::all;
  const auto k = simplicial::kan_check(x, opts.dim, instance_cap(), scope);

  RunReport r;
  r.command = "kan-check";
  r.inputs_digest = fnv1a_hex(identity + "\n--dim " + std::to_string(opts.dim) + (opts.inner_only ? " --inner" : ""));
  r.witnesses.push_back({"scope", k.scope + " up to dimension " + std::to_string(k.up_to) +
                                      (opts.inner_only ? ", inner horns" : ", all horns")});
  r.witnesses.push_back({"instances", std::to_string(k.instances)});
  if (k.witness) r.witnesses.push_back({"unfillable horn", simplicial::describe(x, *k.witness)});
  if (k.aborted) {
    r.verdicts.push_back({"kan", "INCONCLUSIVE (instance cap reached; raise KINFTY_MAX_INSTANCES)", false});
  } else {
    r.verdicts.push_back({"kan", pass_fail(k.passed), k.passed});
  }
  r.seconds = since(start);
  return r;
}

RunReport cmd_domain_check(const std::string& source) {
  const auto start = Clock::now();
  std::string identity;
  const auto k = load_domain(source, &identity);

  RunReport r;
  r.command = "domain-check";
  r.inputs_digest = fnv1a_hex(identity);
  r.witnesses.push_back({"vertices", std::to_string(k.size())});

  const auto pre = hpo::check_preorder(k);
  r.verdicts.push_back({"preorder and hom-discipline", pass_fail(pre.ok()), pre.ok()});
  if (!pre.ok()) r.witnesses.push_back({"preorder failure", pre.failure});

  r.verdicts.push_back({"bottom", k.pointed() ? k.name(*k.bottom()) : "none", k.pointed()});

  const auto alg = hpo::is_algebraic(k);
  std::string alg_value = pass_fail(alg.passed);
  if (alg.precondition_failed) alg_value = "FAIL (precondition: " + alg.message + ")";
  r.verdicts.push_back({"algebraic", alg_value, alg.passed});
  if (!alg.failures.empty()) r.witnesses.push_back({"non-algebraic points", k.render_set(alg.failures)});

  const auto bc = hpo::is_bounded_complete(k);
  r.verdicts.push_back({"bounded complete", pass_fail(bc.passed), bc.passed});
  if (bc.failing_subset)
    r.witnesses.push_back({"bounded set without a least upper bound", k.render_set(*bc.failing_subset)});

  const bool all = pre.ok() && k.pointed() && alg.passed && bc.passed;
  r.verdicts.push_back(
      {"domain", all ? "Homotopy Scott Domain (finite witness)" : "not a Homotopy Scott Domain", all});
  r.seconds = since(start);
  return r;
}

RunReport cmd_interpret(const std::string& term, const std::string& env, const std::optional<std::string>& config) {
  const auto start = Clock::now();
  std::string identity = term + "\n" + env + "\n";
  const tower::Tower t(config_or(config, {}, identity));
  const auto parsed = lambda::parse(term);
  lambda::Environment rho;
  for (const auto& [name, vertex] : parse_env(env)) rho[name] = t.vertex(vertex);
  const auto v = lambda::interpret(t, parsed, rho);

  RunReport r;
  r.command = "interpret";
  r.inputs_digest = fnv1a_hex(identity);
  r.witnesses.push_back({"config", describe_config(t.config())});
  r.witnesses.push_back({"term", lambda::render(parsed)});
  r.witnesses.push_back({"base level", std::to_string(v.level)});
  r.witnesses.push_back({"components", join_components(t, v)});
  r.verdicts.push_back({"value", t.render(v), true});
  r.seconds = since(start);
  return r;
}

RunReport cmd_example_4_1(const std::optional<std::string>& config) {
  const auto start = Clock::now();
  std::string identity = "example-4-1\n";
  tower::TowerConfig preset;
  preset.rep = "example41";
  const tower::Tower t(config_or(config, preset, identity));
  const auto& carrier = t.k0().carrier();
  const auto a = t.vertex("S1.0");
  const auto b = t.vertex("S1.1");

  RunReport r;
  r.command = "example-4-1";
  r.inputs_digest = fnv1a_hex(identity);
  r.witnesses.push_back({"config", describe_config(t.config())});
  r.witnesses.push_back({"a, b", t.render(a) + ", " + t.render(b)});

  const auto hk = t.h_map(t.k_map(a));
  r.witnesses.push_back({"h(k(a))", t.render(hk) + " = " + join_components(t, hk)});
  const bool hk_is_b = t.tower_equiv(hk, b);
  r.verdicts.push_back({"h(k(a)) ≃ b", hk_is_b ? "yes" : "no", hk_is_b});
  if (!hk_is_b && t.tower_equiv(hk, a))
    r.witnesses.push_back({"note", "h(k(a)) ≃ a under this representative map; the example needs rep = example41"});

  const lambda::Environment rho{{"x", a}, {"y", b}};
  const auto term = lambda::parse("(\\z. x z) y");
  const auto value = lambda::interpret(t, term, rho);
  r.witnesses.push_back({"⟦(λz.x z) y⟧", t.render(value) + " = " + join_components(t, value)});
  const bool value_is_b = t.tower_equiv(value, b);
  r.verdicts.push_back({"⟦(λz.x z) y⟧ ≃ b", value_is_b ? "yes" : "no", value_is_b});

  const auto beta = lambda::interpret_conversion(t, lambda::beta_step(term, {}), rho);
  const auto eta = lambda::interpret_conversion(t, lambda::eta_step(term, {0}), rho);
  auto word = [&](const tower::TowerEdge& e) {
    return e.path ? simplicial::render_word(carrier, *e.path) : std::string("untracked");
  };
  r.witnesses.push_back({"beta edge", t.render(beta.source) + " → " + t.render(beta.target) + " along " + word(beta)});
  r.witnesses.push_back({"eta edge", t.render(eta.source) + " → " + t.render(eta.target) + " along " + word(eta)});
  const auto cmp = lambda::equivalent_conversions(t, beta, eta);
  if (cmp.loop) r.witnesses.push_back({"loop", simplicial::render_word(carrier, *cmp.loop)});
  r.witnesses.push_back({"abelianized class", render_class(cmp.abelian_class)});
  r.witnesses.push_back({"reason", cmp.reason});
  r.verdicts.push_back(
      {"beta vs eta", lambda::to_string(cmp.verdict), cmp.verdict == lambda::Verdict::non_equivalent});
  r.seconds = since(start);
  return r;
}

RunReport cmd_tower_info(const std::optional<std::string>& config) {
  const auto start = Clock::now();
  std::string identity = "tower-info\n";
  const tower::Tower t(config_or(config, {}, identity));

  RunReport r;
  r.command = "tower-info";
  r.inputs_digest = fnv1a_hex(identity);
  r.witnesses.push_back({"config", describe_config(t.config())});
  std::string names;
  for (int v : t.generators(0)) names += (names.empty() ? "" : " ") + t.k0().name(v);
  r.witnesses.push_back({"K0 classes", names});
  const int top = std::min(t.max_level(), 2);
  for (int n = 1; n <= top; ++n)
    r.witnesses.push_back({"generators at level " + std::to_string(n), std::to_string(t.generators(n).size())});
  if (const auto& all1 = t.all_level1())
    r.witnesses.push_back({"elements at level 1", std::to_string(all1->size())});
  for (int n = 0; n < t.max_level() && n <= 2; ++n) {
    const auto law = t.check_projection_laws(n);
    std::string value = pass_fail(law.passed());
    value += " (" + std::to_string(law.retraction_checked) + " retraction, " +
             std::to_string(law.deflation_checked) + " deflation checks";
    if (!law.retraction_complete || !law.deflation_complete) value += "; basis incomplete";
    if (law.deflation_by_reduction) value += "; deflation completed by reduction";
    value += ")";
    r.verdicts.push_back({"projection laws at level " + std::to_string(n), value, law.passed()});
    if (law.failure) r.witnesses.push_back({"projection failure at level " + std::to_string(n), *law.failure});
  }
  r.seconds = since(start);
  return r;
}

}  // namespace kinfty::cli
