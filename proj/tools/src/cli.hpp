#pragma once

// Commands behind the `kinfty` executable. Each returns a RunReport; errors
// propagate as kinfty::InputError (exit 2) or kinfty::SemanticError (exit 3).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kinfty/hpo.hpp"
#include "kinfty/simplicial.hpp"
#include "kinfty/tower.hpp"

namespace kinfty::cli {

enum ExitCode : int { kOk = 0, kVerdictFail = 1, kInputError = 2, kSemanticError = 3 };

struct VerdictLine {
  std::string name;
  std::string value;
  bool passed = true;

  friend bool operator==(const VerdictLine&, const VerdictLine&) = default;
};

struct WitnessLine {
  std::string name;
  std::string text;

  friend bool operator==(const WitnessLine&, const WitnessLine&) = default;
};

struct RunReport {
  std::string command;
  /// FNV-1a of the command's inputs, 16 hex digits.
  std::string inputs_digest;
  std::vector<VerdictLine> verdicts;
  std::vector<WitnessLine> witnesses;
  double seconds = 0;

  /// kVerdictFail when any verdict failed.
  int exit_code() const;
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

std::string fnv1a_hex(std::string_view data);

std::string to_json(const RunReport& r);
/// InputError on malformed or incomplete JSON.
RunReport from_json(std::string_view text);
std::string to_text(const RunReport& r);

/// `delta:n`, `boundary:n`, `horn:n:i`, or a complex file. Returns the
/// complex and the text that identifies it for the digest.
simplicial::FiniteComplex load_complex(const std::string& source, std::string* identity = nullptr);
/// `nplus:d`, `chain:n`, `butterfly`, `point`, `fun:<builtin>` for the
/// function space over a builtin, or a weakly ordered complex file.
hpo::WeakDomain load_domain(const std::string& source, std::string* identity = nullptr);
/// Parses `x=S1.0,y=S1.1`; values are K₀ vertex names.
std::vector<std::pair<std::string, std::string>> parse_env(const std::string& text);

/// KINFTY_MAX_INSTANCES when set, else the library default.
std::size_t instance_cap();

struct KanOptions {
  int dim = 2;
  bool inner_only = false;
};

RunReport cmd_kan_check(const std::string& source, const KanOptions& opts);
RunReport cmd_domain_check(const std::string& source);
RunReport cmd_interpret(const std::string& term, const std::string& env, const std::optional<std::string>& config);
/// Without a config: nplus(1), rep = example41, N = 3.
RunReport cmd_example_4_1(const std::optional<std::string>& config);
RunReport cmd_tower_info(const std::optional<std::string>& config);

}  // namespace kinfty::cli
