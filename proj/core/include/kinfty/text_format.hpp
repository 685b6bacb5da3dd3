#pragma once

// Line-oriented text format for complexes and weakly ordered complexes.
//
//   # comment
//   dim_bound 3            (optional, before any simplex)
//   0 v :
//   1 e : w v              (faces d0 d1)
//   2 t : e s0(v) f        (degenerate faces as s<j>(expr))
//   order v <= w
//   bottom v

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kinfty/simplicial.hpp"

namespace kinfty::simplicial {

struct Document {
  FiniteComplex complex;
  std::vector<std::pair<std::string, std::string>> order;
  std::optional<std::string> bottom;
};

/// Throws InputError with a 1-based line number on malformed input.
Document parse_document(std::string_view text);
Document parse_document_file(const std::string& path);

/// Parses a single simplex expression of the given dimension.
SimplexRef parse_simplex_expr(const FiniteComplex& x, int dim, std::string_view expr);

std::string render_complex(const FiniteComplex& x);

}  // namespace kinfty::simplicial
