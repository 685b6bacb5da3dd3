#include "kinfty/text_format.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "kinfty/error.hpp"

namespace kinfty::simplicial {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError(std::string("expected ") + what + ", got '" + s + "'");
  }
}

}  // namespace

SimplexRef parse_simplex_expr(const FiniteComplex& x, int dim, std::string_view expr) {
  expr = trim(expr);
  if (expr.size() > 3 && expr[0] == 's' && std::isdigit(static_cast<unsigned char>(expr[1]))) {
    const auto open = expr.find('(');
    if (open != std::string_view::npos && expr.back() == ')') {
      const int j = parse_int(std::string(expr.substr(1, open - 1)), "degeneracy index");
      const auto inner = parse_simplex_expr(x, dim - 1, expr.substr(open + 1, expr.size() - open - 2));
      if (j < 0 || j > dim - 1)
        throw InputError("degeneracy s" + std::to_string(j) + " out of range in '" +
                         std::string(expr) + "'");
      return x.degeneracy(inner, j);
    }
  }
  if (dim < 0) throw InputError("expression '" + std::string(expr) + "' has negative dimension");
  auto index = x.find(dim, expr);
  if (!index)
    throw InputError("no " + std::to_string(dim) + "-simplex named '" + std::string(expr) + "'");
  return nondegenerate(dim, *index);
}

Document parse_document(std::string_view text) {
  Document doc{FiniteComplex(kDefaultDimBound), {}, std::nullopt};
  bool any_simplex = false;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    try {
      auto words = split_ws(line);
      if (words[0] == "dim_bound") {
        if (any_simplex) throw InputError("dim_bound must precede all simplexes");
        if (words.size() != 2) throw InputError("usage: dim_bound <int>");
        doc.complex = FiniteComplex(parse_int(words[1], "dimension bound"));
      } else if (words[0] == "order") {
        if (words.size() != 4 || words[2] != "<=") throw InputError("usage: order x <= y");
        for (int k : {1, 3})
          if (!doc.complex.find(0, words[static_cast<std::size_t>(k)]))
            throw InputError("unknown vertex '" + words[static_cast<std::size_t>(k)] + "'");
        doc.order.emplace_back(words[1], words[3]);
      } else if (words[0] == "bottom") {
        if (words.size() != 2) throw InputError("usage: bottom x");
        if (!doc.complex.find(0, words[1])) throw InputError("unknown vertex '" + words[1] + "'");
        if (doc.bottom) throw InputError("bottom given twice");
        doc.bottom = words[1];
      } else {
        const auto colon = line.find(':');
        auto head = split_ws(line.substr(0, colon));
        if (head.size() != 2) throw InputError("expected 'dim name : faces'");
        const int dim = parse_int(head[0], "dimension");
        std::vector<std::string> face_tokens;
        if (colon != std::string_view::npos) face_tokens = split_ws(line.substr(colon + 1));
        any_simplex = true;
        if (dim == 0) {
          if (!face_tokens.empty()) throw InputError("a vertex has no faces");
          doc.complex.add_vertex(head[1]);
          continue;
        }
        if (colon == std::string_view::npos) throw InputError("missing ':' before faces");
        if (static_cast<int>(face_tokens.size()) != dim + 1)
          throw InputError("a " + std::to_string(dim) + "-simplex needs " + std::to_string(dim + 1) +
                           " faces, got " + std::to_string(face_tokens.size()));
        std::vector<SimplexRef> faces;
        for (const auto& tok : face_tokens) faces.push_back(parse_simplex_expr(doc.complex, dim - 1, tok));
        doc.complex.add_simplex(head[1], std::move(faces));
      }
    } catch (const InputError& e) {
      throw InputError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (end == text.size()) break;
  }
  if (doc.bottom && !doc.complex.find(0, *doc.bottom)) throw InputError("unknown bottom vertex");
  return doc;
}

Document parse_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string render_complex(const FiniteComplex& x) {
  std::ostringstream out;
  out << "dim_bound " << x.dim_bound() << "\n";
  for (int d = 0; d <= x.top_dim(); ++d) {
    for (int i = 0; i < static_cast<int>(x.count(d)); ++i) {
      out << d << " " << x.name(d, i) << " :";
      if (d > 0)
        for (const auto& f : x.faces(d, i)) out << " " << x.describe(f);
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace kinfty::simplicial
