#include "simplicial/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace simplicial {

ParseError::ParseError(const std::string& message, std::size_t line)
    : PreconditionError(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

SimplicialComplex parse_facets(std::istream& in) {
  std::vector<std::vector<Vertex>> facets;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<Vertex> facet;
    std::set<Vertex> seen;
    std::string tok;
    while (tokens >> tok) {
      Vertex v = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("'" + tok + "' is not a non-negative vertex id", number);
      if (!seen.insert(v).second) throw ParseError("duplicate vertex " + tok + " in facet", number);
      facet.push_back(v);
    }
    if (!facet.empty()) facets.push_back(std::move(facet));
  }
  if (facets.empty()) throw ParseError("facet file contains no facets", 0);
  return SimplicialComplex::from_facets(facets);
}

SimplicialComplex load_complex(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open facet file " + path.string());
  try {
    return parse_facets(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

void write_facets(std::ostream& out, const SimplicialComplex& complex) {
  for (const Simplex& f : complex.facets()) {
    const auto v = f.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
    out << '\n';
  }
}

void save_complex(const std::filesystem::path& path, const SimplicialComplex& complex) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot write " + path.string());
  write_facets(out, complex);
}

}  // namespace simplicial
