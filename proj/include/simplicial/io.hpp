#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "simplicial/complex.hpp"
#include "simplicial/errors.hpp"

namespace simplicial {

/// Raised on malformed facet files; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public PreconditionError {
 public:
  ParseError(const std::string& message, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/**
 * Facet file: one facet per line as whitespace separated non-negative vertex
 * ids; '#' starts a comment; blank lines are skipped; CRLF is accepted.
 */
SimplicialComplex parse_facets(std::istream& in);
SimplicialComplex load_complex(const std::filesystem::path& path);

/// Writes the facets in canonical order, one per line.
void write_facets(std::ostream& out, const SimplicialComplex& complex);
void save_complex(const std::filesystem::path& path, const SimplicialComplex& complex);

}  // namespace simplicial
