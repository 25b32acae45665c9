#pragma once

#include <string>
#include <vector>

#include "doctest.h"
#include "simplicial/complex.hpp"
#include "simplicial/io.hpp"

namespace testing {

inline simplicial::SimplicialComplex corpus(const std::string& name) {
  return simplicial::load_complex(std::string(SIMPLICIAL_DATA_DIR) + "/" + name + ".fct");
}

inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names = {"hollow_triangle", "filled_triangle", "sphere",
                                                 "torus7",          "mobius5",         "rp2_6",
                                                 "two_triangles",   "path3",           "odd_cycle"};
  return names;
}

inline simplicial::SimplicialComplex facets(const std::vector<std::vector<simplicial::Vertex>>& f) {
  return simplicial::SimplicialComplex::from_facets(f);
}

}  // namespace testing
