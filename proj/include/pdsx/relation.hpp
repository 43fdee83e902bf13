#pragma once

// Polynomials in the range-projection symbols e(t):
//   sum_i lambda_i * prod_j e(t_ij)
// A term with no factors is lambda_i times the unit.

#include <string>
#include <vector>

#include "pdsx/scalar.hpp"

namespace pdsx {

template <class E>
struct RelationPoly {
  struct Term {
    Gaussian coefficient;
    std::vector<E> factors;
  };

  std::string label;
  std::vector<Term> terms;

  RelationPoly& add(Gaussian coefficient, std::vector<E> factors) {
    terms.push_back({std::move(coefficient), std::move(factors)});
    return *this;
  }
};

}  // namespace pdsx
