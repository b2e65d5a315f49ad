#pragma once

// Hand-written fixtures and block builders.

#include <string>
#include <vector>

#include "isosym/matrix.hpp"

namespace isosym {

struct Fixture {
  std::string name;
  CMatrix weight;
  CMatrix op;
  std::string description;

  WeightedOperator weighted() const { return WeightedOperator(weight, op); }
};

/// Names accepted by fixture().
std::vector<std::string> fixture_names();
/// Throws UnknownFixture for any other name.
Fixture fixture(const std::string& name);
std::vector<Fixture> gallery();

/// T = [[a, b], [c, d]] real, A = diag(0, 1).
Fixture ex4_generic(double a, double b, double c, double d);
/// T = [[a, b], [0, d]] real, A = diag(0, 1).
Fixture ex4_upper(double a, double b, double d);

/// K = [[R, S], [0, R]] with weight A (+) A.
WeightedOperator k_block(const CMatrix& weight, const CMatrix& r, const CMatrix& s);
/// T = [[N, E], [0, X]] with weight A (+) A.
WeightedOperator block_operator(const CMatrix& weight, const CMatrix& n, const CMatrix& e,
                                const CMatrix& x);

}  // namespace isosym
