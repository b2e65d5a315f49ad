#include "isosym/gallery.hpp"

#include <functional>
#include <map>

#include "isosym/generators.hpp"

namespace isosym {

namespace {

CMatrix real_matrix(Index rows, Index cols, std::initializer_list<double> entries) {
  std::vector<Complex> data;
  for (double v : entries) data.emplace_back(v, 0.0);
  return make_matrix(rows, cols, data);
}

CMatrix ex1_3x3_weight() { return real_matrix(3, 3, {0, 0, 0, 0, 1, 1, 0, 1, 1}); }
CMatrix ex1_3x3_op() { return real_matrix(3, 3, {0, 0, -1, 1, 0, 0, 0, 1, 0}); }

Fixture nilpotent_fixture(int r) {
  return {"nilpotent_r" + std::to_string(r), identity(r), jordan_nilpotent(r, r),
          "Jordan shift of order " + std::to_string(r) + ", weight I; member at (" +
              std::to_string(2 * r - 2) + ", " + std::to_string(2 * r - 1) + ")"};
}

using Builder = std::function<Fixture()>;

const std::map<std::string, Builder>& registry() {
  static const std::map<std::string, Builder> table = {
      {"ex1_2x2",
       [] {
         return Fixture{"ex1_2x2", real_matrix(2, 2, {1, 1, 1, 1}),
                        real_matrix(2, 2, {0, -0.5, 0, 0.5}),
                        "A-symmetric 2x2, member at (0,1) and (1,1), not (1,1) for A = I"};
       }},
      {"ex1_3x3",
       [] {
         return Fixture{"ex1_3x3", ex1_3x3_weight(), ex1_3x3_op(),
                        "member at (1,1) but neither at (1,0) nor (0,1)"};
       }},
      {"identity",
       [] {
         return Fixture{"identity", ex1_3x3_weight(), identity(3), "member at every order"};
       }},
      {"projection",
       [] {
         // Orthogonal projection onto range(A) for the ex1_3x3 weight.
         return Fixture{"projection", ex1_3x3_weight(),
                        real_matrix(3, 3, {0, 0, 0, 0, 0.5, 0.5, 0, 0.5, 0.5}),
                        "projection onto the closure of range(A), member at every order"};
       }},
      {"nilpotent_r2", [] { return nilpotent_fixture(2); }},
      {"nilpotent_r3", [] { return nilpotent_fixture(3); }},
      {"nilpotent_r4", [] { return nilpotent_fixture(4); }},
      {"k_block",
       [] {
         const CMatrix r = ex1_3x3_op();
         const auto k = k_block(ex1_3x3_weight(), r, r);
         return Fixture{"k_block", k.weight(), k.op(),
                        "[[R, R], [0, R]] with R from ex1_3x3, member at (3, 4)"};
       }},
      {"ex4_generic", [] { return ex4_generic(2.0, 1.0, 1.0, 1.0); }},
      {"ex4_upper", [] { return ex4_upper(0.5, 1.0, 1.0); }},
  };
  return table;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  for (const auto& [name, builder] : registry()) names.push_back(name);
  return names;
}

Fixture fixture(const std::string& name) {
  const auto& table = registry();
  const auto it = table.find(name);
  if (it == table.end()) throw UnknownFixture("unknown fixture: " + name);
  return it->second();
}

std::vector<Fixture> gallery() {
  std::vector<Fixture> out;
  for (const auto& [name, builder] : registry()) out.push_back(builder());
  return out;
}

Fixture ex4_generic(double a, double b, double c, double d) {
  return {"ex4_generic", real_matrix(2, 2, {0, 0, 0, 1}), real_matrix(2, 2, {a, b, c, d}),
          "(1,1) member for A = diag(0,1) iff c = 0 or ad - bc = 1"};
}

Fixture ex4_upper(double a, double b, double d) {
  return {"ex4_upper", real_matrix(2, 2, {0, 0, 0, 1}), real_matrix(2, 2, {a, b, 0, d}),
          "skew (1,1) member for A = diag(0,1) iff d in {0, 1, -1}"};
}

WeightedOperator k_block(const CMatrix& weight, const CMatrix& r, const CMatrix& s) {
  return WeightedOperator(direct_sum(weight, weight), block2x2(r, s, r));
}

WeightedOperator block_operator(const CMatrix& weight, const CMatrix& n, const CMatrix& e,
                                const CMatrix& x) {
  return WeightedOperator(direct_sum(weight, weight), block2x2(n, e, x));
}

}  // namespace isosym
