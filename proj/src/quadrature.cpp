#include "poromr/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace poromr {

namespace {

// Appends the three permutations of the barycentric point (a, a, 1-2a).
void push3(std::vector<QuadPoint>& pts, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  pts.push_back({a, a, w});
  pts.push_back({b, a, w});
  pts.push_back({a, b, w});
}

// Appends all six permutations of the barycentric point (a, b, 1-a-b).
void push6(std::vector<QuadPoint>& pts, double a, double b, double w) {
  const double c = 1.0 - a - b;
  pts.push_back({a, b, w});
  pts.push_back({b, a, w});
  pts.push_back({a, c, w});
  pts.push_back({c, a, w});
  pts.push_back({b, c, w});
  pts.push_back({c, b, w});
}

}  // namespace

QuadRule quadrature_rule(int degree) {
  if (degree < 1 || degree > 6)
    throw std::invalid_argument("quadrature_rule: degree must be in 1..6");

  QuadRule rule;
  rule.degree = degree;
  std::vector<QuadPoint>& p = rule.points;

  switch (degree) {
    case 1:
      p.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0});
      break;
    case 2:
      push3(p, 1.0 / 6.0, 1.0 / 3.0);
      break;
    case 3:  // served by the positive-weight degree-4 rule
    case 4:
      push3(p, 0.445948490915965, 0.223381589678011);
      push3(p, 0.091576213509771, 0.109951743655322);
      break;
    case 5:
      p.push_back({1.0 / 3.0, 1.0 / 3.0, 0.225});
      push3(p, 0.470142064105115, 0.132394152788506);
      push3(p, 0.101286507323456, 0.125939180544827);
      break;
    case 6:
      push3(p, 0.249286745170910, 0.116786275726379);
      push3(p, 0.063089014491502, 0.050844906370207);
      push6(p, 0.310352451033785, 0.636502499121399, 0.082851075618374);
      break;
  }

  for (auto& q : p) q.w *= 0.5;  // reference triangle measure
  return rule;
}

const std::vector<EdgeQuadPoint>& edge_quadrature_rule() {
  static const std::vector<EdgeQuadPoint> rule = [] {
    const double d = 0.5 * std::sqrt(3.0 / 5.0);
    return std::vector<EdgeQuadPoint>{
        {0.5 - d, 5.0 / 18.0}, {0.5, 8.0 / 18.0}, {0.5 + d, 5.0 / 18.0}};
  }();
  return rule;
}

}  // namespace poromr
