#pragma once

#include <vector>

namespace poromr {

struct QuadPoint {
  double x = 0, y = 0;  // reference-triangle coordinates
  double w = 0;         // weight (reference measure)
};

struct QuadRule {
  int degree = 0;
  std::vector<QuadPoint> points;
};

// Symmetric rules on the reference triangle {(0,0),(1,0),(0,1)}.
// Weights sum to 1/2. Supported degrees: 1..6; anything else throws.
QuadRule quadrature_rule(int degree);

struct EdgeQuadPoint {
  double s = 0;  // parameter in [0,1]
  double w = 0;  // weights sum to 1
};

// 3-point Gauss on [0,1], exact through degree 5.
const std::vector<EdgeQuadPoint>& edge_quadrature_rule();

}  // namespace poromr
