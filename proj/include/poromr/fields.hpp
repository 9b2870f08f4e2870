#pragma once

#include <array>
#include <functional>

namespace poromr {

// time-dependent fields, (x, y, t)
using ScalarFn = std::function<double(double, double, double)>;
using VectorFn = std::function<std::array<double, 2>(double, double, double)>;

// time-frozen fields, (x, y); grad[i][j] = d u_i / d x_j
using SpatialScalarFn = std::function<double(double, double)>;
using SpatialVectorFn = std::function<std::array<double, 2>(double, double)>;
using SpatialMatrixFn = std::function<std::array<std::array<double, 2>, 2>(double, double)>;

}  // namespace poromr
