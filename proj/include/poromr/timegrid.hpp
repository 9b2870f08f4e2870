#pragma once

namespace poromr {

// Two-level time grid: fine step dt, m fine steps per coarse window, horizon
// T. theta = 0 decouples the window (lagged eta), theta = 1 couples it via a
// fixed-point iteration.
struct TimeGrid {
  double dt = 0;
  int m = 1;
  double T = 0;
  int theta = 0;

  int n_windows() const;  // T / (m*dt), validated integral
  int n_fine() const { return n_windows() * m; }
};

// Throws std::invalid_argument unless dt > 0, m >= 1, T > 0, theta in {0,1}
// and T/(m*dt) is an integer to 1e-10 relative.
void validate(const TimeGrid& grid);

}  // namespace poromr
