#pragma once

#include <cmath>
#include <utility>

#include "qhe/errors.hpp"

namespace qhe {

struct MaximizeResult {
  double x = 0.0;
  double value = 0.0;
};

// Maximizes f on [lo, hi]: coarse scan over grid_points equal intervals, then
// golden-section refinement of the bracketing pair down to x_tol. Intended for
// the smooth single-peak objectives in this project; for a multi-peak f it
// returns the best peak seen by the scan.
template <typename F>
MaximizeResult maximize_on_interval(F&& f, double lo, double hi,
                                    int grid_points = 10000,
                                    double x_tol = 1e-10) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw InvalidParams("maximize_on_interval: need finite lo < hi");
  }
  if (grid_points < 2) grid_points = 2;

  const double span = hi - lo;
  int best = 0;
  double best_x = lo;
  double best_val = f(lo);
  for (int i = 1; i <= grid_points; ++i) {
    const double x = (i == grid_points) ? hi : lo + span * i / grid_points;
    const double v = f(x);
    if (v > best_val) {
      best_val = v;
      best = i;
      best_x = x;
    }
  }

  double a = (best == 0) ? lo : lo + span * (best - 1) / grid_points;
  double b = (best == grid_points) ? hi : lo + span * (best + 1) / grid_points;

  const double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; iter < 300 && (b - a) > x_tol; ++iter) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }

  MaximizeResult out{best_x, best_val};
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  if (f1 > out.value) out = {x1, f1};
  if (f2 > out.value) out = {x2, f2};
  if (fm > out.value) out = {xm, fm};
  return out;
}

}  // namespace qhe
