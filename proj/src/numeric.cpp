#include "duopoly/numeric.hpp"

#include <cstdio>
#include <cstdlib>

namespace duopoly::numeric {

Argmax golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations && b - a > 1e-15 * (1.0 + std::fabs(b)); ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  Argmax best{d, fd};
  if (fc > best.value) best = {c, fc};
  for (double x : {lo, hi}) {
    double fx = f(x);
    if (fx > best.value || (fx == best.value && x > best.x)) best = {x, fx};
  }
  return best;
}

Bracket bisect(const std::function<bool(double)>& pred, double lo, double hi,
               double tol, int max_iterations) {
  for (int i = 0; i < max_iterations && hi - lo > tol; ++i) {
    double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

double round_sig12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace duopoly::numeric
