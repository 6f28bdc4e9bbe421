#pragma once

#include <cmath>
#include <functional>

namespace duopoly::numeric {

inline constexpr double kInf = HUGE_VAL;

// Golden-section maximization of a unimodal-ish f on [lo, hi]. On a flat top
// the returned point drifts to the larger end.
struct Argmax {
  double x;
  double value;
};
Argmax golden_section_max(const std::function<double(double)>& f, double lo,
                          double hi, int iterations = 100);

// Given pred(lo) == false and pred(hi) == true, shrinks [lo, hi] around the
// switch point until hi - lo <= tol. Returns the final bracket.
struct Bracket {
  double lo;
  double hi;
};
Bracket bisect(const std::function<bool(double)>& pred, double lo, double hi,
               double tol, int max_iterations = 200);

inline bool near(double a, double b, double tol) {
  return std::fabs(a - b) <= tol;
}

// Rounds to 12 significant digits; used wherever output must be byte-stable.
double round_sig12(double x);

}  // namespace duopoly::numeric
