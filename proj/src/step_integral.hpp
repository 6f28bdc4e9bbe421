#pragma once

#include <array>
#include <cstddef>

namespace duopoly::detail {

// Integrates a piecewise-constant vector-valued function of v against a CDF.
// eval(v) returns a sample with `key` (the discrete state that determines the
// values) and `values`. Cells whose end keys agree are taken as constant;
// others are halved until narrower than min_width.
template <std::size_t N, class Eval, class Cdf>
class StepIntegrator {
 public:
  using Values = std::array<double, N>;

  StepIntegrator(Eval eval, Cdf cdf, double min_width)
      : eval_(eval), cdf_(cdf), min_width_(min_width) {}

  template <class OnProbe>
  Values run(double lo, double hi, std::size_t points, OnProbe on_probe) {
    acc_.fill(0.0);
    auto left = eval_(lo);
    on_probe(lo, left);
    add(left.values, cdf_(lo));
    double x_left = lo;
    double f_left = cdf_(lo);
    for (std::size_t i = 1; i < points; ++i) {
      double x = (i + 1 == points)
                     ? hi
                     : lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(points - 1);
      auto right = eval_(x);
      on_probe(x, right);
      double f_right = cdf_(x);
      cell(x_left, f_left, left, x, f_right, right);
      x_left = x;
      f_left = f_right;
      left = right;
    }
    add(left.values, 1.0 - f_left);
    return acc_;
  }

 private:
  template <class Sample>
  void cell(double a, double fa, const Sample& sa, double b, double fb,
            const Sample& sb) {
    if (sa.key == sb.key) {
      add(sa.values, fb - fa);
      return;
    }
    if (b - a <= min_width_) {
      add(sb.values, fb - fa);
      return;
    }
    double m = a + (b - a) / 2.0;
    auto sm = eval_(m);
    double fm = cdf_(m);
    cell(a, fa, sa, m, fm, sm);
    cell(m, fm, sm, b, fb, sb);
  }

  void add(const Values& v, double mass) {
    if (mass == 0.0) return;
    for (std::size_t k = 0; k < N; ++k) acc_[k] += v[k] * mass;
  }

  Eval eval_;
  Cdf cdf_;
  double min_width_;
  Values acc_{};
};

template <std::size_t N, class Eval, class Cdf>
StepIntegrator<N, Eval, Cdf> make_step_integrator(Eval eval, Cdf cdf,
                                                  double min_width) {
  return StepIntegrator<N, Eval, Cdf>(eval, cdf, min_width);
}

}  // namespace duopoly::detail
