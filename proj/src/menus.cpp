#include "duopoly/menus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "duopoly/error.hpp"

namespace duopoly {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Positive when b lies strictly below the chord from a to c.
double below_chord(const Breakpoint& a, const Breakpoint& b,
                   const Breakpoint& c) {
  double chord = a.price + (c.price - a.price) * (b.x - a.x) / (c.x - a.x);
  return chord - b.price;
}

}  // namespace

PricingMenu::PricingMenu() : points_{{0.0, 0.0}} {}

std::optional<double> PricingMenu::price(double x) const {
  if (std::isnan(x) || x < 0.0) {
    throw DomainError(ErrorCode::invalid_point, "allocation must be >= 0");
  }
  if (x > x_bar()) return std::nullopt;
  auto it = std::upper_bound(
      points_.begin(), points_.end(), x,
      [](double v, const Breakpoint& b) { return v < b.x; });
  if (it == points_.end()) return points_.back().price;
  const Breakpoint& right = *it;
  const Breakpoint& left = *(it - 1);
  return left.price + (right.price - left.price) * (x - left.x) / (right.x - left.x);
}

double PricingMenu::price_or_throw(double x) const {
  auto p = price(x);
  if (!p) throw DomainError(ErrorCode::unavailable, "allocation above x_bar");
  return *p;
}

PricingMenu properize(std::span<const Breakpoint> raw) {
  std::vector<Breakpoint> pts;
  pts.reserve(raw.size() + 1);
  pts.push_back({0.0, 0.0});
  for (const Breakpoint& b : raw) {
    if (!(b.x >= 0.0 && b.x <= 1.0) || !(b.price >= 0.0) ||
        !std::isfinite(b.price)) {
      throw DomainError(ErrorCode::invalid_point,
                        "menu points need x in [0,1] and price >= 0");
    }
    pts.push_back(b);
  }
  std::sort(pts.begin(), pts.end(), [](const Breakpoint& a, const Breakpoint& b) {
    return a.x < b.x || (a.x == b.x && a.price < b.price);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Breakpoint& a, const Breakpoint& b) {
                          return a.x == b.x;
                        }),
            pts.end());

  std::vector<Breakpoint> hull;
  for (const Breakpoint& b : pts) {
    while (hull.size() >= 2 &&
           below_chord(hull[hull.size() - 2], hull.back(), b) <= kPriceTol) {
      hull.pop_back();
    }
    hull.push_back(b);
  }

  PricingMenu m;
  m.points_ = std::move(hull);
  m.slopes_.clear();
  for (std::size_t i = 0; i + 1 < m.points_.size(); ++i) {
    const Breakpoint& l = m.points_[i];
    const Breakpoint& r = m.points_[i + 1];
    m.slopes_.push_back((r.price - l.price) / (r.x - l.x));
  }
  return m;
}

PricingMenu properize(std::initializer_list<Breakpoint> raw) {
  return properize(std::span<const Breakpoint>(raw.begin(), raw.size()));
}

PricingMenu fixed_price(double q) {
  if (!(q >= 0.0) || !std::isfinite(q)) {
    throw DomainError(ErrorCode::invalid_argument, "fixed price must be >= 0");
  }
  return properize({{1.0, q}});
}

PricingMenu give_away() { return fixed_price(0.0); }

SingleLottery make_lottery(double z, double p) {
  if (!(z > 0.0 && z <= 1.0) || !(p >= 0.0) || !std::isfinite(p)) {
    throw DomainError(ErrorCode::invalid_argument,
                      "lottery needs z in (0,1] and p >= 0");
  }
  return {z, p};
}

PricingMenu SingleLottery::menu() const {
  SingleLottery checked = make_lottery(z, p);
  return properize({{checked.z, checked.a()}});
}

std::optional<SingleLottery> as_single_lottery(const PricingMenu& m) {
  auto pts = m.breakpoints();
  if (pts.size() != 2) return std::nullopt;
  return SingleLottery{pts[1].x, pts[1].price / pts[1].x};
}

double demand(const PricingMenu& m, double w) {
  if (std::isnan(w)) throw DomainError(ErrorCode::invalid_argument, "NaN value");
  if (w == kInf) return m.x_bar();
  double limit = w + kPriceTol * std::max(1.0, std::fabs(w));
  auto s = m.slopes();
  auto k = std::upper_bound(s.begin(), s.end(), limit) - s.begin();
  return m.breakpoints()[static_cast<std::size_t>(k)].x;
}

double surplus(const PricingMenu& m, double w) {
  if (w == kInf) return m.x_bar() > 0.0 ? kInf : 0.0;
  double x = demand(m, w);
  return x * w - m.price_or_throw(x);
}

PricingMenu lower_convex_envelope(const PricingMenu& m) {
  return properize(m.breakpoints());
}

SlopeRange subgradient_range(const PricingMenu& m, double x) {
  if (std::isnan(x) || x < 0.0 || x > m.x_bar() + kPriceTol) {
    throw DomainError(ErrorCode::unavailable, "allocation outside the menu");
  }
  auto pts = m.breakpoints();
  auto s = m.slopes();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (std::fabs(pts[k].x - x) <= kPriceTol) {
      double low = k == 0 ? -kInf : s[k - 1];
      double high = k + 1 == pts.size() ? kInf : s[k];
      return {low, high};
    }
    if (pts[k].x > x) return {s[k - 1], s[k - 1]};
  }
  return {s.back(), kInf};
}

std::string describe(const PricingMenu& m) {
  std::ostringstream os;
  os.precision(12);
  os << "[";
  bool first = true;
  for (const Breakpoint& b : m.breakpoints()) {
    os << (first ? "" : ",") << "(" << b.x << "," << b.price << ")";
    first = false;
  }
  os << "]";
  return os.str();
}

}  // namespace duopoly
