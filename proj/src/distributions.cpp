#include "duopoly/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "duopoly/error.hpp"
#include "duopoly/numeric.hpp"

namespace duopoly {

namespace {

constexpr double kDegenerateRevenue = 1e-14;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(ErrorCode::invalid_argument, what);
}

std::size_t checked_grid(std::size_t n) {
  require(n >= 3, "grid_size must be at least 3");
  return n;
}

double uniform_cdf(double v, double a, double b) {
  if (v <= a) return 0.0;
  if (v >= b) return 1.0;
  return (v - a) / (b - a);
}

double uniform_pdf(double v, double a, double b) {
  return (v >= a && v <= b) ? 1.0 / (b - a) : 0.0;
}

}  // namespace

ValueDistribution ValueDistribution::uniform(double lo, double hi,
                                             std::size_t grid_size) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo >= 0.0 && hi > lo,
          "uniform needs 0 <= a < b");
  ValueDistribution d;
  d.family_ = Family::uniform;
  d.params_ = {lo, hi};
  d.support_max_ = hi;
  d.grid_size_ = checked_grid(grid_size);
  d.build_tables();
  return d;
}

ValueDistribution ValueDistribution::exponential(double rate,
                                                 std::size_t grid_size) {
  require(std::isfinite(rate) && rate > 0.0, "exp needs a positive rate");
  ValueDistribution d;
  d.family_ = Family::exponential;
  d.params_ = {rate};
  d.support_max_ = -std::log(kTailMass) / rate;
  d.grid_size_ = checked_grid(grid_size);
  d.build_tables();
  return d;
}

ValueDistribution ValueDistribution::truncated_pareto(double shape, double scale,
                                                      double cap,
                                                      std::size_t grid_size) {
  require(shape > 0.0 && scale > 0.0 && cap > scale && std::isfinite(cap),
          "pareto needs shape > 0 and 0 < scale < cap");
  ValueDistribution d;
  d.family_ = Family::pareto;
  d.params_ = {shape, scale, cap};
  d.support_max_ = cap;
  d.tail_norm_ = 1.0 - std::pow(scale / cap, shape);
  d.grid_size_ = checked_grid(grid_size);
  d.build_tables();
  return d;
}

ValueDistribution ValueDistribution::uniform_mixture(double a1, double b1,
                                                     double a2, double b2,
                                                     double w,
                                                     std::size_t grid_size) {
  require(a1 >= 0.0 && b1 > a1 && a2 >= 0.0 && b2 > a2 && std::isfinite(b1) &&
              std::isfinite(b2),
          "mixture components need 0 <= a < b");
  require(w > 0.0 && w < 1.0, "mixture weight must lie in (0,1)");
  ValueDistribution d;
  d.family_ = Family::mixture;
  d.params_ = {a1, b1, a2, b2, w};
  d.support_max_ = std::max(b1, b2);
  d.grid_size_ = checked_grid(grid_size);
  d.build_tables();
  return d;
}

ValueDistribution ValueDistribution::point_mass(double value) {
  require(std::isfinite(value) && value >= 0.0, "point mass needs v >= 0");
  ValueDistribution d;
  d.kind_ = DistributionKind::point_mass;
  d.family_ = Family::point_mass;
  d.params_ = {value};
  d.atoms_ = {{value, 1.0}};
  d.support_max_ = value;
  d.find_myerson();
  return d;
}

ValueDistribution ValueDistribution::discrete(std::vector<Atom> atoms) {
  require(!atoms.empty(), "discrete distribution needs atoms");
  double total = 0.0;
  for (const Atom& a : atoms) {
    require(std::isfinite(a.value) && a.value >= 0.0 && std::isfinite(a.mass) &&
                a.mass >= 0.0,
            "atoms need value >= 0 and mass >= 0");
    total += a.mass;
  }
  require(std::fabs(total - 1.0) <= 1e-9, "atom masses must sum to 1");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.value < y.value; });
  std::vector<Atom> merged;
  for (const Atom& a : atoms) {
    if (a.mass == 0.0) continue;
    if (!merged.empty() && merged.back().value == a.value) {
      merged.back().mass += a.mass;
    } else {
      merged.push_back({a.value, a.mass});
    }
  }
  for (Atom& a : merged) a.mass /= total;

  ValueDistribution d;
  d.kind_ = merged.size() == 1 ? DistributionKind::point_mass
                               : DistributionKind::finite_discrete;
  d.family_ = merged.size() == 1 ? Family::point_mass : Family::discrete;
  d.atoms_ = std::move(merged);
  if (d.family_ == Family::point_mass) d.params_ = {d.atoms_.front().value};
  d.support_max_ = d.atoms_.back().value;
  d.find_myerson();
  return d;
}

std::string ValueDistribution::name() const {
  std::ostringstream os;
  os.precision(12);
  switch (family_) {
    case Family::uniform:
      os << "uniform[" << params_[0] << "," << params_[1] << "]";
      break;
    case Family::exponential:
      os << "exp(" << params_[0] << ")";
      break;
    case Family::pareto:
      os << "pareto(" << params_[0] << "," << params_[1] << "," << params_[2]
         << ")";
      break;
    case Family::mixture:
      os << "mixture(" << params_[4] << "*uniform[" << params_[0] << ","
         << params_[1] << "]+uniform[" << params_[2] << "," << params_[3]
         << "])";
      break;
    case Family::point_mass:
      os << "pointmass(" << atoms_.front().value << ")";
      break;
    case Family::discrete:
      os << "discrete(" << atoms_.size() << " atoms)";
      break;
  }
  return os.str();
}

double ValueDistribution::grid_point(std::size_t i) const {
  if (i + 1 >= grid_size_) return support_max_;
  return support_max_ * static_cast<double>(i) /
         static_cast<double>(grid_size_ - 1);
}

double ValueDistribution::cdf(double v) const {
  if (v < 0.0) return 0.0;
  if (v >= support_max_) return 1.0;
  const auto& p = params_;
  switch (family_) {
    case Family::uniform:
      return uniform_cdf(v, p[0], p[1]);
    case Family::exponential:
      return -std::expm1(-p[0] * v);
    case Family::pareto:
      if (v <= p[1]) return 0.0;
      return (1.0 - std::pow(p[1] / v, p[0])) / tail_norm_;
    case Family::mixture:
      return p[4] * uniform_cdf(v, p[0], p[1]) +
             (1.0 - p[4]) * uniform_cdf(v, p[2], p[3]);
    case Family::point_mass:
    case Family::discrete: {
      double acc = 0.0;
      for (const Atom& a : atoms_) {
        if (a.value > v) break;
        acc += a.mass;
      }
      return std::min(acc, 1.0);
    }
  }
  return 0.0;
}

double ValueDistribution::survival_from(double v) const {
  if (is_continuous()) return 1.0 - cdf(v);
  double acc = 0.0;
  for (auto it = atoms_.rbegin(); it != atoms_.rend() && it->value >= v; ++it) {
    acc += it->mass;
  }
  return std::min(acc, 1.0);
}

double ValueDistribution::pdf(double v) const {
  if (!is_continuous()) {
    throw DomainError(ErrorCode::unsupported, "density of a discrete prior");
  }
  if (v < 0.0 || v > support_max_) return 0.0;
  const auto& p = params_;
  switch (family_) {
    case Family::uniform:
      return uniform_pdf(v, p[0], p[1]);
    case Family::exponential:
      return p[0] * std::exp(-p[0] * v);
    case Family::pareto:
      if (v < p[1]) return 0.0;
      return p[0] * std::pow(p[1], p[0]) * std::pow(v, -p[0] - 1.0) / tail_norm_;
    case Family::mixture:
      return p[4] * uniform_pdf(v, p[0], p[1]) +
             (1.0 - p[4]) * uniform_pdf(v, p[2], p[3]);
    default:
      return 0.0;
  }
}

std::vector<double> ValueDistribution::knots() const {
  std::vector<double> k{0.0, support_max_};
  switch (family_) {
    case Family::uniform:
      k.push_back(params_[0]);
      break;
    case Family::pareto:
      k.push_back(params_[1]);
      break;
    case Family::mixture:
      k.insert(k.end(), params_.begin(), params_.begin() + 4);
      break;
    case Family::point_mass:
    case Family::discrete:
      for (const Atom& a : atoms_) k.push_back(a.value);
      break;
    case Family::exponential:
      break;
  }
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

std::span<const double> ValueDistribution::gamma_table() const {
  if (!tables_) throw DomainError(ErrorCode::unsupported, "no grid tables");
  return tables_->gamma;
}

std::span<const double> ValueDistribution::gamma_running_max() const {
  if (!tables_) throw DomainError(ErrorCode::unsupported, "no grid tables");
  return tables_->running_max;
}

double ValueDistribution::cached_myerson_price() const {
  if (degenerate_) {
    throw DomainError(ErrorCode::degenerate_distribution,
                      "revenue curve vanishes for " + name());
  }
  return myerson_;
}

double ValueDistribution::cached_monopoly_revenue() const {
  cached_myerson_price();
  return monopoly_;
}

void ValueDistribution::build_tables() {
  auto t = std::make_shared<Tables>();
  t->gamma.resize(grid_size_);
  t->running_max.resize(grid_size_);
  double best = -1.0;
  for (std::size_t i = 0; i < grid_size_; ++i) {
    double v = grid_point(i);
    t->gamma[i] = v * (1.0 - cdf(v));
    best = std::max(best, t->gamma[i]);
    t->running_max[i] = best;
  }
  tables_ = std::move(t);
  find_myerson();
}

void ValueDistribution::find_myerson() {
  if (!is_continuous()) {
    double best_v = 0.0, best_g = -1.0;
    for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it) {
      double g = gamma(*this, it->value);
      if (g > best_g) {
        best_g = g;
        best_v = it->value;
      }
    }
    myerson_ = best_v;
    monopoly_ = best_g;
    degenerate_ = best_g <= kDegenerateRevenue;
    return;
  }
  const auto& g = tables_->gamma;
  std::size_t best = grid_size_ - 1;
  for (std::size_t i = grid_size_; i-- > 0;) {
    if (g[i] > g[best]) best = i;
  }
  double lo = grid_point(best == 0 ? 0 : best - 1);
  double hi = grid_point(std::min(best + 1, grid_size_ - 1));
  auto curve = [this](double q) { return gamma(*this, q); };
  numeric::Argmax refined = numeric::golden_section_max(curve, lo, hi);
  myerson_ = grid_point(best);
  monopoly_ = g[best];
  if (refined.value > monopoly_ ||
      (refined.value == monopoly_ && refined.x > myerson_)) {
    myerson_ = refined.x;
    monopoly_ = refined.value;
  }
  degenerate_ = monopoly_ <= kDegenerateRevenue;
}

double gamma(const ValueDistribution& d, double q) {
  if (std::isnan(q) || q < 0.0) {
    throw DomainError(ErrorCode::invalid_argument, "price must be >= 0");
  }
  if (q > d.support_max()) return 0.0;
  if (d.is_continuous()) return q * (1.0 - d.cdf(q));
  return q * d.survival_from(q);
}

double myerson_price(const ValueDistribution& d) {
  return d.cached_myerson_price();
}

double monopoly_revenue(const ValueDistribution& d) {
  return d.cached_monopoly_revenue();
}

double virtual_value(const ValueDistribution& d, double v) {
  if (!d.is_continuous()) {
    throw DomainError(ErrorCode::unsupported,
                      "virtual value needs a continuous prior");
  }
  double f = d.pdf(v);
  if (!(f > 0.0)) {
    throw DomainError(ErrorCode::zero_density, "density vanishes at v");
  }
  return v - (1.0 - d.cdf(v)) / f;
}

std::string_view to_string(Regularity r) {
  switch (r) {
    case Regularity::regular: return "regular";
    case Regularity::dmr: return "dmr";
    case Regularity::both: return "both";
    case Regularity::neither: return "neither";
  }
  return "neither";
}

RegularityReport classify_regularity(const ValueDistribution& d, double slack) {
  if (!d.is_continuous()) {
    throw DomainError(ErrorCode::unsupported,
                      "regularity is defined for continuous priors only");
  }
  const double neg_inf = -std::numeric_limits<double>::infinity();
  RegularityReport r{true, true, Regularity::both};
  double prev_phi = neg_inf;
  double prev_psi = neg_inf;
  for (std::size_t i = 0; i < d.grid_size(); ++i) {
    double v = d.grid_point(i);
    double f = d.pdf(v);
    double tail = 1.0 - d.cdf(v);
    double phi = f > 0.0 ? v - tail / f : neg_inf;
    double psi = v * f - tail;
    if (phi < prev_phi - slack) r.regular = false;
    if (psi < prev_psi - slack) r.dmr = false;
    prev_phi = phi;
    prev_psi = psi;
  }
  if (r.regular && r.dmr) {
    r.label = Regularity::both;
  } else if (r.regular) {
    r.label = Regularity::regular;
  } else if (r.dmr) {
    r.label = Regularity::dmr;
  } else {
    r.label = Regularity::neither;
  }
  return r;
}

double gamma_inverse(const ValueDistribution& d, double y) {
  const double m = monopoly_revenue(d);
  if (std::isnan(y) || y > m + 1e-12) {
    throw DomainError(ErrorCode::out_of_range,
                      "target revenue exceeds the monopoly benchmark");
  }
  if (y <= 0.0) return 0.0;

  if (!d.is_continuous()) {
    double prev = 0.0;
    for (const Atom& a : d.atoms()) {
      double s = d.survival_from(a.value);
      if (a.value * s >= y) return std::max(prev, std::min(a.value, y / s));
      prev = a.value;
    }
    return myerson_price(d);
  }

  const double v_star = myerson_price(d);
  auto run = d.gamma_running_max();
  auto it = std::lower_bound(run.begin(), run.end(), y);
  std::size_t idx = static_cast<std::size_t>(it - run.begin());
  double lo, hi;
  if (idx < run.size() && d.grid_point(idx) <= v_star) {
    if (idx == 0) return 0.0;
    lo = d.grid_point(idx - 1);
    hi = d.grid_point(idx);
  } else {
    hi = v_star;
    double h = d.support_max() / static_cast<double>(d.grid_size() - 1);
    lo = std::min(std::floor(v_star / h) * h, v_star);
    if (lo >= hi) return hi;
  }
  auto reaches = [&](double v) { return gamma(d, v) >= y; };
  return numeric::bisect(reaches, lo, hi, 0.0).hi;
}

}  // namespace duopoly
