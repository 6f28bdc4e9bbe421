#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace duopoly {

enum class DistributionKind { analytic_continuous, point_mass, finite_discrete };

enum class Family { uniform, exponential, pareto, mixture, point_mass, discrete };

struct Atom {
  double value;
  double mass;
};

inline constexpr std::size_t kDefaultGridSize = 200'001;

// Exponential tails are cut at this quantile; the rest of the mass sits at
// support_max.
inline constexpr double kTailMass = 1e-10;
inline constexpr double kTailQuantile = 1.0 - kTailMass;

// Immutable value prior. Construction precomputes the revenue curve on an
// evenly spaced grid over [0, support_max] together with its running maximum,
// so copies are cheap and share the tables.
class ValueDistribution {
 public:
  static ValueDistribution uniform(double lo, double hi,
                                   std::size_t grid_size = kDefaultGridSize);
  static ValueDistribution exponential(double rate,
                                       std::size_t grid_size = kDefaultGridSize);
  // Pareto(shape, scale) conditioned on v <= cap.
  static ValueDistribution truncated_pareto(double shape, double scale,
                                            double cap,
                                            std::size_t grid_size = kDefaultGridSize);
  // w * Uniform[a1,b1] + (1-w) * Uniform[a2,b2].
  static ValueDistribution uniform_mixture(double a1, double b1, double a2,
                                           double b2, double w,
                                           std::size_t grid_size = kDefaultGridSize);
  static ValueDistribution point_mass(double value);
  static ValueDistribution discrete(std::vector<Atom> atoms);

  DistributionKind kind() const { return kind_; }
  Family family() const { return family_; }
  bool is_continuous() const {
    return kind_ == DistributionKind::analytic_continuous;
  }
  std::string name() const;
  const std::vector<double>& params() const { return params_; }

  double support_max() const { return support_max_; }
  std::size_t grid_size() const { return grid_size_; }
  double grid_point(std::size_t i) const;

  // Right-continuous CDF. Returns exactly 1 from support_max on.
  double cdf(double v) const;
  // P[value >= v], the left limit used for selling at an atom.
  double survival_from(double v) const;
  // Density; continuous kinds only.
  double pdf(double v) const;
  // Atoms sorted by value with merged duplicates; empty for continuous kinds.
  std::span<const Atom> atoms() const { return atoms_; }
  // Points in [0, support_max] where the density may be non-smooth.
  std::vector<double> knots() const;

  // Revenue curve sampled at grid_point(i); continuous kinds only.
  std::span<const double> gamma_table() const;
  std::span<const double> gamma_running_max() const;

  bool degenerate() const { return degenerate_; }
  double cached_myerson_price() const;
  double cached_monopoly_revenue() const;

 private:
  ValueDistribution() = default;
  void build_tables();
  void find_myerson();

  struct Tables {
    std::vector<double> gamma;
    std::vector<double> running_max;
  };

  DistributionKind kind_ = DistributionKind::analytic_continuous;
  Family family_ = Family::uniform;
  std::vector<double> params_;
  std::vector<Atom> atoms_;
  double support_max_ = 0.0;
  std::size_t grid_size_ = kDefaultGridSize;
  double tail_norm_ = 1.0;
  std::shared_ptr<const Tables> tables_;
  bool degenerate_ = false;
  double myerson_ = 0.0;
  double monopoly_ = 0.0;
};

// q * P[value >= q]; zero above support_max.
double gamma(const ValueDistribution& d, double q);

// Largest maximizer of gamma. Throws degenerate_distribution when the curve is
// numerically zero.
double myerson_price(const ValueDistribution& d);
double monopoly_revenue(const ValueDistribution& d);

double virtual_value(const ValueDistribution& d, double v);

enum class Regularity { regular, dmr, both, neither };
std::string_view to_string(Regularity r);

struct RegularityReport {
  bool regular = false;
  bool dmr = false;
  Regularity label = Regularity::neither;
};

// Samples phi and phi*f on the grid. A point with zero density inside the
// support hull counts as phi = -infinity, so gaps in the support break
// regularity.
RegularityReport classify_regularity(const ValueDistribution& d,
                                     double slack = 1e-9);

// Smallest v >= 0 with gamma(v) >= y.
double gamma_inverse(const ValueDistribution& d, double y);

}  // namespace duopoly
