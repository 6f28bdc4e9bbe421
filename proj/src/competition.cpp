#include "duopoly/competition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "duopoly/error.hpp"
#include "step_integral.hpp"

namespace duopoly {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t probe_count(std::size_t requested, const ValueDistribution& d) {
  std::size_t n = requested == 0 ? d.grid_size() : requested;
  return std::max<std::size_t>(n, 2);
}

double min_cell(double hi) { return 1e-13 * std::max(1.0, hi); }

struct ChoiceSample {
  std::tuple<Order, double, double> key;
  std::array<double, 4> values;
};

ChoiceSample sample_choice(const PricingMenu& alice, const PricingMenu& bob,
                           double v, BuyerChoice* out = nullptr) {
  BuyerChoice c = best_response(alice, bob, v);
  if (out) *out = c;
  return {{c.order, c.x_first, c.x_second},
          {c.pay_alice, c.pay_bob, c.alloc_alice, c.alloc_bob}};
}

struct DemandSample {
  double key;
  std::array<double, 1> values;
};

DemandSample sample_demand(const PricingMenu& m, double w) {
  double x = demand(m, w);
  return {x, {m.price_or_throw(x)}};
}

}  // namespace

CompetitionOutcome revenues(const PricingMenu& alice, const PricingMenu& bob,
                            const ValueDistribution& d,
                            const RevenueOptions& opts) {
  CompetitionOutcome out;
  if (!d.is_continuous()) {
    for (const Atom& atom : d.atoms()) {
      BuyerChoice c = best_response(alice, bob, atom.value);
      out.rev_alice += atom.mass * c.pay_alice;
      out.rev_bob += atom.mass * c.pay_bob;
      out.alloc_alice += atom.mass * c.alloc_alice;
      out.alloc_bob += atom.mass * c.alloc_bob;
      if (opts.keep_trace) out.trace.push_back({atom.value, c});
    }
    return out;
  }

  auto eval = [&](double v) { return sample_choice(alice, bob, v); };
  auto cdf = [&](double v) { return d.cdf(v); };
  auto integrator =
      detail::make_step_integrator<4>(eval, cdf, min_cell(d.support_max()));
  auto record = [&](double v, const ChoiceSample&) {
    if (!opts.keep_trace) return;
    BuyerChoice c;
    sample_choice(alice, bob, v, &c);
    out.trace.push_back({v, c});
  };
  auto acc = integrator.run(0.0, d.support_max(), probe_count(opts.grid_points, d),
                            record);
  out.rev_alice = acc[0];
  out.rev_bob = acc[1];
  out.alloc_alice = acc[2];
  out.alloc_bob = acc[3];
  return out;
}

double rev_fixed_price(const SingleLottery& alice, double q,
                       const ValueDistribution& d) {
  double g = gamma(d, q);
  return q <= alice.p ? g : (1.0 - alice.z) * g;
}

double monopoly_revenue(const PricingMenu& m, const ValueDistribution& d,
                        std::size_t grid_points) {
  if (!d.is_continuous()) {
    double rev = 0.0;
    for (const Atom& atom : d.atoms()) {
      rev += atom.mass * m.price_or_throw(demand(m, atom.value));
    }
    return rev;
  }
  auto eval = [&](double w) { return sample_demand(m, w); };
  auto cdf = [&](double w) { return d.cdf(w); };
  auto integrator =
      detail::make_step_integrator<1>(eval, cdf, min_cell(d.support_max()));
  return integrator.run(0.0, d.support_max(), probe_count(grid_points, d),
                        [](double, const DemandSample&) {})[0];
}

AuxiliaryDistribution::AuxiliaryDistribution(ValueDistribution base,
                                             SingleLottery alice, double s)
    : base_(std::move(base)), alice_(alice), s_(s), infinite_(false) {
  if (!(alice.z > 0.0 && alice.z < 1.0) || !(alice.p >= 0.0)) {
    throw DomainError(ErrorCode::invalid_argument,
                      "auxiliary prior needs z in (0,1) and p >= 0");
  }
  if (std::isnan(s) || s < alice.p) {
    throw DomainError(ErrorCode::invalid_threshold, "threshold below p");
  }
  if (s == kInf || s > base_.support_max() + 1.0) {
    infinite_ = s == kInf;
    s_ = std::max(base_.support_max(), alice.p) + 1.0;
  }
}

double AuxiliaryDistribution::squeeze_end() const {
  return alice_.a() + (1.0 - alice_.z) * s_;
}

double AuxiliaryDistribution::atom_at_zero() const {
  return alice_.z * (1.0 - base_.cdf(s_));
}

double AuxiliaryDistribution::cdf(double v) const {
  if (v < 0.0) return 0.0;
  const double z = alice_.z;
  const double atom = atom_at_zero();
  if (v <= alice_.p) return atom + base_.cdf(v);
  if (v < squeeze_end()) return atom + base_.cdf((v - alice_.a()) / (1.0 - z));
  if (v < s_) return atom + base_.cdf(s_);
  return z + (1.0 - z) * base_.cdf(v);
}

double AuxiliaryDistribution::pdf(double v) const {
  if (v < 0.0) return 0.0;
  const double z = alice_.z;
  if (v <= alice_.p) return base_.pdf(v);
  if (v < squeeze_end()) {
    return base_.pdf((v - alice_.a()) / (1.0 - z)) / (1.0 - z);
  }
  if (v < s_) return 0.0;
  return (1.0 - z) * base_.pdf(v);
}

double AuxiliaryDistribution::gamma(double v) const {
  if (v < 0.0) return 0.0;
  return v * (1.0 - cdf(v));
}

double AuxiliaryDistribution::gamma_by_pieces(double v) const {
  const double z = alice_.z;
  const double tail_s = 1.0 - base_.cdf(s_);
  if (v <= alice_.p) return v * (1.0 - z * tail_s - base_.cdf(v));
  if (v < squeeze_end()) {
    return v * (1.0 - z * tail_s - base_.cdf((v - alice_.a()) / (1.0 - z)));
  }
  if (v < s_) return v * (1.0 - z) * tail_s;
  return v * (1.0 - z) * (1.0 - base_.cdf(v));
}

AuxiliaryDistribution aux_distribution(const ValueDistribution& d,
                                       const SingleLottery& alice, double s) {
  return AuxiliaryDistribution(d, alice, s);
}

double monopoly_revenue(const PricingMenu& m, const AuxiliaryDistribution& ds,
                        std::size_t grid_points) {
  const ValueDistribution& d = ds.base();
  if (!d.is_continuous()) {
    // Push every atom through the same map that defines the auxiliary prior.
    const SingleLottery& a = ds.lottery();
    double rev = 0.0;
    for (const Atom& atom : d.atoms()) {
      double v = atom.value;
      if (v <= a.p) {
        rev += atom.mass * m.price_or_throw(demand(m, v));
      } else if (v < ds.s()) {
        double w = a.a() + (1.0 - a.z) * v;
        rev += atom.mass * m.price_or_throw(demand(m, w));
      } else {
        rev += atom.mass * (1.0 - a.z) * m.price_or_throw(demand(m, v));
      }
    }
    return rev;
  }
  // Squeezed types land below their original value, so the support of D_s
  // never extends past the base support.
  const double hi = d.support_max();
  auto eval = [&](double w) { return sample_demand(m, w); };
  auto cdf = [&](double w) { return ds.cdf(w); };
  auto integrator = detail::make_step_integrator<1>(eval, cdf, min_cell(hi));
  return integrator.run(0.0, hi, probe_count(grid_points, d),
                        [](double, const DemandSample&) {})[0];
}

OneSellerCheck check_oneseller(const SingleLottery& alice, const PricingMenu& bob,
                               const ValueDistribution& d,
                               const OneSellerOptions& opts) {
  OneSellerCheck out;
  const double v_max = d.support_max();
  double s = ab_start(alice, bob, v_max);
  if (!d.is_continuous() && std::isfinite(s)) {
    // With atoms the threshold type itself matters: use the first atom that
    // actually buys alice-first.
    PricingMenu a = alice.menu();
    s = kInf;
    for (const Atom& atom : d.atoms()) {
      if (best_response(a, bob, atom.value).order == Order::alice_first) {
        s = atom.value;
        break;
      }
    }
  }
  out.s = s;
  AuxiliaryDistribution ds(d, alice, s);
  out.monopolist_revenue = monopoly_revenue(bob, ds, opts.grid_points);
  PricingMenu a_menu = alice.menu();
  RevenueOptions ro;
  ro.grid_points = opts.grid_points;
  out.duopoly_revenue = revenues(a_menu, bob, d, ro).rev_bob;
  out.gap = out.monopolist_revenue - out.duopoly_revenue;

  std::size_t n = opts.allocation_points;
  if (n == 0 && d.is_continuous()) n = d.grid_size();
  const double tol_s = 1e-8 * std::max(1.0, v_max);
  auto expected_bob = [&](double v, bool squeezed) {
    double w = squeezed ? alice.a() + (1.0 - alice.z) * v : v;
    return demand(bob, w);
  };
  auto check_point = [&](double v) {
    BuyerChoice c = best_response(a_menu, bob, v);
    double got = c.bob_option();
    bool in_squeeze = v >= alice.p && (d.is_continuous() ? v <= ds.s() : v < ds.s());
    bool ok = std::fabs(got - expected_bob(v, in_squeeze)) <= 1e-12;
    if (!ok && (std::fabs(v - ds.s()) <= tol_s || std::fabs(v - alice.p) <= tol_s)) {
      ok = std::fabs(got - expected_bob(v, !in_squeeze)) <= 1e-12;
    }
    ++out.points_checked;
    if (!ok) ++out.allocation_mismatches;
  };
  if (d.is_continuous()) {
    for (std::size_t i = 0; i < n; ++i) {
      double v = v_max * static_cast<double>(i) / static_cast<double>(n - 1);
      check_point(v);
    }
  } else {
    for (const Atom& atom : d.atoms()) check_point(atom.value);
  }
  return out;
}

}  // namespace duopoly
