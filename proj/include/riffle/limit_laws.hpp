#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "riffle/pmf.hpp"
#include "riffle/shuffle_model.hpp"

namespace riffle {

// ---------------------------------------------------------------------------
// Densities and point masses

inline double geometric_pmf(double rho, std::int64_t k) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("geometric_pmf: rho must lie in (0, 1)");
  if (k < 0) return 0.0;
  return std::pow(rho, static_cast<double>(k)) * (1.0 - rho);
}

inline double poisson_pmf(double lambda, std::int64_t k) {
  if (!(lambda > 0.0)) throw std::invalid_argument("poisson_pmf: lambda must be positive");
  if (k < 0) return 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

// Maxwell-Boltzmann law of the p = 1/2 fluctuations.
inline double gg_density(double x) {
  if (x < 0.0) return 0.0;
  return std::sqrt(2.0 / std::numbers::pi) * 8.0 * x * x * std::exp(-2.0 * x * x);
}

// Half a noncentral chi with three degrees of freedom, written through the
// explicit density. Uses |b| and
//   e^{-2(x^2+b^2)} sinh(4bx) = e^{-2(x+b)^2} expm1(8bx) / 2,
// which keeps the small-b limit accurate and makes the result even in b.
inline double chi_half_density(double x, double b) {
  if (b == 0.0) throw std::invalid_argument("chi_half_density: b must be nonzero (use gg_density)");
  if (x < 0.0) return 0.0;
  const double ab = std::abs(b);
  const double sh = std::exp(-2.0 * (x + ab) * (x + ab)) * std::expm1(8.0 * ab * x) / 2.0;
  return 4.0 * x / std::sqrt(2.0 * std::numbers::pi) * sh / ab;
}

inline double shifted_exp_cdf(double x, double b) {
  if (b == 0.0) throw std::invalid_argument("shifted_exp_cdf: b must be nonzero");
  const double ab = std::abs(b);
  if (x < ab) return 0.0;
  return -std::expm1(-(x - ab) / (2.0 * ab));
}

inline double shifted_exp_density(double x, double b) {
  if (b == 0.0) throw std::invalid_argument("shifted_exp_density: b must be nonzero");
  const double ab = std::abs(b);
  if (x < ab) return 0.0;
  return std::exp(-(x - ab) / (2.0 * ab)) / (2.0 * ab);
}

inline double rayleigh_density(double x) { return x < 0.0 ? 0.0 : 2.0 * x * std::exp(-x * x); }

inline double linexp_density(double x, double rho) {
  if (rho < 0.0) throw std::invalid_argument("linexp_density: rho must be nonnegative");
  return x < 0.0 ? 0.0 : (rho + 2.0 * x) * std::exp(-x * (rho + x));
}

inline double exp_region_density(double x) { return x < 0.0 ? 0.0 : std::exp(-x); }

// ---------------------------------------------------------------------------
// Quadrature

namespace detail {

inline constexpr double kQuadTolerance = 1e-9;

template <class F>
double integrate(F f, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  double err = 0.0;
  // Relative tolerance is tightened until the absolute target is met.
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-12, &err);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// LimitLaw

namespace law {
struct Geometric { double rho; };
struct MaxwellBoltzmann {};
struct HalfNoncentralChi3 { double b; };
struct ShiftedExponential { double b; };
struct Exponential {};       // unit rate, the two-color exponential region
struct Rayleigh {};
struct LinExp { double rho; };
struct Poisson { double lambda; };
struct StandardNormal {};    // central-limit regime near p = 1
struct DegenerateAtZero {};
}  // namespace law

/// Tagged family of the limiting distributions that appear for X_n and for
/// the two-color game. Continuous members are checked for unit mass when
/// constructed.
class LimitLaw {
 public:
  using Variant = std::variant<law::Geometric, law::MaxwellBoltzmann, law::HalfNoncentralChi3,
                               law::ShiftedExponential, law::Exponential, law::Rayleigh, law::LinExp,
                               law::Poisson, law::StandardNormal, law::DegenerateAtZero>;

  static constexpr double kMassTolerance = 1e-6;

  template <class L>
    requires std::is_constructible_v<Variant, L>
  LimitLaw(L l) : LimitLaw(Variant(std::move(l)), 0) {}  // NOLINT(google-explicit-constructor)

 private:
  LimitLaw(Variant v, int) : v_(std::move(v)) {
    validate_parameters();
    if (is_continuous() && !std::holds_alternative<law::StandardNormal>(v_)) {
      const double mass = detail::integrate([this](double x) { return density(x); }, lower_support(), upper_support());
      if (std::abs(mass - 1.0) > kMassTolerance) {
        throw std::invalid_argument("LimitLaw: density of " + name() + " integrates to " + std::to_string(mass));
      }
    }
  }


 public:
  const Variant& variant() const { return v_; }

  bool is_continuous() const {
    return !(std::holds_alternative<law::Geometric>(v_) || std::holds_alternative<law::Poisson>(v_) ||
             std::holds_alternative<law::DegenerateAtZero>(v_));
  }

  std::string name() const {
    return std::visit(
        [](const auto& l) -> std::string {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, law::Geometric>) return "geometric";
          else if constexpr (std::is_same_v<T, law::MaxwellBoltzmann>) return "maxwell_boltzmann";
          else if constexpr (std::is_same_v<T, law::HalfNoncentralChi3>) return "half_noncentral_chi3";
          else if constexpr (std::is_same_v<T, law::ShiftedExponential>) return "shifted_exponential";
          else if constexpr (std::is_same_v<T, law::Exponential>) return "exponential";
          else if constexpr (std::is_same_v<T, law::Rayleigh>) return "rayleigh";
          else if constexpr (std::is_same_v<T, law::LinExp>) return "linexp";
          else if constexpr (std::is_same_v<T, law::Poisson>) return "poisson";
          else if constexpr (std::is_same_v<T, law::StandardNormal>) return "standard_normal";
          else return "degenerate";
        },
        v_);
  }

  // The single shape parameter, or NaN for parameter-free members.
  double parameter() const {
    return std::visit(
        [](const auto& l) -> double {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, law::Geometric> || std::is_same_v<T, law::LinExp>) return l.rho;
          else if constexpr (std::is_same_v<T, law::HalfNoncentralChi3> ||
                             std::is_same_v<T, law::ShiftedExponential>) return l.b;
          else if constexpr (std::is_same_v<T, law::Poisson>) return l.lambda;
          else return std::numeric_limits<double>::quiet_NaN();
        },
        v_);
  }

  // Density for continuous members; zero for the lattice ones.
  double density(double x) const {
    return std::visit(
        [x](const auto& l) -> double {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, law::MaxwellBoltzmann>) return gg_density(x);
          else if constexpr (std::is_same_v<T, law::HalfNoncentralChi3>) return chi_half_density(x, l.b);
          else if constexpr (std::is_same_v<T, law::ShiftedExponential>) return shifted_exp_density(x, l.b);
          else if constexpr (std::is_same_v<T, law::Exponential>) return exp_region_density(x);
          else if constexpr (std::is_same_v<T, law::Rayleigh>) return rayleigh_density(x);
          else if constexpr (std::is_same_v<T, law::LinExp>) return linexp_density(x, l.rho);
          else if constexpr (std::is_same_v<T, law::StandardNormal>)
            return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
          else return 0.0;
        },
        v_);
  }

  // Point mass for the lattice members; zero for continuous ones.
  double pmf(std::int64_t k) const {
    return std::visit(
        [k](const auto& l) -> double {
          using T = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<T, law::Geometric>) return geometric_pmf(l.rho, k);
          else if constexpr (std::is_same_v<T, law::Poisson>) return poisson_pmf(l.lambda, k);
          else if constexpr (std::is_same_v<T, law::DegenerateAtZero>) return k == 0 ? 1.0 : 0.0;
          else return 0.0;
        },
        v_);
  }

  /// P{L <= x}. Lattice laws sum their masses; the shifted exponential,
  /// exponential and normal use closed forms; the others integrate the
  /// density.
  double cdf(double x) const {
    if (std::holds_alternative<law::StandardNormal>(v_)) return 0.5 * std::erfc(-x / std::numbers::sqrt2);
    if (std::holds_alternative<law::ShiftedExponential>(v_)) {
      return shifted_exp_cdf(x, std::get<law::ShiftedExponential>(v_).b);
    }
    if (std::holds_alternative<law::Exponential>(v_)) return x < 0.0 ? 0.0 : -std::expm1(-x);
    if (!is_continuous()) {
      if (x < 0.0) return 0.0;
      if (std::holds_alternative<law::Geometric>(v_)) {
        const double rho = std::get<law::Geometric>(v_).rho;
        return 1.0 - std::pow(rho, std::floor(x) + 1.0);
      }
      double acc = 0.0;
      for (std::int64_t k = 0; k <= static_cast<std::int64_t>(std::floor(x)); ++k) acc += pmf(k);
      return std::min(acc, 1.0);
    }
    if (x <= 0.0) return 0.0;
    return std::min(1.0, detail::integrate([this](double t) { return density(t); }, 0.0, x));
  }

  // Integral of the density over [lo, hi]; used to extend a CDF cheaply.
  double mass_between(double lo, double hi) const {
    lo = std::max(lo, 0.0);
    return detail::integrate([this](double t) { return density(t); }, lo, hi);
  }

  // Left end of the support; the shifted exponential starts at |b|.
  double lower_support() const {
    if (const auto* s = std::get_if<law::ShiftedExponential>(&v_)) return std::abs(s->b);
    return 0.0;
  }

  // Point beyond which the density is negligible for quadrature.
  double upper_support() const {
    double extra = 0.0;
    if (const auto* c = std::get_if<law::HalfNoncentralChi3>(&v_)) extra = std::abs(c->b);
    if (const auto* s = std::get_if<law::ShiftedExponential>(&v_)) extra = 60.0 * std::abs(s->b);
    return 20.0 + extra;
  }

 private:
  void validate_parameters() const {
    if (const auto* g = std::get_if<law::Geometric>(&v_); g && !(g->rho > 0.0 && g->rho < 1.0)) {
      throw std::invalid_argument("LimitLaw: geometric rho must lie in (0, 1)");
    }
    if (const auto* c = std::get_if<law::HalfNoncentralChi3>(&v_); c && c->b == 0.0) {
      throw std::invalid_argument("LimitLaw: chi-half needs b != 0 (use MaxwellBoltzmann)");
    }
    if (const auto* s = std::get_if<law::ShiftedExponential>(&v_); s && s->b == 0.0) {
      throw std::invalid_argument("LimitLaw: shifted exponential needs b != 0");
    }
    if (const auto* l = std::get_if<law::LinExp>(&v_); l && !(l->rho >= 0.0)) {
      throw std::invalid_argument("LimitLaw: linexp rho must be nonnegative");
    }
    if (const auto* po = std::get_if<law::Poisson>(&v_); po && !(po->lambda > 0.0)) {
      throw std::invalid_argument("LimitLaw: poisson lambda must be positive");
    }
  }

  Variant v_;
};

// ---------------------------------------------------------------------------
// Distances

inline double tv_distance(const Pmf& a, const Pmf& b) {
  const std::int64_t lo = std::min(a.min_value(), b.min_value());
  const std::int64_t hi = std::max(a.max_value(), b.max_value());
  double acc = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) acc += std::abs(a[k] - b[k]);
  return std::min(1.0, 0.5 * acc);
}

// Total variation between an integer-valued pmf and a lattice limit law.
inline double tv_distance(const Pmf& a, const LimitLaw& law) {
  if (law.is_continuous()) throw std::invalid_argument("tv_distance: limit law must be a lattice law");
  double acc = 0.0;
  double covered = 0.0;
  for (std::int64_t k = a.min_value(); k <= a.max_value(); ++k) {
    const double m = law.pmf(k);
    acc += std::abs(a[k] - m);
    covered += m;
  }
  // Limit-law mass outside the pmf's stored range.
  acc += std::max(0.0, 1.0 - covered);
  return std::min(1.0, 0.5 * acc);
}

/// sup over support points k of |P{(X - center)/scale <= (k - center)/scale}
/// - F((k - center)/scale)|.
inline double ks_distance(const Pmf& pmf, const LimitLaw& law, double center, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("ks_distance: scale must be positive");
  double cum = 0.0;
  double worst = 0.0;
  std::optional<double> last_x;
  double law_cdf = 0.0;
  const bool incremental = law.is_continuous() && !std::holds_alternative<law::StandardNormal>(law.variant()) &&
                           !std::holds_alternative<law::ShiftedExponential>(law.variant()) &&
                           !std::holds_alternative<law::Exponential>(law.variant());
  for (std::int64_t k = pmf.min_value(); k <= pmf.max_value(); ++k) {
    cum += pmf[k];
    if (pmf[k] == 0.0) continue;
    const double x = (static_cast<double>(k) - center) / scale;
    if (incremental) {
      law_cdf = last_x ? std::min(1.0, law_cdf + law.mass_between(*last_x, x)) : law.cdf(x);
      last_x = x;
    } else {
      law_cdf = law.cdf(x);
    }
    worst = std::max(worst, std::abs(std::min(cum, 1.0) - law_cdf));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Two-color regions

enum class KppRegionLabel { degenerate_head, geometric, exponential, linexp, rayleigh };

inline const char* to_string(KppRegionLabel r) {
  switch (r) {
    case KppRegionLabel::degenerate_head: return "degenerate_head";
    case KppRegionLabel::geometric: return "geometric";
    case KppRegionLabel::exponential: return "exponential";
    case KppRegionLabel::linexp: return "linexp";
    case KppRegionLabel::rayleigh: return "rayleigh";
  }
  return "?";
}

/// Region of (m1, m2), m1 >= m2, with its limit law. `center` and `scale`
/// give the standardization (C - center) / scale the law applies to.
struct KppRegion {
  KppRegionLabel label;
  LimitLaw law;
  double center;
  double scale;
};

// Finite-size classification of the asymptotic regions:
//   m2 < 0.05 m1                      degenerate head
//   Delta <= m1^0.4                    Rayleigh
//   m1^0.4 < Delta < m1^0.6            LinExp(Delta / sqrt(m1))
//   Delta >= 0.05 m1                   Geometric(m2 / m1)
//   otherwise (m1^0.6 <= Delta < 0.05 m1) exponential
inline KppRegion kpp_region(int m1, int m2) {
  if (m1 < 1 || m2 < 0) throw std::invalid_argument("kpp_region: need m1 >= 1, m2 >= 0");
  if (m1 < m2) throw std::invalid_argument("kpp_region: need m1 >= m2 (swap the arguments)");
  const double a = m1;
  const double delta = m1 - m2;
  const double root = std::sqrt(a);
  if (m2 < 0.05 * a) return {KppRegionLabel::degenerate_head, law::DegenerateAtZero{}, a, 1.0};
  if (delta <= std::pow(a, 0.4)) return {KppRegionLabel::rayleigh, law::Rayleigh{}, a, root};
  if (delta < std::pow(a, 0.6)) return {KppRegionLabel::linexp, law::LinExp{delta / root}, a, root};
  if (delta >= 0.05 * a) return {KppRegionLabel::geometric, law::Geometric{m2 / a}, a, 1.0};
  return {KppRegionLabel::exponential, law::Exponential{}, a, a / delta};
}

// ---------------------------------------------------------------------------
// Regimes

/// How p depends on n in a convergence experiment.
struct RegimeSpec {
  enum class Family { fixed_p, half_plus, one_minus };
  Family family = Family::fixed_p;
  double p = 0.5;       // fixed_p
  double b = 0.0;       // half_plus: p = 1/2 + b n^-c
  double lambda = 1.0;  // one_minus: p = 1 - lambda n^-c
  double c = 1.0;

  static RegimeSpec fixed(double p) { return {Family::fixed_p, p, 0.0, 1.0, 1.0}; }
  static RegimeSpec half_plus(double b, double c) { return {Family::half_plus, 0.5, b, 1.0, c}; }
  static RegimeSpec one_minus(double lambda, double c) { return {Family::one_minus, 0.5, 0.0, lambda, c}; }

  double p_at(int n) const {
    const double nd = n;
    double v = p;
    if (family == Family::half_plus) v = 0.5 + b * std::pow(nd, -c);
    if (family == Family::one_minus) v = 1.0 - lambda * std::pow(nd, -c);
    if (!(v > 0.0 && v < 1.0)) {
      throw std::invalid_argument("RegimeSpec: p(" + std::to_string(n) + ") = " + std::to_string(v) + " is outside (0, 1)");
    }
    return v;
  }

  void validate() const {
    if (family != Family::fixed_p && !(c > 0.0)) throw std::invalid_argument("RegimeSpec: c must be positive");
    if (family == Family::one_minus && !(lambda > 0.0)) throw std::invalid_argument("RegimeSpec: lambda must be positive");
    if (family == Family::fixed_p && !(p > 0.0 && p < 1.0)) throw std::invalid_argument("RegimeSpec: p must lie in (0, 1)");
  }
};

/// One row of a convergence experiment. `tv` is set when the comparison is on
/// a common integer lattice, `ks` when a CDF comparison is meaningful.
struct ConvergenceRow {
  int n = 0;
  double p = 0.0;
  std::string law;
  double law_parameter = std::numeric_limits<double>::quiet_NaN();
  double center = 0.0;
  double scale = 1.0;
  std::optional<double> tv;
  std::optional<double> ks;
  std::optional<double> mass_at_zero;  // one_minus: P{n - X_n = 0}
};

/// Compares one law of X_n (or of C_{n-1-J_n,J_n}, which has the same
/// limits) with the regime's limit law.
inline ConvergenceRow compare_with_limit(const RegimeSpec& regime, int n, double p, const Pmf& law_of_x) {
  ConvergenceRow row;
  row.n = n;
  row.p = p;
  const double nd = n;
  switch (regime.family) {
    case RegimeSpec::Family::fixed_p: {
      if (p == 0.5) {
        const LimitLaw gg{law::MaxwellBoltzmann{}};
        row.law = gg.name();
        row.center = nd / 2.0;
        row.scale = std::sqrt(nd);
        row.ks = ks_distance(law_of_x, gg, row.center, row.scale);
        break;
      }
      const double pstar = std::max(p, 1.0 - p);
      const double rho = (1.0 - pstar) / pstar;
      const LimitLaw geo{law::Geometric{rho}};
      row.law = geo.name();
      row.law_parameter = rho;
      row.center = nd * pstar;
      // tv on the integer lattice after an integer shift, ks for the
      // un-rounded centering.
      const auto shift = static_cast<std::int64_t>(std::floor(nd * pstar));
      row.tv = tv_distance(law_of_x.shifted(-shift), geo);
      row.ks = ks_distance(law_of_x, geo, row.center, 1.0);
      break;
    }
    case RegimeSpec::Family::half_plus: {
      const double beta = std::max(std::pow(nd, 1.0 - regime.c), std::sqrt(nd));
      row.center = nd / 2.0;
      row.scale = beta;
      std::optional<LimitLaw> lim;
      if (regime.b == 0.0 || regime.c > 0.5) lim.emplace(law::MaxwellBoltzmann{});
      else if (regime.c == 0.5) lim.emplace(law::HalfNoncentralChi3{regime.b});
      else lim.emplace(law::ShiftedExponential{regime.b});
      row.law = lim->name();
      row.law_parameter = lim->parameter();
      row.ks = ks_distance(law_of_x, *lim, row.center, row.scale);
      break;
    }
    case RegimeSpec::Family::one_minus: {
      const Pmf deficit = law_of_x.reflected(n);  // n - X_n
      row.mass_at_zero = deficit[0];
      if (regime.c > 1.0) {
        const LimitLaw d{law::DegenerateAtZero{}};
        row.law = d.name();
        row.tv = tv_distance(deficit, d);
      } else if (regime.c == 1.0) {
        const LimitLaw po{law::Poisson{regime.lambda}};
        row.law = po.name();
        row.law_parameter = regime.lambda;
        row.tv = tv_distance(deficit, po);
      } else {
        const LimitLaw normal{law::StandardNormal{}};
        const double mu = regime.lambda * std::pow(nd, 1.0 - regime.c);
        row.law = normal.name();
        row.center = mu;
        row.scale = std::sqrt(mu);
        row.ks = ks_distance(deficit, normal, row.center, row.scale);
      }
      break;
    }
  }
  return row;
}

struct RifIdRow {
  int n;
  double p;
  double identity_probability;
};

/// Rif_p(id) along p(n) = 1 - lambda n^-c.
inline std::vector<RifIdRow> rif_id_limit(const RegimeSpec& regime, const std::vector<int>& n_list) {
  if (regime.family != RegimeSpec::Family::one_minus) {
    throw std::invalid_argument("rif_id_limit: regime must be one_minus");
  }
  regime.validate();
  std::vector<RifIdRow> rows;
  rows.reserve(n_list.size());
  for (int n : n_list) {
    const double p = regime.p_at(n);
    rows.push_back({n, p, identity_probability(ShuffleParams(n, p))});
  }
  return rows;
}

// Limit of Rif_p(id) along the regime: 1 for c > 1, e^-lambda for c = 1, 0 below.
inline double rif_id_limit_value(const RegimeSpec& regime) {
  if (regime.c > 1.0) return 1.0;
  if (regime.c == 1.0) return std::exp(-regime.lambda);
  return 0.0;
}

}  // namespace riffle
