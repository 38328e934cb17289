#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "riffle/riffle.hpp"

namespace riffle::cli {

enum class Format { csv, json };

using Cell = std::variant<std::int64_t, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool quote_header = false;
};

inline std::string format_number(double v) {
  if (std::isnan(v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string csv_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) return format_number(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "TRUE" : "FALSE";
        else return v;
      },
      c);
}

inline nlohmann::json json_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (std::isnan(v)) return nullptr;
          return std::stod(format_number(v));
        } else {
          return v;
        }
      },
      c);
}

inline std::string render(const Table& t, Format f) {
  std::ostringstream out;
  if (f == Format::json) {
    auto rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
      nlohmann::json obj = nlohmann::json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = json_cell(r[i]);
      rows.push_back(std::move(obj));
    }
    out << rows.dump() << '\n';
    return out.str();
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out << ',';
    out << (t.quote_header ? "\"" + t.columns[i] + "\"" : t.columns[i]);
  }
  out << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out << ',';
      out << csv_cell(r[i]);
    }
    out << '\n';
  }
  return out.str();
}

// Drops zero masses at either end so the table starts and ends on the support.
inline Pmf trimmed(const Pmf& pmf) {
  const auto& m = pmf.masses();
  std::size_t lo = 0, hi = m.size();
  while (lo + 1 < hi && m[lo] == 0.0) ++lo;
  while (hi - 1 > lo && m[hi - 1] == 0.0) --hi;
  return Pmf(pmf.offset() + static_cast<std::int64_t>(lo), std::vector<double>(m.begin() + static_cast<std::ptrdiff_t>(lo), m.begin() + static_cast<std::ptrdiff_t>(hi)));
}

inline std::string render(const Pmf& full, Format f) {
  const Pmf pmf = trimmed(full);
  if (f == Format::json) {
    nlohmann::json obj;
    obj["support_offset"] = pmf.offset();
    auto masses = nlohmann::json::array();
    for (double m : pmf.masses()) masses.push_back(std::stod(format_number(m)));
    obj["masses"] = std::move(masses);
    return obj.dump() + "\n";
  }
  Table t{{"k", "prob"}, {}};
  for (std::int64_t k = pmf.min_value(); k <= pmf.max_value(); ++k) t.rows.push_back({k, pmf[k]});
  return render(t, f);
}

inline Table first_card(int n, double p) {
  const Pmf fc = first_card_pmf(ShuffleParams(n, p));
  Table t{{"m", "prob"}, {}};
  for (std::int64_t m = 1; m <= n; ++m) t.rows.push_back({m, fc[m]});
  return t;
}

inline Table strategy(double p, int n_max) {
  const StrategyTable table(p, n_max);
  Table t{{"n", "n0_flag", "A_n", "kappa_n", "first_guess"}, {}};
  for (int n = 1; n <= n_max; ++n) {
    t.rows.push_back({std::int64_t{n}, table.first_card_at_least_half(n), table.a_indicator_for(n),
                      std::int64_t{table.kappa_for(n)}, std::int64_t{table.first_guess_for(n)}});
  }
  return t;
}

// Columns of the unRifflePoints.csv file: y(n) = max_{m>=2} P{FC_n = m},
// with y(1) = 0.
inline Table rpoints(double p, int n_max) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("rpoints: p must lie in (0, 1)");
  if (n_max < 1) throw std::invalid_argument("rpoints: n_max must be >= 1");
  Table t{{"x", "y"}, {}, true};
  for (int n = 1; n <= n_max; ++n) t.rows.push_back({std::int64_t{n}, detail::first_card_best_other(n, p)});
  return t;
}

inline Pmf exact(int n, double p) { return x_pmf(ShuffleParams(n, p)); }

inline Pmf mc(int n, double p, const McConfig& cfg) { return simulate_x(ShuffleParams(n, p), cfg); }

inline Pmf cpmf(int m1, int m2) { return c_pmf(m1, m2); }

inline Table converge(const RegimeSpec& regime, const std::vector<int>& n_list, const ConvergenceMode& mode,
                      LawTarget target) {
  const auto report = convergence_report(regime, n_list, mode, target);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  Table t{{"n", "p", "law", "law_parameter", "center", "scale", "tv", "ks", "mass_at_zero"}, {}};
  for (const auto& r : report) {
    t.rows.push_back({std::int64_t{r.n}, r.p, r.law, r.law_parameter, r.center, r.scale, r.tv.value_or(nan),
                      r.ks.value_or(nan), r.mass_at_zero.value_or(nan)});
  }
  return t;
}

inline Table thresholds(const std::vector<double>& ps) {
  Table t{{"p", "n0", "n1", "crossings"}, {}};
  for (double p : ps) {
    detail::require_below_half(p, "thresholds");
    const StrategyTable table(p, 1);
    t.rows.push_back({p, std::int64_t{*table.n0()}, std::int64_t{*table.n1()}, std::int64_t{table.crossings()}});
  }
  return t;
}

inline Table identity(int n, double p) {
  const ShuffleParams params(n, p);
  Table t{{"n", "p", "identity_probability"}, {}};
  t.rows.push_back({std::int64_t{n}, p, identity_probability(params)});
  return t;
}

inline Table rif_limit(double lambda, double c, const std::vector<int>& n_list) {
  const auto regime = RegimeSpec::one_minus(lambda, c);
  Table t{{"n", "p", "identity_probability", "limit"}, {}};
  for (const auto& r : rif_id_limit(regime, n_list)) {
    t.rows.push_back({std::int64_t{r.n}, r.p, r.identity_probability, rif_id_limit_value(regime)});
  }
  return t;
}

inline Table kpp(int m1, int m2) {
  const auto region = kpp_region(m1, m2);
  const Pmf law = c_pmf(m1, m2);
  Table t{{"m1", "m2", "region", "law", "law_parameter", "center", "scale", "distance"}, {}};
  // ks of (C - center)/scale; lattice limits use tv on C - center.
  double distance = 0.0;
  if (region.law.is_continuous()) {
    distance = ks_distance(law, region.law, region.center, region.scale);
  } else {
    distance = tv_distance(law.shifted(-static_cast<std::int64_t>(region.center)), region.law);
  }
  t.rows.push_back({std::int64_t{m1}, std::int64_t{m2}, std::string(to_string(region.label)), region.law.name(),
                    region.law.parameter(), region.center, region.scale, distance});
  return t;
}

inline LimitLaw density_law(const std::string& name, double param) {
  if (name == "gg") return law::MaxwellBoltzmann{};
  if (name == "rayleigh") return law::Rayleigh{};
  if (name == "linexp") return law::LinExp{param};
  if (name == "chi-half") return law::HalfNoncentralChi3{param};
  if (name == "shifted-exp") return law::ShiftedExponential{param};
  throw std::invalid_argument("density: unknown law '" + name + "'");
}

inline Table density(const std::string& name, double param, double from, double to, int points) {
  if (points < 2) throw std::invalid_argument("density: need at least two points");
  if (!(to > from)) throw std::invalid_argument("density: need to > from");
  const LimitLaw law = density_law(name, param);
  Table t{{"x", "density", "cdf"}, {}};
  for (int i = 0; i < points; ++i) {
    const double x = from + (to - from) * i / (points - 1);
    t.rows.push_back({x, law.density(x), law.cdf(x)});
  }
  return t;
}

}  // namespace riffle::cli
