#pragma once

#include <stdexcept>
#include <vector>

#include "riffle/exact_dist.hpp"
#include "riffle/limit_laws.hpp"
#include "riffle/montecarlo.hpp"

namespace riffle {

enum class LawTarget { x, cjn };

struct ConvergenceMode {
  enum class Kind { exact, montecarlo };
  Kind kind = Kind::exact;
  McConfig mc;

  static ConvergenceMode exact() { return {}; }
  static ConvergenceMode montecarlo(McConfig cfg) { return {Kind::montecarlo, cfg}; }
};

/// Law of X_n (or C_{n-1-J_n,J_n}) for each n in `n_list`, compared with the
/// regime's limit law. Exact laws at fixed p share one recursion pass.
inline std::vector<ConvergenceRow> convergence_report(const RegimeSpec& regime, const std::vector<int>& n_list,
                                                      const ConvergenceMode& mode, LawTarget target = LawTarget::x) {
  regime.validate();
  if (n_list.empty()) throw std::invalid_argument("convergence_report: empty n list");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1 || (i > 0 && n_list[i] <= n_list[i - 1])) {
      throw std::invalid_argument("convergence_report: n list must be ascending positive integers");
    }
    if (target == LawTarget::cjn && n_list[i] < 2) throw std::invalid_argument("convergence_report: cjn needs n >= 2");
    if (mode.kind == ConvergenceMode::Kind::exact && n_list[i] > kXLawGuard) {
      throw guard_error("convergence_report: n exceeds the exact recursion guard");
    }
    regime.p_at(n_list[i]);
  }

  std::vector<ConvergenceRow> rows;
  rows.reserve(n_list.size());
  if (mode.kind == ConvergenceMode::Kind::montecarlo) {
    for (int n : n_list) {
      const ShuffleParams params(n, regime.p_at(n));
      const Pmf law = target == LawTarget::x ? simulate_x(params, mode.mc) : simulate_cjn(params, mode.mc);
      rows.push_back(compare_with_limit(regime, n, params.p(), law));
    }
    return rows;
  }

  auto law_of = [target](const XLawSequence& seq) {
    return target == LawTarget::x ? seq.pmf() : Pmf(0, seq.cjn_masses());
  };
  if (regime.family == RegimeSpec::Family::fixed_p) {
    XLawSequence seq(StrategyTable(regime.p, n_list.back()));
    for (int n : n_list) {
      seq.advance_to(n);
      rows.push_back(compare_with_limit(regime, n, regime.p, law_of(seq)));
    }
    return rows;
  }
  for (int n : n_list) {
    const double p = regime.p_at(n);
    XLawSequence seq(StrategyTable(p, n));
    seq.advance_to(n);
    rows.push_back(compare_with_limit(regime, n, p, law_of(seq)));
  }
  return rows;
}

}  // namespace riffle
