#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using riffle::cli::Format;

struct Output {
  std::string format = "csv";
  std::string path;
};

void add_output(CLI::App* sub, Output& out) {
  sub->add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", out.path, "output file (default: stdout)");
}

const std::map<std::string, riffle::McEngine> kEngines{
    {"auto", riffle::McEngine::automatic},
    {"deck", riffle::McEngine::deck_play},
    {"decomposed", riffle::McEngine::decomposed},
};

void add_mc_options(CLI::App* sub, riffle::McConfig& cfg, std::string& engine) {
  sub->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
  sub->add_option("--seed", cfg.seed);
  sub->add_option("--chunk-size", cfg.chunk_size)->check(CLI::PositiveNumber);
  sub->add_option("--workers", cfg.workers)->check(CLI::PositiveNumber);
  sub->add_option("--engine", engine, "auto, deck or decomposed")->check(CLI::IsMember({"auto", "deck", "decomposed"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Card guessing after one asymmetric riffle shuffle"};
  app.require_subcommand(1);

  Output out;
  int n = 0, n_max = 0, m1 = 0, m2 = 0, points = 101;
  double p = 0.0, param = 0.0, from = 0.0, to = 4.0;
  riffle::McConfig cfg;
  cfg.trials = 1'000'000;
  std::string engine = "auto";
  std::string law_name, target = "x", mode = "exact";
  std::vector<int> n_list;
  std::vector<double> ps, half_plus, one_minus;
  double fixed_p = 0.0;

  auto* first = app.add_subcommand("first-card", "first-card distribution (m, prob)");
  first->add_option("--n", n)->required();
  first->add_option("--p", p)->required();

  auto* strat = app.add_subcommand("strategy", "first-guess schedule");
  strat->add_option("--p", p)->required();
  strat->add_option("--n-max", n_max)->required();

  auto* rp = app.add_subcommand("rpoints", "unRifflePoints.csv columns");
  rp->add_option("--p", p)->required();
  rp->add_option("--n-max", n_max)->required();

  auto* ex = app.add_subcommand("exact", "exact law of X_n");
  ex->add_option("--n", n)->required();
  ex->add_option("--p", p)->required();

  auto* mc = app.add_subcommand("mc", "Monte Carlo law of X_n");
  mc->add_option("--n", n)->required();
  mc->add_option("--p", p)->required();
  add_mc_options(mc, cfg, engine);

  auto* cp = app.add_subcommand("cpmf", "exact law of C_{m1,m2}");
  cp->add_option("--m1", m1)->required();
  cp->add_option("--m2", m2)->required();

  auto* conv = app.add_subcommand("converge", "distance to the limit law along a regime");
  auto* opt_fixed = conv->add_option("--fixed-p", fixed_p);
  auto* opt_half = conv->add_option("--half-plus", half_plus, "b c")->expected(2);
  auto* opt_one = conv->add_option("--one-minus", one_minus, "lambda c")->expected(2);
  opt_fixed->excludes(opt_half)->excludes(opt_one);
  opt_half->excludes(opt_one);
  conv->add_option("--n-list", n_list)->required()->delimiter(',');
  conv->add_option("--mode", mode)->check(CLI::IsMember({"exact", "mc"}));
  conv->add_option("--target", target)->check(CLI::IsMember({"x", "cjn"}));
  add_mc_options(conv, cfg, engine);

  auto* thr = app.add_subcommand("thresholds", "n0, n1 and crossing count for p < 1/2");
  thr->add_option("--p", ps)->required()->delimiter(',');

  auto* idn = app.add_subcommand("identity", "Rif_p(id)");
  idn->add_option("--n", n)->required();
  idn->add_option("--p", p)->required();

  auto* rif = app.add_subcommand("rif-limit", "Rif_p(id) along p = 1 - lambda n^-c");
  rif->add_option("--one-minus", one_minus, "lambda c")->expected(2)->required();
  rif->add_option("--n-list", n_list)->required()->delimiter(',');

  auto* kp = app.add_subcommand("kpp", "two-color region and distance to its limit");
  kp->add_option("--m1", m1)->required();
  kp->add_option("--m2", m2)->required();

  auto* dens = app.add_subcommand("density", "limit density and CDF on a grid");
  dens->add_option("--law", law_name)->required()->check(CLI::IsMember({"gg", "rayleigh", "linexp", "chi-half", "shifted-exp"}));
  dens->add_option("--param", param);
  dens->add_option("--from", from);
  dens->add_option("--to", to);
  dens->add_option("--points", points);

  for (auto* sub : app.get_subcommands({})) add_output(sub, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const Format fmt = out.format == "json" ? Format::json : Format::csv;
  cfg.engine = kEngines.at(engine);
  std::string text;
  try {
    using namespace riffle::cli;
    if (first->parsed()) text = render(first_card(n, p), fmt);
    else if (strat->parsed()) text = render(strategy(p, n_max), fmt);
    else if (rp->parsed()) text = render(rpoints(p, n_max), fmt);
    else if (ex->parsed()) text = render(exact(n, p), fmt);
    else if (mc->parsed()) text = render(riffle::cli::mc(n, p, cfg), fmt);
    else if (cp->parsed()) text = render(cpmf(m1, m2), fmt);
    else if (conv->parsed()) {
      riffle::RegimeSpec regime;
      if (!half_plus.empty()) regime = riffle::RegimeSpec::half_plus(half_plus[0], half_plus[1]);
      else if (!one_minus.empty()) regime = riffle::RegimeSpec::one_minus(one_minus[0], one_minus[1]);
      else if (opt_fixed->count() > 0) regime = riffle::RegimeSpec::fixed(fixed_p);
      else throw std::invalid_argument("converge: give one of --fixed-p, --half-plus, --one-minus");
      const auto conv_mode = mode == "mc" ? riffle::ConvergenceMode::montecarlo(cfg) : riffle::ConvergenceMode::exact();
      text = render(converge(regime, n_list, conv_mode, target == "cjn" ? riffle::LawTarget::cjn : riffle::LawTarget::x), fmt);
    } else if (thr->parsed()) text = render(thresholds(ps), fmt);
    else if (idn->parsed()) text = render(identity(n, p), fmt);
    else if (rif->parsed()) text = render(rif_limit(one_minus[0], one_minus[1], n_list), fmt);
    else if (kp->parsed()) text = render(kpp(m1, m2), fmt);
    else if (dens->parsed()) text = render(density(law_name, param, from, to, points), fmt);
  } catch (const riffle::guard_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (out.path.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out.path);
    if (!file) {
      std::cerr << "error: cannot open " << out.path << '\n';
      return 1;
    }
    file << text;
  }
  return 0;
}
