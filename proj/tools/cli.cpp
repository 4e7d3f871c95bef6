#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "lastsuccess/bounds.hpp"
#include "lastsuccess/eval.hpp"
#include "lastsuccess/instances.hpp"
#include "lastsuccess/policies.hpp"
#include "lastsuccess/serialization.hpp"

namespace lastsuccess::cli {

namespace {

using nlohmann::json;

std::string fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

json number_or_inf(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

const std::vector<std::string> kFamilies = {"one-then-zeros", "one-then-uniform", "secretary",
                                            "staircase",      "two-trial",        "iid",
                                            "random-odds"};

const std::vector<std::string> kEvalPolicies = {"bruss", "fls", "asls", "flsr",
                                                "estimated-bruss", "multi-sample"};
const std::vector<std::string> kSamplePolicies = {"fls", "asls", "flsr", "estimated-bruss",
                                                  "multi-sample"};

struct GenArgs {
  std::string family;
  std::size_t n = 0;
  std::size_t j = 0;
  double p = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double r = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

struct PolicyArgs {
  std::string policy;
  double alpha0 = 0.0;
  double alpha1 = 1.0;
  std::optional<double> epsilon;

  PolicySpec spec() const {
    PolicySpec s;
    s.kind = parse_policy_kind(policy);
    s.estimation = {alpha0, alpha1};
    s.epsilon = epsilon;
    return s;
  }
};

struct EvalArgs {
  std::string instance;
  PolicyArgs policy;
  std::size_t m = 1;
};

struct McArgs {
  std::string instance;
  PolicyArgs policy;
  std::size_t m = 1;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string csv;
};

struct SweepArgs {
  std::string policy;
  std::vector<double> r_grid;
  std::size_t n = 0;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::string csv;
};

struct BoundsArgs {
  double r_max = 1.0;
  double step = 0.01;
  std::string csv;
};

struct CurveArgs {
  std::string instance;
  std::vector<std::size_t> m_list;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string csv;
};

void add_policy_options(CLI::App* cmd, PolicyArgs& a, const std::vector<std::string>& names) {
  cmd->add_option("--policy", a.policy, "Policy name")->required()->check(CLI::IsMember(names));
  cmd->add_option("--alpha0", a.alpha0, "estimated-bruss: estimate for a sample 0")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--alpha1", a.alpha1, "estimated-bruss: estimate for a sample 1")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--epsilon", a.epsilon, "multi-sample: margin over 1/e (default (e/m)^(1/4))");
}

// Writes to `path`, or to `fallback` when the path is empty.
template <typename Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  fn(f);
}

Instance make_family(const GenArgs& a) {
  if (a.family == "one-then-zeros") return one_then_zeros(a.n);
  if (a.family == "one-then-uniform") return one_then_uniform(a.n);
  if (a.family == "secretary") return secretary(a.n);
  if (a.family == "staircase") return staircase(a.n, a.j);
  if (a.family == "two-trial") return two_trial(a.p1, a.p2);
  if (a.family == "iid") return iid_instance(a.n, a.p);
  if (a.family == "random-odds") return random_with_total_odds(a.n, a.r, a.seed);
  throw std::invalid_argument("unknown family " + a.family);
}

void cmd_gen(const GenArgs& a, std::ostream& out) {
  const auto inst = make_family(a);
  if (a.out.empty()) {
    out << instance_to_json(inst) << '\n';
  } else {
    save_instance(inst, a.out);
  }
}

// Theorem curve reported next to an evaluation: the policy's guarantee when
// one is known, otherwise the full-information optimum as an upper bound.
std::pair<double, std::string> matching_bound(PolicyKind kind, bool bruss, std::size_t m,
                                              double r) {
  if (bruss) return {opt_bound(r), "upper"};
  switch (kind) {
    case PolicyKind::asls: return {asls_lower_bound(r), "lower"};
    case PolicyKind::flsr: return {flsr_lower_bound(r), "lower"};
    case PolicyKind::multi_sample: return {multi_sample_guarantee(m, r), "lower"};
    default: return {opt_bound(r), "upper"};
  }
}

json result_json(const std::string& policy, const EvalResult& res, double r,
                 const std::pair<double, std::string>& bound) {
  json j;
  j["policy"] = policy;
  j["method"] = std::string(to_string(res.method));
  j["estimate"] = res.estimate;
  j["ci_halfwidth"] = res.ci_halfwidth;
  j["R"] = number_or_inf(r);
  j["bound"] = bound.first;
  j["bound_kind"] = bound.second;
  return j;
}

void cmd_eval(const EvalArgs& a, std::ostream& out) {
  const auto inst = load_instance(a.instance);
  const auto summary = odds_summary(inst);
  const bool bruss = a.policy.policy == "bruss";
  EvalResult res;
  PolicySpec spec;
  if (bruss) {
    res = policy_win_prob_exact(inst, ThresholdDistribution::point(bruss_threshold(summary)));
  } else {
    spec = a.policy.spec();
    switch (spec.kind) {
      case PolicyKind::fls: res = policy_win_prob_exact(inst, fls_threshold_distribution(inst)); break;
      case PolicyKind::asls: res = policy_win_prob_exact(inst, asls_threshold_distribution(inst)); break;
      case PolicyKind::flsr:
        res = policy_win_prob_exact(inst, flsr_threshold_distribution_exact(inst));
        break;
      case PolicyKind::estimated_bruss:
      case PolicyKind::multi_sample: {
        const std::size_t m = spec.kind == PolicyKind::multi_sample ? a.m : 1;
        if (inst.size() * m > kBruteForceMaxBits) {
          throw std::invalid_argument("exact evaluation of " + a.policy.policy +
                                      " needs n*m <= 22; use the mc subcommand");
        }
        res = brute_force_win_prob(inst, spec, m);
        break;
      }
    }
  }
  auto j = result_json(a.policy.policy, res, summary.total,
                       matching_bound(spec.kind, bruss, a.m, summary.total));
  if (!bruss && spec.kind == PolicyKind::multi_sample) {
    j["m"] = a.m;
    j["epsilon"] = spec.multi_sample_params(a.m).epsilon;
  }
  out << j.dump() << '\n';
}

void cmd_mc(const McArgs& a, std::ostream& out) {
  const auto inst = load_instance(a.instance);
  const auto summary = odds_summary(inst);
  const auto spec = a.policy.spec();
  const auto res = monte_carlo_win_prob(inst, spec, {a.m, a.replicates, a.seed, a.threads});
  auto j = result_json(a.policy.policy, res, summary.total,
                       matching_bound(spec.kind, false, a.m, summary.total));
  j["m"] = a.m;
  j["replicates"] = res.replicates;
  j["seed"] = res.seed;
  if (spec.kind == PolicyKind::multi_sample) j["epsilon"] = spec.multi_sample_params(a.m).epsilon;
  out << j.dump() << '\n';

  if (!a.csv.empty()) {
    const bool fresh = !std::filesystem::exists(a.csv) || std::filesystem::file_size(a.csv) == 0;
    std::ofstream f(a.csv, std::ios::app);
    if (!f) throw std::runtime_error("cannot open " + a.csv);
    if (fresh) f << "policy,m,replicates,seed,estimate,ci_halfwidth,R\n";
    f << a.policy.policy << ',' << a.m << ',' << res.replicates << ',' << res.seed << ','
      << fmt(res.estimate) << ',' << fmt(res.ci_halfwidth) << ',' << fmt(summary.total) << '\n';
  }
}

void cmd_sweep(const SweepArgs& a, std::ostream& out) {
  if (a.n == 0) throw std::invalid_argument("--n must be positive");
  const auto kind = parse_policy_kind(a.policy);
  with_output(a.csv, out, [&](std::ostream& os) {
    os << "policy,n,R,instance_seed,exact_winprob,lower_bound,upper_bound\n";
    for (std::size_t g = 0; g < a.r_grid.size(); ++g) {
      for (std::size_t t = 0; t < a.trials; ++t) {
        const auto iseed = derive_seed(a.seed, g * a.trials + t);
        const auto inst = random_with_total_odds(a.n, a.r_grid[g], iseed);
        const double r = odds_summary(inst).total;
        ThresholdDistribution dist;
        double lower = 0.0;
        switch (kind) {
          case PolicyKind::fls: dist = fls_threshold_distribution(inst); break;
          case PolicyKind::asls:
            dist = asls_threshold_distribution(inst);
            lower = asls_lower_bound(r);
            break;
          case PolicyKind::flsr:
            dist = flsr_threshold_distribution_exact(inst);
            lower = flsr_lower_bound(r);
            break;
          default: throw std::invalid_argument("sweep supports fls, asls and flsr");
        }
        const double exact = policy_win_prob_exact(inst, dist).estimate;
        os << a.policy << ',' << a.n << ',' << fmt(r) << ',' << iseed << ',' << fmt(exact) << ','
           << fmt(lower) << ',' << fmt(std::min(opt_bound(r), 0.25)) << '\n';
      }
    }
  });
}

void cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  const auto rows = figure2_data(a.step, a.r_max);
  with_output(a.csv, out, [&](std::ostream& os) {
    os << "R,asls_lower_bound,upper_bound,flsr_lower_bound\n";
    for (const auto& row : rows) {
      os << fmt(row.r_value) << ',' << fmt(row.asls_bound) << ',' << fmt(row.upper_bound) << ','
         << fmt(flsr_lower_bound(row.r_value)) << '\n';
    }
  });
}

void cmd_multisample_curve(const CurveArgs& a, std::ostream& out) {
  const auto inst = load_instance(a.instance);
  const double r = odds_summary(inst).total;
  PolicySpec spec{PolicyKind::multi_sample, {}, std::nullopt};
  with_output(a.csv, out, [&](std::ostream& os) {
    os << "m,epsilon,estimate,ci_halfwidth,guarantee\n";
    for (auto m : a.m_list) {
      if (m == 0) throw std::invalid_argument("m values must be positive");
      const auto res = monte_carlo_win_prob(inst, spec, {m, a.replicates, a.seed, a.threads});
      os << m << ',' << fmt(default_epsilon(m)) << ',' << fmt(res.estimate) << ','
         << fmt(res.ci_halfwidth) << ',' << fmt(multi_sample_guarantee(m, r)) << '\n';
    }
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stopping policies for the last-success problem with samples", "lastsuccess"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write an instance JSON for a named family");
  g->add_option("family", gen.family, "Instance family")->required()->check(CLI::IsMember(kFamilies));
  g->add_option("--n", gen.n, "Number of trials");
  g->add_option("--j", gen.j, "staircase: number of leading certain successes");
  g->add_option("--p", gen.p, "iid: common success probability")->check(CLI::Range(0.0, 1.0));
  g->add_option("--p1", gen.p1, "two-trial: p_1")->check(CLI::Range(0.0, 1.0));
  g->add_option("--p2", gen.p2, "two-trial: p_2")->check(CLI::Range(0.0, 1.0));
  g->add_option("--r", gen.r, "random-odds: target sum of odds");
  g->add_option("--seed", gen.seed, "random-odds: seed");
  g->add_option("--out", gen.out, "Output path (stdout when omitted)");

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "Exact winning probability of a policy");
  e->add_option("--instance", ev.instance, "Instance JSON")->required();
  add_policy_options(e, ev.policy, kEvalPolicies);
  e->add_option("--m", ev.m, "multi-sample: samples per trial")->check(CLI::PositiveNumber);

  McArgs mc;
  auto* c = app.add_subcommand("mc", "Monte Carlo winning probability of a sample-based policy");
  c->add_option("--instance", mc.instance, "Instance JSON")->required();
  add_policy_options(c, mc.policy, kSamplePolicies);
  c->add_option("--m", mc.m, "Samples per trial")->check(CLI::PositiveNumber);
  c->add_option("--replicates", mc.replicates, "Number of replicates")
      ->required()
      ->check(CLI::PositiveNumber);
  c->add_option("--seed", mc.seed, "Master seed")->required();
  c->add_option("--threads", mc.threads, "Worker threads (0 = all cores)");
  c->add_option("--csv", mc.csv, "Append a result row to this CSV file");

  SweepArgs sw;
  auto* s = app.add_subcommand("sweep", "Exact evaluation over random instances on an R grid");
  s->add_option("--policy", sw.policy, "Single-sample policy")
      ->required()
      ->check(CLI::IsMember({"fls", "asls", "flsr"}));
  s->add_option("--r-grid", sw.r_grid, "Comma-separated sums of odds")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  s->add_option("--n", sw.n, "Trials per instance")->required()->check(CLI::PositiveNumber);
  s->add_option("--trials-per-point", sw.trials, "Random instances per grid point")
      ->check(CLI::PositiveNumber);
  s->add_option("--seed", sw.seed, "Master seed")->required();
  s->add_option("--csv", sw.csv, "Output CSV (stdout when omitted)");

  BoundsArgs bd;
  auto* b = app.add_subcommand("bounds", "Tabulate the guarantee curves against R");
  b->add_option("--r-max", bd.r_max, "Largest R")->check(CLI::PositiveNumber);
  b->add_option("--step", bd.step, "Grid step")->check(CLI::PositiveNumber);
  b->add_option("--csv", bd.csv, "Output CSV (stdout when omitted)");

  CurveArgs cv;
  auto* mcurve = app.add_subcommand("multisample-curve",
                                    "Multi-sample policy estimate and guarantee against m");
  mcurve->add_option("--instance", cv.instance, "Instance JSON")->required();
  mcurve->add_option("--m-list", cv.m_list, "Comma-separated sample counts")
      ->required()
      ->delimiter(',');
  mcurve->add_option("--replicates", cv.replicates, "Replicates per m")
      ->required()
      ->check(CLI::PositiveNumber);
  mcurve->add_option("--seed", cv.seed, "Master seed")->required();
  mcurve->add_option("--threads", cv.threads, "Worker threads (0 = all cores)");
  mcurve->add_option("--csv", cv.csv, "Output CSV (stdout when omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex, out, err);
  }

  try {
    if (*g) cmd_gen(gen, out);
    if (*e) cmd_eval(ev, out);
    if (*c) cmd_mc(mc, out);
    if (*s) cmd_sweep(sw, out);
    if (*b) cmd_bounds(bd, out);
    if (*mcurve) cmd_multisample_curve(cv, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace lastsuccess::cli
