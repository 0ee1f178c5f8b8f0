#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "surd/cf.hpp"
#include "surd/errors.hpp"
#include "surd/factor.hpp"
#include "surd/regulator.hpp"
#include "surd/two_squares.hpp"

namespace surd::cli {

using nlohmann::json;

json to_json(const OutputEnvelope& e) {
  return json{{"command", e.command}, {"input", e.input},       {"status", e.status},
              {"payload", e.payload}, {"counters", e.counters}, {"version", e.version}};
}

OutputEnvelope envelope_from_json(const json& j) {
  OutputEnvelope e;
  e.command = j.at("command").get<std::string>();
  e.input = j.at("input").get<std::string>();
  e.status = j.at("status").get<std::string>();
  e.payload = j.at("payload");
  e.counters = j.at("counters");
  e.version = j.at("version").get<std::string>();
  return e;
}

namespace {

constexpr std::size_t kDisplayQuotients = 1000;
// The O(D) lattice sum is skipped beyond this discriminant.
constexpr unsigned long kLatticeLimit = 2'000'000;

struct Options {
  std::string n_text;
  bool json = false;
  std::string out;
  std::string config;
  std::optional<std::size_t> limit;
  std::optional<long> prec;
  std::string method = "both";
  std::string strategy = "auto";
  std::optional<std::size_t> budget;
  unsigned threads = 1;
  bool deterministic = false;
  bool analytic = false;
  unsigned long trial_bound = 3;
};

struct Outcome {
  OutputEnvelope envelope;
  std::string text;
  int exit_code = kExitOk;
};

json real(const HighPrecReal& x, int digits = 0) {
  return json{{"value", digits > 0 ? x.to_string(digits) : x.to_string()}, {"precision", x.precision()}};
}

json strings(const std::vector<BigInt>& v) {
  json out = json::array();
  for (const BigInt& x : v) out.push_back(x.get_str());
  return out;
}

BigInt parse_n(const std::string& text) {
  const BigInt n = parse_bigint(text);
  if (n < 2) throw InvalidInput("N must be at least 2, got " + text);
  return n;
}

Precision precision_for(const Options& o, const BigInt& n) {
  if (!o.prec) return default_precision(n);
  if (*o.prec < 2) throw InvalidInput("--prec must be at least 2 bits, got " + std::to_string(*o.prec));
  return static_cast<Precision>(*o.prec);
}

Outcome cmd_expand(const Options& o) {
  const BigInt n = parse_n(o.n_text);
  const PeriodSummary p = expand_period(n, o.limit);
  const CentreInfo centre = walk_to_centre(n, o.limit);
  Outcome out;
  json quotients = json::array();
  for (std::size_t i = 0; i < p.quotients.size() && i < kDisplayQuotients; ++i) {
    quotients.push_back(p.quotients[i].get_str());
  }
  std::ostringstream digest;
  digest << std::hex << p.quotients_digest;
  out.envelope.payload = json{
      {"a0", p.a0.get_str()},
      {"tau", p.tau},
      {"parity", p.parity == Parity::odd ? "odd" : "even"},
      {"ell", p.ell},
      {"quotients", quotients},
      {"quotients_truncated", p.tau > kDisplayQuotients},
      {"quotients_digest", digest.str()},
      {"midpoint",
       json{{"index", centre.ell},
            {"c", centre.term.c.get_str()},
            {"r", centre.term.r.get_str()},
            {"delta", centre.term.delta.get_str()},
            {"omega", centre.term.omega.get_str()}}},
  };
  out.envelope.counters = json{{"cf_steps", p.tau}};
  std::ostringstream text;
  text << "sqrt(" << n << ") = [" << p.a0 << ";";
  for (std::size_t i = 0; i < p.quotients.size() && i < kDisplayQuotients; ++i) {
    text << (i == 0 ? " " : ", ") << p.quotients[i];
  }
  if (p.tau > kDisplayQuotients) text << ", ...";
  text << "]\n"
       << "tau = " << p.tau << " (" << (p.parity == Parity::odd ? "odd" : "even") << ")\n"
       << "centre: m = " << centre.ell << ", c = " << centre.term.c << ", r = " << centre.term.r
       << ", Delta = " << centre.term.delta << "\n";
  out.text = text.str();
  return out;
}

Outcome cmd_two_squares(const Options& o) {
  const BigInt n = parse_n(o.n_text);
  Outcome out;
  try {
    const TwoSquares rep = legendre_two_squares(n, o.limit);
    out.envelope.payload = json{{"x", rep.x.get_str()}, {"y", rep.y.get_str()}};
    std::ostringstream text;
    text << n << " = " << rep.x << "^2 + " << rep.y << "^2\n";
    try {
      const BigInt s = sqrt_minus_one(rep);
      out.envelope.payload["sqrt_minus_one"] = s.get_str();
      text << "sqrt(-1) mod " << n << " = " << s << "\n";
    } catch (const NonInvertible& e) {
      out.envelope.payload["shared_factor"] = e.factor().get_str();
      text << "y shares the factor " << e.factor() << " with N\n";
    }
    out.text = text.str();
  } catch (const EvenPeriod& e) {
    out.envelope.status = "no_split";
    out.envelope.payload = json{{"tau", e.tau()}, {"note", "period even; use factor"}};
    out.text = "period even; use factor (tau = " + std::to_string(e.tau()) + ")\n";
    out.exit_code = kExitNoSplit;
  }
  return out;
}

Outcome cmd_regulator(const Options& o) {
  const BigInt n = parse_n(o.n_text);
  const Precision prec = precision_for(o, n);
  if (o.method != "cf" && o.method != "analytic" && o.method != "both") {
    throw InvalidInput("--method must be cf, analytic or both");
  }
  Outcome out;
  std::ostringstream text;
  json payload{{"method", o.method}};
  std::optional<RegulatorResult> reg;
  if (o.method != "analytic") {
    reg = regulator_from_cf(n, prec, o.limit);
    payload["r_star"] = real(reg->r_star);
    payload["cycle_length"] = real(reg->cycle_length);
    payload["tau"] = reg->tau;
    payload["unit_norm"] = reg->unit_norm;
    out.envelope.counters["cf_steps"] = reg->tau;
    text << "R* = " << reg->r_star.to_string(15) << "  (tau = " << reg->tau << ", unit norm "
         << (reg->unit_norm > 0 ? "+1" : "-1") << ")\n";
  }
  if (o.method != "cf") {
    const BigInt d = discriminant_for(n);
    payload["d"] = d.get_str();
    if (!is_valid_discriminant(d)) {
      payload["analytic_note"] = "N is not square-free; D is not a fundamental discriminant";
      text << "D = " << d << " is not a fundamental discriminant; analytic hR skipped\n";
    } else {
      const AnalyticHR fast = hr_fast_series(d, prec);
      payload["hr_fast"] = real(fast.hr);
      payload["hr_fast_terms"] = fast.terms_used;
      out.envelope.counters["series_terms"] = fast.terms_used;
      text << "hR (D = " << d << ", series) = " << fast.hr.to_string(15) << "  (" << fast.terms_used
           << " terms)\n";
      if (d <= kLatticeLimit) {
        const AnalyticHR lattice = hr_lattice_sum(d, prec);
        payload["hr_lattice"] = real(lattice.hr);
        text << "hR (D = " << d << ", sine sum) = " << lattice.hr.to_string(15) << "\n";
      }
      if (reg) {
        const Reconciliation rc = reconcile(fast, *reg, ReconcileOptions{1e-4, mod(n, 4) == 1});
        payload["reconcile"] = json{{"h", rc.numerator},
                                    {"multiplier", rc.multiplier},
                                    {"ratio", std::to_string(rc.ratio)},
                                    {"distance", std::to_string(rc.distance)},
                                    {"consistent", rc.consistent}};
        text << "reconcile: " << rc.multiplier << " * hR / R* = " << rc.multiplier * rc.ratio << " -> h = "
             << rc.numerator << (rc.consistent ? " (consistent)" : " (inconsistent)") << "\n";
      }
    }
  }
  out.envelope.payload = std::move(payload);
  out.text = text.str();
  return out;
}

json witness_json(const std::map<std::string, std::string>& w) {
  json out = json::object();
  for (const auto& [k, v] : w) out[k] = v;
  return out;
}

Outcome cmd_factor(const Options& o) {
  const BigInt n = parse_n(o.n_text);
  FactorConfig config;
  config.strategy = parse_strategy(o.strategy);
  config.budget = o.budget;
  config.threads = o.threads;
  config.deterministic = o.deterministic;
  config.analytic_r_star = o.analytic;
  config.trial_bound = o.trial_bound;
  if (o.prec) config.prec = precision_for(o, n);
  Outcome out;
  try {
    const FactorResult r = factor_auto(n, config);
    out.envelope.payload =
        json{{"factors", strings(r.factors)}, {"method", to_string(r.method)}, {"witness", witness_json(r.witness)}};
    out.envelope.counters = json{{"cf_steps", r.steps.cf_steps},
                                 {"compositions", r.steps.compositions},
                                 {"rho_steps", r.steps.rho_steps},
                                 {"reduction_steps", r.steps.reduction_steps}};
    out.text = n.get_str() + " = " + r.factors[0].get_str() + " x " + r.factors[1].get_str() +
               "  (method: " + to_string(r.method) + ")\n";
  } catch (const NoSplit& e) {
    out.envelope.status = "no_split";
    out.envelope.payload = json{{"message", e.what()}, {"witness", witness_json(e.witness())}};
    out.text = n.get_str() + ": no split (" + e.what() + ")\n";
    if (auto it = e.witness().find("note"); it != e.witness().end()) out.text += "note: " + it->second + "\n";
    out.exit_code = kExitNoSplit;
  }
  return out;
}

int exit_code_for(const Error& e) {
  const std::string& k = e.kind();
  if (k == "invalid_input" || k == "perfect_square" || k == "domain_error") return kExitInvalid;
  return kExitNoSplit;
}

// key=value lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read config file " + path);
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (eq == std::string::npos) {
      if (!trim(line).empty()) throw InvalidInput("config line without '=': " + line);
      continue;
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

std::optional<std::string> config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

}  // namespace

CliRun run(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Continued-fraction factoring and regulator tool", "surd"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto common = [&](CLI::App* sub) {
    sub->add_option("N", o.n_text, "Integer to work on")->required();
    sub->add_flag("--json", o.json, "Print the JSON envelope");
    sub->add_option("--out", o.out, "Also write the JSON envelope to this file");
    sub->add_option("--config", o.config, "key=value file mirroring the flags; flags win");
  };
  CLI::App* expand = app.add_subcommand("expand", "Expand sqrt(N) over one period");
  common(expand);
  expand->add_option("--limit", o.limit, "Maximum expansion steps");
  CLI::App* two = app.add_subcommand("two-squares", "N = x^2 + y^2 from an odd period");
  common(two);
  two->add_option("--limit", o.limit, "Maximum expansion steps");
  CLI::App* reg = app.add_subcommand("regulator", "R* from the expansion and hR from Dirichlet's formula");
  common(reg);
  reg->add_option("--prec", o.prec, "Working precision in bits (default bitlen(N) + 64)");
  reg->add_option("--method", o.method, "cf, analytic or both")->check(CLI::IsMember({"cf", "analytic", "both"}));
  reg->add_option("--limit", o.limit, "Maximum expansion steps");
  CLI::App* fac = app.add_subcommand("factor", "Split N");
  common(fac);
  fac->add_option("--strategy", o.strategy, "auto, direct, infrastructure, shanks or fermat")
      ->check(CLI::IsMember({"auto", "direct", "infrastructure", "shanks", "fermat"}));
  fac->add_option("--budget", o.budget, "Expansion steps per pathway");
  fac->add_option("--threads", o.threads, "Threads for racing pathways")->check(CLI::Range(1U, 256U));
  fac->add_flag("--deterministic", o.deterministic, "Single thread, fixed order");
  fac->add_flag("--analytic", o.analytic, "Take R* from the analytic hR");
  fac->add_option("--trial-bound", o.trial_bound, "Trial-divide by primes below this bound");
  fac->add_option("--prec", o.prec, "Working precision in bits");

  CliRun result;
  std::ostringstream out;
  std::ostringstream err;

  // Config entries go in front of the user's own flags so the latter win.
  std::vector<std::string> argv = args;
  try {
    if (auto path = config_path(args); path && !argv.empty()) {
      CLI::App* sub = nullptr;
      for (CLI::App* s : {expand, two, reg, fac}) {
        if (s->get_name() == argv[0]) sub = s;
      }
      if (sub != nullptr) {
        std::vector<std::string> injected;
        for (const auto& [key, value] : read_config(*path)) {
          const CLI::Option* opt = sub->get_option_no_throw("--" + key);
          if (opt == nullptr || key == "config") continue;
          if (opt->get_type_size() == 0) {
            if (value == "true" || value == "1") injected.push_back("--" + key);
          } else {
            injected.push_back("--" + key + "=" + value);
          }
        }
        argv.insert(argv.begin() + 1, injected.begin(), injected.end());
      }
    }
  } catch (const Error& e) {
    result.exit_code = kExitInvalid;
    result.err = std::string("error: ") + e.what() + "\n";
    return result;
  }

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    result.exit_code = code == 0 ? kExitOk : kExitInvalid;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Outcome outcome;
  outcome.envelope.status = "ok";
  try {
    if (chosen == expand) {
      outcome = cmd_expand(o);
    } else if (chosen == two) {
      outcome = cmd_two_squares(o);
    } else if (chosen == reg) {
      outcome = cmd_regulator(o);
    } else {
      outcome = cmd_factor(o);
    }
    if (outcome.envelope.status.empty()) outcome.envelope.status = "ok";
  } catch (const Error& e) {
    outcome.envelope.status = "error";
    outcome.envelope.payload = json{{"kind", e.kind()}, {"message", e.what()}};
    if (const auto* sq = dynamic_cast<const PerfectSquare*>(&e)) {
      outcome.envelope.payload["root"] = sq->root().get_str();
    }
    outcome.exit_code = exit_code_for(e);
    outcome.text.clear();
    err << "error: " << e.what() << "\n";
  }
  outcome.envelope.command = chosen->get_name();
  outcome.envelope.input = o.n_text;
  outcome.envelope.version = kVersion;

  const json doc = to_json(outcome.envelope);
  if (o.json) {
    out << doc.dump(2) << "\n";
  } else {
    out << outcome.text;
  }
  if (!o.out.empty()) {
    std::ofstream file(o.out);
    if (!file) {
      err << "error: cannot write " << o.out << "\n";
      outcome.exit_code = kExitInvalid;
    } else {
      file << doc.dump(2) << "\n";
    }
  }
  result.exit_code = outcome.exit_code;
  result.out = out.str();
  result.err = err.str();
  result.envelope = std::move(outcome.envelope);
  return result;
}

}  // namespace surd::cli
