#include "banachlab/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "banachlab/calderon.hpp"
#include "banachlab/duality.hpp"
#include "banachlab/errors.hpp"
#include "banachlab/experiments.hpp"
#include "banachlab/gauge.hpp"
#include "banachlab/norm.hpp"
#include "banachlab/parallel.hpp"
#include "banachlab/report.hpp"
#include "banachlab/schlumprecht.hpp"
#include "banachlab/space.hpp"

namespace banachlab::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = "banachlab 1.0.0";

double parse_extended(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ArgumentError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ArgumentError("not a number: '" + text + "'");
  return v;
}

Json exponent_json(double p) { return p == kInf ? Json("inf") : Json(p); }

Json tolerance_json(const EvalOptions& o) {
  return Json{{"closed_form_tol", o.closed_form_tol},
              {"dp_tol", o.dp_tol},
              {"iterative_tol", o.iterative_tol},
              {"dp_cap", o.dp_cap},
              {"budget", o.budget}};
}

SeqVector nonempty_vector(const std::string& text) {
  auto v = parse_vector(text);
  if (v.empty()) throw ArgumentError("vector is empty or zero");
  return v;
}

// Typed access to the experiment config with defaults.
class Config {
 public:
  explicit Config(Json json) : json_(std::move(json)) {
    if (!json_.is_object()) throw ArgumentError("config must be a JSON object");
  }

  const Json& json() const { return json_; }
  bool has(const char* key) const { return json_.contains(key); }

  double real(const char* key, double fallback) const {
    if (!has(key)) return fallback;
    const auto& v = json_.at(key);
    if (v.is_string()) return parse_extended(v.get<std::string>());
    if (!v.is_number()) throw ArgumentError(std::string("config field '") + key + "' must be a number");
    return v.get<double>();
  }

  std::size_t count(const char* key, std::size_t fallback) const {
    if (!has(key)) return fallback;
    const auto& v = json_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ArgumentError(std::string("config field '") + key + "' must be a nonnegative integer");
    }
    return v.get<std::size_t>();
  }

  std::string text(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const auto& v = json_.at(key);
    if (!v.is_string()) throw ArgumentError(std::string("config field '") + key + "' must be a string");
    return v.get<std::string>();
  }

  std::vector<double> reals(const char* key, std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    const auto& v = json_.at(key);
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) throw ArgumentError(std::string("config field '") + key + "' must be a list of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ArgumentError(std::string("config field '") + key + "' must be a list of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  BlockSequence vectors(const char* key) const {
    const auto& v = json_.at(key);
    if (!v.is_array()) throw ArgumentError(std::string("config field '") + key + "' must be a list of vectors");
    BlockSequence out;
    for (const auto& e : v) {
      if (!e.is_string()) throw ArgumentError(std::string("config field '") + key + "' must hold vector strings");
      out.push_back(nonempty_vector(e.get<std::string>()));
    }
    return out;
  }

  EvalOptions tolerances() const {
    EvalOptions o;
    if (!has("tolerances")) return o;
    const Config t(json_.at("tolerances"));
    o.closed_form_tol = t.real("closed_form_tol", o.closed_form_tol);
    o.dp_tol = t.real("dp_tol", o.dp_tol);
    o.iterative_tol = t.real("iterative_tol", o.iterative_tol);
    o.dp_cap = t.count("dp_cap", o.dp_cap);
    o.budget = t.count("budget", o.budget);
    if (!(o.iterative_tol > 0.0 && o.closed_form_tol >= 0.0 && o.dp_tol >= 0.0)) {
      throw DomainError("tolerances must be positive");
    }
    return o;
  }

 private:
  Json json_;
};

struct ExperimentContext {
  Config config;
  SpacePtr space;
  GaugeFunction gauge;
  std::uint64_t seed;
  EvalOptions options;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

BlockSequence config_blocks(const ExperimentContext& ctx, std::size_t count, const std::string& default_kind) {
  const std::string kind = ctx.config.text("blocks", default_kind);
  if (kind == "basis") return basis_sequence(count);
  if (kind == "l1avg") {
    const std::size_t m = ctx.config.count("m", 4);
    require(m >= 1, "m must be >= 1");
    return l1_average_blocks(m, count, ctx.config.count("offset", 0), ctx.space, ctx.options);
  }
  throw ArgumentError("blocks must be 'basis' or 'l1avg'");
}

ExperimentReport experiment_summing(const ExperimentContext& ctx) {
  const std::size_t n_max = ctx.config.count("n_max", 10);
  require(n_max >= 1, "n_max must be >= 1");
  if (!ctx.config.has("p") && !ctx.config.has("r")) {
    return summing_norm_table(n_max, ctx.gauge, ctx.options.dp_cap);
  }
  const double p = ctx.config.real("p", 1.0);
  const double r = ctx.config.real("r", kInf);
  require(p >= 1.0 && r > p, "summing needs 1 <= p < r <= inf");
  ExperimentReport report;
  report.name = "summing";
  report.columns = {"n", "expected", "computed", "difference"};
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto s = spr_summing_identity(n, p, r, ctx.gauge, ctx.options);
    report.add_row({static_cast<double>(n), s.expected, s.computed, s.difference});
  }
  report.metadata["p"] = exponent_json(p);
  report.metadata["r"] = exponent_json(r);
  return report;
}

ExperimentReport experiment_block_growth(const ExperimentContext& ctx) {
  const double p = ctx.config.real("p", 1.0);
  require(p >= 1.0, "p must be >= 1");
  const auto blocks = config_blocks(ctx, ctx.config.count("count", 8), "l1avg");
  return block_sum_growth(ctx.space, p, blocks, ctx.options);
}

ExperimentReport experiment_vn(const ExperimentContext& ctx) {
  const double p = ctx.config.real("p", 1.0);
  require(p >= 1.0, "p must be >= 1");
  const std::size_t n_max = ctx.config.count("n_max", 4);
  require(n_max < 16, "n_max must be < 16");
  const std::size_t needed = std::size_t{1} << (n_max + 1);
  return vn_averages(ctx.space, p, config_blocks(ctx, ctx.config.count("count", needed), "basis"), n_max,
                     ctx.options);
}

ExperimentReport experiment_beta(const ExperimentContext& ctx) {
  const double p = ctx.config.real("p", 1.0);
  require(p >= 1.0, "p must be >= 1");
  const std::size_t n_max = ctx.config.count("n_max", 4);
  const std::size_t budget = ctx.config.count("budget", 50);
  require(n_max >= 1, "n_max must be >= 1");
  ExperimentReport report;
  report.name = "beta";
  report.columns = {"n", "lower", "upper", "best_found"};
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto b = beta_estimate(ctx.space, p, ctx.gauge, n, budget, ctx.seed, ctx.options);
    report.add_row({static_cast<double>(n), b.lower, b.upper, b.best_found});
  }
  report.metadata["p"] = p;
  report.metadata["budget"] = budget;
  report.metadata["side"] = "best_found is an upper estimate of beta_n";
  return report;
}

ExperimentReport experiment_projection(const ExperimentContext& ctx) {
  BlockSequence w, g;
  if (ctx.config.has("w") || ctx.config.has("g")) {
    w = ctx.config.vectors("w");
    g = ctx.config.vectors("g");
  } else {
    w = config_blocks(ctx, ctx.config.count("count", 4), "l1avg");
    for (const auto& wn : w) {
      double total = 0.0;
      for (const auto& [i, v] : wn.entries()) total += v;
      SeqVector gn;
      for (const auto& [i, v] : wn.entries()) gn.set(i, 1.0 / total);
      g.push_back(gn);
    }
  }
  auto result = projection_bound(ctx.space, w, g, ctx.config.count("samples", 200), ctx.seed, ctx.options);
  result.report.metadata["side"] = "norm_lower is a lower estimate of the projection norm";
  return result.report;
}

ExperimentReport experiment_distortion(const ExperimentContext& ctx) {
  FunctionalFamily family;
  family.r = ctx.config.real("r", 4.0);
  family.members = ctx.config.has("gamma") ? ctx.config.vectors("gamma") : BlockSequence{parse_vector("1,1,1,1")};
  const BlockSequence z = ctx.config.has("z") ? ctx.config.vectors("z") : basis_sequence(4);
  const auto u = unconditionality_ratio(family, z);
  ExperimentReport report;
  report.name = "distortion";
  report.columns = {"plus", "minus", "ratio"};
  report.add_row({u.plus, u.minus, u.ratio});
  report.metadata["r"] = family.r;
  report.metadata["family_size"] = family.members.size();
  return report;
}

ExperimentReport experiment_moduli(const ExperimentContext& ctx) {
  ModulusOptions mopts;
  mopts.dim = ctx.config.count("dim", mopts.dim);
  mopts.seed = ctx.seed;
  mopts.refine_steps = ctx.config.count("refine_steps", mopts.refine_steps);
  const std::size_t samples = ctx.config.count("samples", 10000);
  ExperimentReport report;
  report.name = "moduli";
  report.columns = {"modulus", "parameter", "estimate", "side"};
  for (double eps : ctx.config.reals("eps", {1.0})) {
    report.add_row({std::string("convexity"), eps,
                    modulus_convexity_estimate(ctx.space, eps, samples, mopts, ctx.options), std::string("upper")});
  }
  for (double tau : ctx.config.reals("tau", {1.0})) {
    report.add_row({std::string("smoothness"), tau,
                    modulus_smoothness_estimate(ctx.space, tau, samples, mopts, ctx.options), std::string("lower")});
  }
  report.metadata["samples"] = samples;
  report.metadata["dim"] = mopts.dim;
  report.metadata["refine_steps"] = mopts.refine_steps;
  return report;
}

ExperimentReport experiment_classx(const ExperimentContext& ctx) {
  const double p = ctx.config.real("p", 1.0);
  const double r = ctx.config.real("r", kInf);
  ClassCheckOptions copts;
  copts.dim = ctx.config.count("dim", copts.dim);
  copts.tuple = ctx.config.count("tuple", copts.tuple);
  copts.seed = ctx.seed;
  copts.threshold = ctx.config.real("threshold", copts.threshold);
  return classx_verify(ctx.space, p, r, ctx.gauge, ctx.config.count("samples", 500), copts, ctx.options);
}

using Driver = ExperimentReport (*)(const ExperimentContext&);

const std::vector<std::pair<std::string, Driver>>& drivers() {
  static const std::vector<std::pair<std::string, Driver>> table{
      {"summing", experiment_summing},         {"block-growth", experiment_block_growth},
      {"vn", experiment_vn},                   {"beta", experiment_beta},
      {"projection", experiment_projection},   {"distortion", experiment_distortion},
      {"moduli", experiment_moduli},           {"classx", experiment_classx},
  };
  return table;
}

Json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read config file '" + path + "'");
  try {
    return Json::parse(in, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ArgumentError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

void write_output(const ExperimentReport& report, ReportFormat format, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << render(report, format);
  } else {
    emit_report(report, format, path);
  }
}

int run_experiment(const std::string& name, const std::string& config_path, const std::string& format_override,
                   const std::string& out_override, std::ostream& out) {
  const auto started = std::chrono::steady_clock::now();
  Driver driver = nullptr;
  for (const auto& [n, d] : drivers()) {
    if (n == name) driver = d;
  }
  if (driver == nullptr) throw ArgumentError("unknown experiment '" + name + "'");

  Config config(read_config(config_path));
  const auto format = parse_report_format(format_override.empty() ? config.text("format", "csv") : format_override);
  const std::string output = out_override.empty() ? config.text("output", "") : out_override;
  const auto gauge = parse_gauge(config.text("gauge", "log2p1"));
  ExperimentContext ctx{config, parse_space(config.text("space", "s"), gauge), gauge,
                        config.has("seed") ? static_cast<std::uint64_t>(config.count("seed", 0)) : default_seed(),
                        config.tolerances()};

  auto report = driver(ctx);
  report.name = name;
  report.metadata["experiment"] = name;
  report.metadata["config"] = config.json();
  report.metadata["space"] = to_string(*ctx.space);
  report.metadata["gauge"] = gauge.label();
  report.metadata["seed"] = ctx.seed;
  report.metadata["tolerances"] = tolerance_json(ctx.options);
  report.metadata["version"] = kVersion;
  report.metadata["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_output(report, format, output, out);
  return kOk;
}

ExperimentReport gauge_check_report(const GaugeFunction& f, const std::vector<double>& decay) {
  const auto grid = default_gauge_grid();
  const auto r = check_gauge_class(f, grid);
  ExperimentReport report;
  report.name = "gauge-check";
  report.columns = {"check", "passed", "violation"};
  report.add_row({std::string("f(1)=1, f(x)<x, nondecreasing"), r.condition1_ok ? 1.0 : 0.0,
                  r.condition1_violation});
  report.add_row({std::string("x/f(x) concave"), r.condition2_ok ? 1.0 : 0.0, r.condition2_violation});
  report.add_row({std::string("submultiplicative"), r.condition3_ok ? 1.0 : 0.0, r.condition3_violation});
  for (double a : decay) {
    const auto h = check_prop5_hypothesis(f, a, default_prop5_grid());
    report.add_row({"decay a=" + format_real(a), h.holds ? 1.0 : 0.0, 0.0});
  }
  report.metadata["gauge"] = f.label();
  report.metadata["tolerance"] = kGaugeCheckTolerance;
  report.metadata["grid_points"] = grid.size();
  report.metadata["class_ok"] = r.all_ok();
  return report;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Norm computations on Schlumprecht-type sequence spaces", "banachlab"};
  app.require_subcommand(1);

  std::string space_text, gauge_name = "log2p1", vec_text, format_name = "csv", out_path;
  double tol = EvalOptions{}.iterative_tol;
  std::size_t cap = kDefaultDpCap;
  std::size_t budget = EvalOptions{}.budget;
  bool show_cert = false, show_maximizer = false, show_witness = false, show_bracket = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--gauge", gauge_name, "Gauge for bare `s`: log2p1, sqrt, one, pow:<a>");
    sub->add_option("--tol", tol, "Relative bracket width for iterative solvers");
    sub->add_option("--cap", cap, "Support size cap for the interval DP");
    sub->add_option("--budget", budget, "Norm evaluations allowed per iterative solve");
    sub->add_flag("--bracket", show_bracket, "Also print the certified [lower, upper] bracket");
  };

  auto* norm = app.add_subcommand("norm", "Evaluate ||x|| in a space");
  norm->add_option("--space", space_text, "Space descriptor")->required();
  norm->add_option("--vec", vec_text, "Vector, e.g. \"1,2,3\" or \"1:1,5:2\"")->required();
  norm->add_flag("--cert", show_cert, "Print the partition certificate (S spaces)");
  add_common(norm);

  auto* dual = app.add_subcommand("dual", "Evaluate the dual norm of a functional");
  dual->add_option("--space", space_text, "Space descriptor")->required();
  dual->add_option("--vec", vec_text, "Functional coefficients")->required();
  dual->add_flag("--maximizer", show_maximizer, "Print the norming vector");
  add_common(dual);

  std::string x_text, y_text;
  double theta = 0.5;
  auto* cal = app.add_subcommand("calderon", "Evaluate a Calderon product norm");
  cal->add_option("--x", x_text, "First space")->required();
  cal->add_option("--y", y_text, "Second space")->required();
  cal->add_option("--theta", theta, "Interpolation parameter in [0,1]")->required();
  cal->add_option("--vec", vec_text, "Vector")->required();
  cal->add_flag("--witness", show_witness, "Print the factorization x, y");
  add_common(cal);

  std::vector<double> decay;
  auto* gauge_check = app.add_subcommand("gauge-check", "Check a gauge against the class conditions");
  gauge_check->add_option("--gauge", gauge_name, "Gauge name")->required();
  gauge_check->add_option("--decay", decay, "Exponents a for the f(x) x^-a decay check");
  gauge_check->add_option("--format", format_name, "csv, json or plotdata");
  gauge_check->add_option("--out", out_path, "Output file (default stdout)");

  std::string experiment_name, config_path, exp_format, exp_out;
  auto* experiment = app.add_subcommand("experiment", "Run an experiment driver from a config file");
  std::vector<std::string> names;
  for (const auto& [n, d] : drivers()) names.push_back(n);
  experiment->add_option("name", experiment_name, "Experiment name")->required()->check(CLI::IsMember(names));
  experiment->add_option("--config", config_path, "JSON config file")->required();
  experiment->add_option("--format", exp_format, "Override the config format");
  experiment->add_option("--out", exp_out, "Override the config output path");

  if (!args.empty() && !args.front().empty() && args.front().front() != '-' && app.get_subcommand_no_throw(args.front()) == nullptr) {
    err << "error: unknown subcommand '" << args.front() << "'\n" << app.help();
    return kValidation;
  }

  std::vector<const char*> argv{"banachlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kValidation;
  }

  EvalOptions options;
  options.iterative_tol = tol;
  options.dp_cap = cap;
  options.budget = budget;

  try {
    if (!(tol > 0.0)) throw DomainError("--tol must be positive");
    const auto gauge = parse_gauge(gauge_name);
    auto print_bracket = [&](double lo, double hi) {
      if (show_bracket) out << "bracket " << format_real(lo) << " " << format_real(hi) << "\n";
    };

    if (norm->parsed()) {
      const auto space = parse_space(space_text, gauge);
      const auto x = nonempty_vector(vec_text);
      const auto v = evaluate_norm(*space, x, options);
      out << format_real(v.value) << "\n";
      print_bracket(v.lower, v.upper);
      if (show_cert) {
        const auto* s = std::get_if<SchlumprechtSpace>(&space->node);
        if (s == nullptr) throw UnsupportedSpaceError("--cert needs an S space");
        out << s_norm(x, s->gauge, cap).certificate.render();
      }
    } else if (dual->parsed()) {
      const auto space = parse_space(space_text, gauge);
      const auto d = dual_norm(space, nonempty_vector(vec_text), options);
      out << format_real(d.value) << "\n";
      print_bracket(d.lower, d.upper);
      if (show_maximizer) out << format_vector(d.maximizer) << "\n";
    } else if (cal->parsed()) {
      const auto r = calderon_norm(parse_space(x_text, gauge), parse_space(y_text, gauge), theta,
                                   nonempty_vector(vec_text), options);
      out << format_real(r.value) << "\n";
      print_bracket(r.lower, r.upper);
      if (show_witness) {
        out << "x " << format_vector(r.factorization.x) << "\n";
        out << "y " << format_vector(r.factorization.y) << "\n";
      }
    } else if (gauge_check->parsed()) {
      for (double a : decay) {
        if (!(a > 0.0)) throw DomainError("--decay exponents must be positive");
      }
      write_output(gauge_check_report(gauge, decay), parse_report_format(format_name), out_path, out);
    } else if (experiment->parsed()) {
      return run_experiment(experiment_name, config_path, exp_format, exp_out, out);
    }
    return kOk;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\nbracket [" << format_real(e.lower()) << ", " << format_real(e.upper())
        << "]\n";
    return kConvergence;
  } catch (const SizeCapError& e) {
    err << "error: " << e.what() << "\n";
    return kSizeCap;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {  // ArgumentError, UnsupportedSpaceError
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad config value: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace banachlab::cli
