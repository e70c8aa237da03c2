#include "specgap/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "specgap/experiments.hpp"
#include "specgap/io.hpp"
#include "specgap/parallel.hpp"

namespace specgap::cli {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kSandwichSlack = 0.01;

constexpr std::array<std::pair<Command, const char*>, 8> kCommandNames{{
    {Command::bound, "bound"},
    {Command::eig1d, "eig1d"},
    {Command::verifyThm1, "verifyThm1"},
    {Command::rearrangeCheck, "rearrangeCheck"},
    {Command::constants, "constants"},
    {Command::domainSweep, "domainSweep"},
    {Command::vdberg, "vdberg"},
    {Command::gjCompare, "gjCompare"},
}};

const std::set<std::string> kNumericKeys{"n", "tol", "spacing", "seed", "budget", "alpha", "beta", "gamma", "count", "slack"};
const std::set<std::string> kKnownKeys{"n",     "tol",  "spacing", "D",     "seed",  "budget",
                                       "alpha", "beta", "gamma",   "count", "slack", "family"};

class Overrides {
 public:
  explicit Overrides(const std::map<std::string, std::string>& values) : values_(values) {
    for (const auto& [key, value] : values_) {
      if (!kKnownKeys.count(key)) throw InputError("unknown override '" + key + "'");
      if (kNumericKeys.count(key) && !(number(key, value) > 0))
        throw InputError("override '" + key + "' must be positive");
      if (key == "D") list(key);
    }
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  double get(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : number(key, it->second);
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  std::vector<double> list(const std::string& key, std::vector<double> fallback = {}) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    for (std::string item; std::getline(ss, item, ',');) {
      const double v = number(key, item);
      if (!(v > 0)) throw InputError("override '" + key + "' entries must be positive");
      out.push_back(v);
    }
    if (out.empty()) throw InputError("override '" + key + "' is empty");
    return out;
  }

 private:
  static double number(const std::string& key, const std::string& text) {
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw InputError("override '" + key + "' is not a number: '" + text + "'");
    }
  }

  std::map<std::string, std::string> values_;
};

json config_json(const RunConfig& c, unsigned workers) {
  json overrides = json::object();
  for (const auto& [k, v] : c.overrides) overrides[k] = v;
  return {{"command", to_string(c.command)}, {"input", c.input}, {"out", c.output},
          {"overrides", overrides},         {"workers", workers}, {"seed", c.seed}};
}

std::string path_with(const RunConfig& c, const char* extension) { return c.output + extension; }

PotentialInput required_potential(const RunConfig& c, const Overrides& o) {
  if (c.input.empty()) throw InputError(to_string(c.command) + " requires --input <potential.json>");
  PotentialInput in = potential_input_from_json(read_json_file(c.input));
  if (o.has("n")) in.n = static_cast<Eigen::Index>(o.get("n", 0));
  return in;
}

PotentialGridd sample_input(const PotentialInput& in) {
  try {
    return sample<double>(in.spec, in.n, in.cap);
  } catch (const ParameterError& e) {
    throw InputError(e.what());
  }
}

int cmd_bound(const RunConfig& c, const Overrides& o, json& summary) {
  const PotentialInput in = required_potential(c, o);
  const PotentialGridd grid = sample_input(in);
  const auto report = minimize_functional(grid);
  summary["potential"] = to_json(in);
  summary["report"] = to_json(report);
  summary["lower"] = report.lowerBound;
  summary["upperSharp"] = report.upperBoundSharp ? json(*report.upperBoundSharp) : json(nullptr);

  CsvWriter csv(path_with(c, ".csv"), {"y", "width", "F", "Fsharp"});
  for (const auto& [y, w] : detail::candidate_levels(grid)) {
    csv.cell(y).cell(w).cell(1.0 / (w * w) + y).cell(kPi2 / (w * w) + y);
    csv.end_row();
  }
  return kExitOk;
}

int cmd_eig1d(const RunConfig& c, const Overrides& o, json& summary) {
  const PotentialInput in = required_potential(c, o);
  const PotentialGridd grid = sample_input(in);
  const auto pair = smallest_eigenpair(grid, o.get("tol", kDefaultBisectionTol));
  summary["potential"] = to_json(in);
  summary["eigenpair"] = eigenpair_header(pair);
  const auto report = minimize_functional(grid);
  summary["report"] = to_json(report);
  const auto mass = shortest_mass_interval(pair.f, pair.dx, 0.5);
  summary["halfMassInterval"] = {{"length", mass.length}, {"start", grid.node(mass.startIndex + 1)}};
  if (min_value(grid) >= 0) {
    const auto check = check_linfty_bound(pair, grid);
    summary["linfty"] = {{"ratio", check.ratio}, {"bound", check.bound}, {"holds", check.holds}};
  }
  write_eigenpair_csv(path_with(c, ".csv"), grid, pair);
  return kExitOk;
}

int cmd_verify_thm1(const RunConfig& c, const Overrides& o, json& summary, unsigned workers) {
  std::vector<NamedPotential> suite;
  if (c.input.empty()) {
    suite = convex_suite();
  } else {
    const json doc = read_json_file(c.input);
    const json& list = doc.is_object() && doc.contains("suite") ? doc.at("suite") : doc;
    if (!list.is_array()) throw InputError("verifyThm1 input must be a list of potential specs");
    for (std::size_t i = 0; i < list.size(); ++i)
      suite.push_back({list[i].value("name", "potential " + std::to_string(i)), potential_input_from_json(list[i])});
  }
  const double slack = o.get("slack", kSandwichSlack);

  struct Row {
    SublevelReport<double> report;
    double lambda1;
    bool linftyHolds;
  };
  const auto rows = parallel_map(suite.size(), workers, [&](std::size_t i) {
    const PotentialGridd grid = sample_input(suite[i].input);
    const auto pair = smallest_eigenpair(grid);
    const bool linfty = min_value(grid) < 0 || check_linfty_bound(pair, grid, slack).holds;
    return Row{minimize_functional(grid), pair.lambda1, linfty};
  });

  bool all = true;
  json table = json::array();
  CsvWriter csv(path_with(c, ".csv"), {"name", "fStar", "lambda1", "lower", "upper", "upperSharp", "pass"});
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto& r = rows[i];
    const double lower = r.report.fStar / kLowerBoundDenominator;
    const double upper = kPi2 * r.report.fStar;
    const bool pass = lower * (1 - slack) <= r.lambda1 && r.lambda1 <= upper * (1 + slack) && r.linftyHolds;
    all = all && pass;
    const double sharp = r.report.upperBoundSharp.value_or(std::nan(""));
    csv.cell(suite[i].name).cell(r.report.fStar).cell(r.lambda1).cell(lower).cell(upper).cell(sharp);
    csv.cell(std::string(pass ? "true" : "false"));
    csv.end_row();
    table.push_back({{"name", suite[i].name},
                     {"fStar", r.report.fStar},
                     {"lambda1", r.lambda1},
                     {"lower", lower},
                     {"upper", upper},
                     {"upperSharp", r.report.upperBoundSharp ? json(sharp) : json(nullptr)},
                     {"pass", pass}});
  }
  summary["rows"] = table;
  summary["pass"] = all;
  return all ? kExitOk : kExitCheckFailed;
}

int cmd_rearrange(const RunConfig& c, const Overrides& o, json& summary, unsigned workers) {
  std::vector<PotentialInput> inputs;
  if (!c.input.empty()) {
    inputs.push_back(required_potential(c, o));
  } else {
    std::mt19937_64 rng(c.seed);
    const auto count = static_cast<std::size_t>(o.get("count", 200));
    const auto n = static_cast<Eigen::Index>(o.get("n", 800));
    for (std::size_t i = 0; i < count; ++i) inputs.push_back(random_piecewise_linear(rng, 8, 50.0, n));
  }
  struct Row {
    RearrangementReport<double> report;
    double slack;
  };
  const auto rows = parallel_map(inputs.size(), workers, [&](std::size_t i) {
    const PotentialGridd grid = sample_input(inputs[i]);
    const auto report = verify_chain(grid);
    return Row{report, rearrangement_slack(grid, report)};
  });

  bool all = true;
  CsvWriter csv(path_with(c, ".csv"),
                {"index", "hlLeft", "hlRight", "psLeft", "psRight", "lambdaOriginal", "lambdaRearranged", "slack", "pass"});
  json table = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [r, eps] = rows[i];
    const bool pass = r.hlLeft >= r.hlRight - eps && r.psLeft <= r.psRight + eps &&
                      r.lambdaRearranged <= r.lambdaOriginal + eps;
    all = all && pass;
    csv.cell(static_cast<long long>(i)).cell(r.hlLeft).cell(r.hlRight).cell(r.psLeft).cell(r.psRight);
    csv.cell(r.lambdaOriginal).cell(r.lambdaRearranged).cell(eps).cell(std::string(pass ? "true" : "false"));
    csv.end_row();
    json row = to_json(r);
    row["slack"] = eps;
    row["pass"] = pass;
    table.push_back(row);
  }
  summary["rows"] = table;
  summary["pass"] = all;
  return all ? kExitOk : kExitCheckFailed;
}

int cmd_constants(const RunConfig& c, const Overrides& o, json& summary, unsigned workers, std::ostream& out) {
  const ConstantTriple t{o.get("alpha", kReferenceTriple.alpha), o.get("beta", kReferenceTriple.beta),
                         o.get("gamma", kReferenceTriple.gamma)};
  const bool feasible = is_feasible(t);
  json triple = to_json(t);
  triple["feasible"] = feasible;
  triple["case2"] = case2_gradient_term(t);
  triple["objective"] = feasible ? json(objective(t)) : json(nullptr);
  triple["inverse"] = feasible ? json(1.0 / objective(t)) : json(nullptr);
  summary["triple"] = triple;

  const auto budget = static_cast<std::uint64_t>(o.get("budget", 100000));
  const auto seed = static_cast<std::uint64_t>(o.get("seed", double(c.seed)));
  const SearchResult found = search(budget, seed, workers);
  json best = to_json(found.best);
  best["objective"] = found.value;
  best["inverse"] = 1.0 / found.value;
  best["evaluations"] = found.evaluations;
  best["label"] = "candidate constant";
  summary["search"] = best;
  const double g = optimal_gamma(kReferenceTriple.alpha, kReferenceTriple.beta);
  summary["referenceOptimalGamma"] = {{"gamma", g},
                                      {"objective", objective({kReferenceTriple.alpha, kReferenceTriple.beta, g})}};

  CsvWriter csv(path_with(c, ".csv"), {"label", "alpha", "beta", "gamma", "objective", "inverse"});
  if (feasible) {
    csv.cell(std::string("input")).cell(t.alpha).cell(t.beta).cell(t.gamma).cell(objective(t)).cell(1.0 / objective(t));
    csv.end_row();
  }
  csv.cell(std::string("candidate constant")).cell(found.best.alpha).cell(found.best.beta).cell(found.best.gamma);
  csv.cell(found.value).cell(1.0 / found.value);
  csv.end_row();

  out << triple.dump(2) << '\n';
  return feasible ? kExitOk : kExitCheckFailed;
}

std::vector<double> family_diameters(const Overrides& o, std::vector<double> fallback) { return o.list("D", fallback); }

DomainFamily family_of(const Overrides& o) {
  try {
    return domain_family_from_string(o.text("family", "cone"));
  } catch (const ParameterError& e) {
    throw InputError(e.what());
  }
}

ConvexPolygon family_member(DomainFamily family, double D) {
  try {
    return generate_family(family, D);
  } catch (const ParameterError& e) {
    throw InputError(e.what());
  }
}

int cmd_domain_sweep(const RunConfig& c, const Overrides& o, json& summary, unsigned workers) {
  const DomainFamily family = family_of(o);
  const auto Ds = family_diameters(o, {8, 16, 32, 64, 128, 256});
  const double spacing = o.get("spacing", 1.0 / 64.0);
  struct Row {
    double D, rho, width, L, lambdaGJ, balance;
  };
  const auto rows = parallel_map(Ds.size(), workers, [&](std::size_t i) {
    const ConvexPolygon poly = family_member(family, Ds[i]);
    const NormalizedDomain nd = normalize_gj(poly, spacing / minimal_width(poly).width);
    const auto profile = smallest_eigenpair(gj_potential(nd.height));
    const double L = localization_scale(nd.height);
    return Row{diameter(poly), inradius(poly), nd.width, L, profile.lambda1, (profile.lambda1 - kPi2) * L * L};
  });
  CsvWriter csv(path_with(c, ".csv"), {"D", "rho", "width", "L", "lambdaGJ", "balance"});
  json table = json::array();
  for (const auto& r : rows) {
    csv.cell(r.D).cell(r.rho).cell(r.width).cell(r.L).cell(r.lambdaGJ).cell(r.balance);
    csv.end_row();
    table.push_back({{"D", r.D}, {"rho", r.rho}, {"width", r.width}, {"L", r.L}, {"lambdaGJ", r.lambdaGJ}, {"balance", r.balance}});
  }
  summary["family"] = to_string(family);
  summary["rows"] = table;
  return kExitOk;
}

int cmd_vdberg(const RunConfig& c, const Overrides& o, json& summary, unsigned workers) {
  const double spacing = o.get("spacing", 1.0 / 64.0);
  Eigen2DOptions options;
  if (o.has("tol")) options.tol = o.get("tol", options.tol);

  if (!c.input.empty()) {
    const ConvexPolygon poly = polygon_from_json(read_json_file(c.input));
    const double rho = inradius(poly);
    if (spacing > rho / 4) throw InputError("spacing must not exceed inradius/4");
    const MaskedGrid grid = rasterize(poly, spacing);
    options.shift = 0.8 * kPi2 / (4 * rho * rho);
    const Eigenpair2D pair = smallest_eigenpair_2d(grid, options);
    summary["polygon"] = to_json(poly);
    summary["eigenpair"] = eigenpair_header(pair, grid);
    summary["rho"] = rho;
    summary["D"] = diameter(poly);
    summary["supRatio"] = sup_ratio(pair);
    summary["statistic"] = vdberg_statistic(pair, rho, diameter(poly));
    write_eigenpair2d_csv(path_with(c, ".csv"), grid, pair);
    return kExitOk;
  }

  const DomainFamily family = family_of(o);
  const auto Ds = family_diameters(o, {8, 16, 32, 64});
  const auto rows = parallel_map(Ds.size(), workers,
                                 [&](std::size_t i) { return analyze_domain(family_member(family, Ds[i]), spacing, options); });
  CsvWriter csv(path_with(c, ".csv"), {"D", "rho", "lambda1", "supRatio", "statistic", "L", "gjError"});
  json table = json::array();
  std::vector<double> diam, sup, stat;
  for (const auto& r : rows) {
    csv.cell(r.diameter).cell(r.rho).cell(r.lambda1).cell(r.supRatio).cell(r.statistic).cell(r.L).cell(r.gjError);
    csv.end_row();
    table.push_back(to_json(r));
    diam.push_back(r.diameter);
    sup.push_back(r.supRatio);
    stat.push_back(r.statistic);
  }
  summary["family"] = to_string(family);
  summary["rows"] = table;
  if (rows.size() < 2) return kExitOk;

  const double slope = fit_loglog(diam, sup).slope;
  const double spread = *std::max_element(stat.begin(), stat.end()) / *std::min_element(stat.begin(), stat.end());
  const bool pass = slope <= -1.0 / 6.0 + 0.05 && spread <= 2.0;
  summary["supRatioSlope"] = slope;
  summary["statisticSpread"] = spread;
  summary["pass"] = pass;
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_gj_compare(const RunConfig& c, const Overrides& o, json& summary) {
  const double spacing = o.get("spacing", 1.0 / 64.0);
  const ConvexPolygon poly = c.input.empty() ? family_member(family_of(o), family_diameters(o, {16}).front())
                                             : polygon_from_json(read_json_file(c.input));
  const DomainAnalysis a = analyze_domain(poly, spacing);
  const NormalizedDomain nd = normalize_gj(poly, spacing / a.width);
  const Localization loc = localization(nd.height);
  summary["analysis"] = to_json(a);
  summary["localizationInterval"] = {loc.start, loc.end};
  summary["gjErrorTimesL"] = std::isfinite(a.gjError) ? json(a.gjError * a.L) : json(nullptr);
  write_height_csv(path_with(c, ".csv"), nd.height);
  return kExitOk;
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [k, name] : kCommandNames)
    if (k == c) return name;
  return "unknown";
}

Command command_from_string(const std::string& name) {
  for (const auto& [k, n] : kCommandNames)
    if (name == n) return k;
  throw InputError("unknown command '" + name + "'");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const unsigned workers = config.workers > 0 ? config.workers : default_workers();
  json summary = {{"config", config_json(config, workers)}};
  int status = kExitOk;
  try {
    const Overrides o(config.overrides);
    switch (config.command) {
      case Command::bound:
        status = cmd_bound(config, o, summary);
        break;
      case Command::eig1d:
        status = cmd_eig1d(config, o, summary);
        break;
      case Command::verifyThm1:
        status = cmd_verify_thm1(config, o, summary, workers);
        break;
      case Command::rearrangeCheck:
        status = cmd_rearrange(config, o, summary, workers);
        break;
      case Command::constants:
        status = cmd_constants(config, o, summary, workers, out);
        break;
      case Command::domainSweep:
        status = cmd_domain_sweep(config, o, summary, workers);
        break;
      case Command::vdberg:
        status = cmd_vdberg(config, o, summary, workers);
        break;
      case Command::gjCompare:
        status = cmd_gj_compare(config, o, summary);
        break;
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const GeometryError& e) {
    err << "geometry error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::logic_error& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kExitInputError;
  }
  summary["exitStatus"] = status;
  try {
    write_json_file(path_with(config, ".json"), summary);
  } catch (const InputError& e) {
    err << "output error: " << e.what() << '\n';
    return kExitInputError;
  }
  if (status == kExitCheckFailed) err << to_string(config.command) << ": check failed, see " << config.output << ".json\n";
  return status;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Sublevel-width spectral bounds and convex-domain ground states"};
  std::string command;
  std::vector<std::string> sets;
  RunConfig config;
  std::string names;
  for (const auto& [k, n] : kCommandNames) names += std::string(names.empty() ? "" : ", ") + n;
  app.add_option("command", command, "one of: " + names)->required();
  app.add_option("--input", config.input, "input JSON file");
  app.add_option("--out", config.output, "output prefix for <out>.json and <out>.csv");
  app.add_option("--set", sets, "override key=value (repeatable)");
  app.add_option("--workers", config.workers, "worker threads (default: SPECGAP_WORKERS or all cores)");
  app.add_option("--seed", config.seed, "random seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }
  try {
    config.command = command_from_string(command);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0) throw InputError("--set expects key=value, got '" + s + "'");
      config.overrides[s.substr(0, eq)] = s.substr(eq + 1);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  }
  return run(config, std::cout, std::cerr);
}

}  // namespace specgap::cli
