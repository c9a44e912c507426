// Copyright 2026 The Truthbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "truthbench/cli.h"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "truthbench/audit.h"
#include "truthbench/errors.h"
#include "truthbench/mechanisms.h"
#include "truthbench/menus.h"
#include "truthbench/plot.h"
#include "truthbench/rational.h"
#include "truthbench/reduce_ca.h"
#include "truthbench/reduce_cpp_mua.h"
#include "truthbench/reduce_tie.h"
#include "truthbench/rng.h"
#include "truthbench/satkit.h"
#include "truthbench/serialize.h"
#include "truthbench/suites.h"

namespace truthbench {
namespace {

struct Globals {
  CLI::Option* seed_flag = nullptr;
  uint64_t seed = 0;
  int workers = 1;
  std::string out;
};

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path);
  os << text;
  if (!os) throw InputError("failed writing " + path);
}

std::optional<uint64_t> EnvSeed() {
  const char* text = std::getenv(kSeedEnvVar);
  if (text == nullptr || *text == '\0') return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(text, &end, 10);
  if (errno != 0 || *end != '\0' || text[0] == '-') {
    throw InputError(std::string(kSeedEnvVar) + " is not an unsigned integer");
  }
  return v;
}

// --seed, then the environment, then the config file, then 0.
uint64_t ResolveSeed(const Globals& g,
                     std::optional<uint64_t> config_seed = std::nullopt) {
  if (g.seed_flag->count() > 0) return g.seed;
  if (auto env = EnvSeed()) return *env;
  return config_seed.value_or(0);
}

void Emit(const Globals& g, const Json& report, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (g.out.empty()) {
    out << text;
  } else {
    WriteText(g.out, text);
  }
}

Formula LoadFormula(const std::string& path) {
  return ParseDimacs(ReadText(path));
}

std::vector<Rational> ParseRationalList(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InputError("empty entry in list '" + text + "'");
    out.push_back(ParseRational(item));
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

std::string CanonicalMechanismName(const std::string& name) {
  if (name == "vcg_exact") return "vcg";
  if (name == "greedy_welfare") return "greedy";
  if (name == "midr_exact_multiunit") return "midr_exact";
  return name;
}

CppMechanismPtr MakeCppMechanism(const std::string& name) {
  if (name == "cpp_exact") return std::make_shared<CppExact>();
  throw InputError("unknown public-project mechanism '" + name + "'");
}

MultiUnitMechanismPtr MakeMultiUnitMechanism(const std::string& name) {
  const std::string canonical = CanonicalMechanismName(name);
  if (canonical == "midr_exact") return std::make_shared<MidrExact>();
  if (canonical == "uniform_split") {
    return std::make_shared<UniformRandomSplit>();
  }
  throw InputError("unknown multi-unit mechanism '" + name + "'");
}

Json AssignmentJson(const std::optional<Assignment>& a) {
  return a ? Json(a->ToString()) : Json(nullptr);
}

Json FormulaSummary(const Formula& phi) {
  Json j;
  j["num_vars"] = phi.num_vars();
  j["num_clauses"] = phi.clauses().size();
  return j;
}

Json RationalList(const std::vector<Rational>& values) {
  Json j = Json::array();
  for (const Rational& v : values) j.push_back(ToJson(v));
  return j;
}

// ---------------------------------------------------------------- props

struct PropsArgs {
  std::string suite = "all";
  int max_m = 10;
  int bonus_count = 200;
  int max_support = 12;
  int probe_combos = 24;
  int menu_max_m = 8;
};

int RunProps(const PropsArgs& a, const Globals& g, std::ostream& out) {
  SuiteOptions options;
  options.seed = ResolveSeed(g);
  options.workers = g.workers;
  options.max_m = a.max_m;
  options.bonus_count = a.bonus_count;
  options.probe_combos = a.probe_combos;
  options.menu_max_m = a.menu_max_m;
  if (a.max_support < 2) throw InputError("--max-support must be >= 2");
  options.supports.clear();
  for (int s : {8, 10, 12}) {
    if (s <= a.max_support) options.supports.push_back(s);
  }
  if (options.supports.empty()) {
    options.supports.push_back(a.max_support - a.max_support % 2);
  }

  using SuiteFn = SuiteResult (*)(const SuiteOptions&);
  std::vector<SuiteFn> suites;
  const bool all = a.suite == "all";
  if (all || a.suite == "structural" || a.suite == "monotonicity" ||
      a.suite == "submodularity") {
    suites.push_back(&BonusStructuralSuite);
    suites.push_back(&DoublePeakStructuralSuite);
    suites.push_back(&EncodedStructuralSuite);
  }
  if (all || a.suite == "lemma34") suites.push_back(&EncodedOracleSuite);
  if (all || a.suite == "probe") suites.push_back(&ProbeEquivalenceSuite);
  if (all || a.suite == "bonus-point") suites.push_back(&BonusPointSuite);

  Json report;
  report["command"] = "props";
  report["suite"] = a.suite;
  report["seed"] = options.seed;
  report["suites"] = Json::array();
  bool passed = true;
  for (SuiteFn fn : suites) {
    const SuiteResult r = fn(options);
    Json j;
    j["name"] = r.name;
    j["cases"] = r.cases;
    j["checks"] = r.checks;
    j["violations"] = r.violations;
    j["failures"] = r.failures;
    j["passed"] = r.passed();
    report["suites"].push_back(j);
    passed = passed && r.passed();
  }
  report["passed"] = passed;
  Emit(g, report, out);
  return passed ? kExitSuccess : kExitNegative;
}

// ------------------------------------------------------------ reduce-ca

struct CaArgs {
  std::string formula;
  std::string mech = "vcg";
  std::string config;
  std::string csv;
  CLI::Option* m = nullptr;
  int num_items = 0;
  CLI::Option* bidders = nullptr;
  int num_bidders = 0;
  CLI::Option* repeats = nullptr;
  int outer_repeats = 0;
  std::string grid;
  std::string scale;
};

PriceGridMode ParseGridMode(const std::string& s) {
  if (s == "full") return PriceGridMode::kFull;
  if (s == "step") return PriceGridMode::kStep;
  if (s == "explicit") return PriceGridMode::kExplicit;
  if (s == "observed") return PriceGridMode::kObserved;
  throw InputError("unknown grid mode '" + s + "'");
}

const char* GridModeName(PriceGridMode mode) {
  switch (mode) {
    case PriceGridMode::kFull: return "full";
    case PriceGridMode::kStep: return "step";
    case PriceGridMode::kExplicit: return "explicit";
    case PriceGridMode::kObserved: return "observed";
  }
  return "?";
}

BonusScaleMode ParseScaleMode(const std::string& s) {
  if (s == "exponential") return BonusScaleMode::kExponential;
  if (s == "scaled") return BonusScaleMode::kScaled;
  throw InputError("unknown scale mode '" + s + "'");
}

PolarSampling ParseSampling(const std::string& s) {
  if (s == "bernoulli") return PolarSampling::kBernoulli;
  if (s == "exact_size") return PolarSampling::kExactSize;
  throw InputError("unknown sampling '" + s + "'");
}

// Returns the config's seed, if it has one.
std::optional<uint64_t> ApplyCaConfig(const Json& j, CAReductionConfig& c) {
  if (!j.is_object()) throw InputError("reduce-ca config must be an object");
  RequireKnownKeys(j,
                   {"num_items", "num_bidders", "scale_mode", "grid_mode",
                    "price_step", "price_values", "k_values", "eps_window",
                    "eps_gap", "eps_probe", "outer_repeats", "sampling",
                    "seed", "validate_menu_predicate"},
                   "reduce-ca config");
  std::optional<uint64_t> seed;
  try {
    if (j.contains("num_items")) c.num_items = j["num_items"].get<int>();
    if (j.contains("num_bidders")) c.num_bidders = j["num_bidders"].get<int>();
    if (j.contains("scale_mode")) {
      c.scale_mode = ParseScaleMode(j["scale_mode"].get<std::string>());
    }
    if (j.contains("grid_mode")) {
      c.grid_mode = ParseGridMode(j["grid_mode"].get<std::string>());
    }
    if (j.contains("price_step")) c.price_step = RationalFromJson(j["price_step"]);
    if (j.contains("price_values")) {
      c.price_values.clear();
      for (const Json& v : j["price_values"]) {
        c.price_values.push_back(RationalFromJson(v));
      }
    }
    if (j.contains("k_values")) {
      c.k_values = j["k_values"].get<std::vector<int>>();
    }
    if (j.contains("eps_window")) c.eps_window = RationalFromJson(j["eps_window"]);
    if (j.contains("eps_gap")) c.eps_gap = RationalFromJson(j["eps_gap"]);
    if (j.contains("eps_probe")) c.eps_probe = RationalFromJson(j["eps_probe"]);
    if (j.contains("outer_repeats")) {
      c.outer_repeats = j["outer_repeats"].get<int>();
    }
    if (j.contains("sampling")) {
      c.sampling = ParseSampling(j["sampling"].get<std::string>());
    }
    if (j.contains("seed")) seed = j["seed"].get<uint64_t>();
    if (j.contains("validate_menu_predicate")) {
      c.validate_menu_predicate = j["validate_menu_predicate"].get<bool>();
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("reduce-ca config: ") + e.what());
  }
  return seed;
}

Json CaConfigJson(const CAReductionConfig& c) {
  Json j;
  j["num_items"] = c.num_items;
  j["num_bidders"] = c.num_bidders;
  j["scale_mode"] = c.scale_mode == BonusScaleMode::kExponential ? "exponential" : "scaled";
  j["grid_mode"] = GridModeName(c.grid_mode);
  if (c.grid_mode == PriceGridMode::kStep) j["price_step"] = ToJson(c.price_step);
  if (c.grid_mode == PriceGridMode::kExplicit) {
    j["price_values"] = RationalList(c.price_values);
  }
  j["k_values"] = c.k_values;
  j["eps_window"] = ToJson(c.EffectiveWindow());
  j["eps_gap"] = ToJson(c.EffectiveGap());
  j["eps_probe"] = ToJson(c.EffectiveProbe());
  j["outer_repeats"] = c.outer_repeats;
  j["sampling"] =
      c.sampling == PolarSampling::kBernoulli ? "bernoulli" : "exact_size";
  j["seed"] = c.seed;
  j["validate_menu_predicate"] = c.validate_menu_predicate;
  return j;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string BundleField(Bundle s) {
  std::string out;
  for (int i = 0; i < 64; ++i) {
    if (s.Contains(i)) {
      if (!out.empty()) out += ' ';
      out += std::to_string(i);
    }
  }
  return out;
}

int RunReduceCa(const CaArgs& a, const Globals& g, std::ostream& out) {
  const Formula phi = LoadFormula(a.formula);
  CAReductionConfig config;
  std::optional<uint64_t> config_seed;
  if (!a.config.empty()) config_seed = ApplyCaConfig(ReadJsonFile(a.config), config);
  if (a.m->count()) config.num_items = a.num_items;
  if (a.bidders->count()) config.num_bidders = a.num_bidders;
  if (a.repeats->count()) config.outer_repeats = a.outer_repeats;
  if (!a.grid.empty()) config.grid_mode = ParseGridMode(a.grid);
  if (!a.scale.empty()) config.scale_mode = ParseScaleMode(a.scale);
  config.seed = ResolveSeed(g, config_seed);
  config.workers = g.workers;
  config.Validate();

  const std::string mech = CanonicalMechanismName(a.mech);
  const CAReductionReport r = RunReductionCA(phi, MakeMechanism(mech), config);

  Json report;
  report["command"] = "reduce-ca";
  report["formula"] = FormulaSummary(phi);
  report["mechanism"] = mech;
  report["config"] = CaConfigJson(config);
  report["verdict"] = r.satisfiable ? "SAT" : "PRESUMED_UNSAT";
  report["assignment"] = AssignmentJson(r.assignment);
  report["repeats_run"] = r.repeats_run;
  report["mechanism_runs"] = r.mechanism_runs;
  Json trials = Json::array();
  std::ostringstream csv;
  csv << "repeat,seed,bidder,k,p,returned,bonus,error\n";
  for (const CATrial& t : r.trials) {
    Json j;
    j["repeat"] = t.repeat;
    j["seed"] = t.seed;
    j["bidder"] = t.bidder;
    j["k"] = t.k;
    j["p"] = ToJson(t.p);
    j["returned"] = ToJson(t.returned);
    j["bonus"] = t.bonus;
    if (!t.error.empty()) j["error"] = t.error;
    trials.push_back(j);
    csv << t.repeat << ',' << t.seed << ',' << t.bidder << ',' << t.k << ','
        << FormatRational(t.p) << ',' << BundleField(t.returned) << ','
        << (t.bonus ? 1 : 0) << ',' << CsvField(t.error) << '\n';
  }
  report["trials"] = trials;
  if (!a.csv.empty()) WriteText(a.csv, csv.str());
  Emit(g, report, out);
  return r.satisfiable ? kExitSuccess : kExitNegative;
}

// ----------------------------------------------------------- reduce-tie

struct TieArgs {
  std::string formula;
  std::string mech = "cpp_exact";
  std::string advice;
  std::string lambda_grid;
  CLI::Option* ell_opt = nullptr;
  int ell = 1;
  CLI::Option* m0_opt = nullptr;
  int m0 = 2;
  CLI::Option* trials_opt = nullptr;
  int trials = 1;
  CLI::Option* cpp_k_opt = nullptr;
  int cpp_k = 0;
};

std::optional<uint64_t> ApplyAdvice(const Json& j, TieConfig& c) {
  if (!j.is_object()) throw InputError("advice must be an object");
  RequireKnownKeys(j,
                   {"j", "alpha", "lambda", "beta", "code", "ell", "m0",
                    "trials", "cpp_k", "omega", "seed"},
                   "advice");
  std::optional<uint64_t> seed;
  try {
    if (j.contains("j")) c.j = j["j"].get<int>();
    if (j.contains("alpha")) c.alpha = RationalFromJson(j["alpha"]);
    if (j.contains("lambda")) c.lambda = RationalFromJson(j["lambda"]);
    if (j.contains("beta")) c.beta = RationalFromJson(j["beta"]);
    if (j.contains("code")) c.code = CodeSpecFromJson(j["code"]);
    if (j.contains("ell")) c.ell = j["ell"].get<int>();
    if (j.contains("m0")) c.m0 = j["m0"].get<int>();
    if (j.contains("trials")) c.trials = j["trials"].get<int>();
    if (j.contains("cpp_k")) c.cpp_k = j["cpp_k"].get<int>();
    if (j.contains("omega")) c.omega = RationalFromJson(j["omega"]);
    if (j.contains("seed")) seed = j["seed"].get<uint64_t>();
  } catch (const Json::exception& e) {
    throw InputError(std::string("advice: ") + e.what());
  }
  return seed;
}

Json TieTrialsJson(const TieReport& r) {
  Json trials = Json::array();
  for (const TieTrial& t : r.trials) {
    Json j;
    j["trial"] = t.trial;
    j["seed"] = t.seed;
    j["bidder"] = t.bidder;
    j["order"] = t.order;
    j["returned"] = ToJson(t.returned);
    j["value"] = ToJson(t.value);
    j["extracted"] = t.extracted;
    if (!t.error.empty()) j["error"] = t.error;
    trials.push_back(j);
  }
  return trials;
}

int RunReduceTie(const TieArgs& a, const Globals& g, std::ostream& out) {
  const Formula phi = LoadFormula(a.formula);
  TieConfig config;
  std::optional<uint64_t> advice_seed;
  if (!a.advice.empty()) advice_seed = ApplyAdvice(ReadJsonFile(a.advice), config);
  if (a.ell_opt->count()) config.ell = a.ell;
  if (a.m0_opt->count()) config.m0 = a.m0;
  if (a.trials_opt->count()) config.trials = a.trials;
  if (a.cpp_k_opt->count()) config.cpp_k = a.cpp_k;
  config.seed = ResolveSeed(g, advice_seed);

  std::vector<Rational> lambdas = {config.lambda};
  if (!a.lambda_grid.empty()) lambdas = ParseRationalList(a.lambda_grid);

  const std::string mech = CanonicalMechanismName(a.mech);
  TieMechanism mechanism;
  if (mech == "cpp_exact") {
    mechanism = MakeCppMechanism(mech);
  } else {
    mechanism = MakeMechanism(mech);
  }

  Json report;
  report["command"] = "reduce-tie";
  report["formula"] = FormulaSummary(phi);
  report["mechanism"] = mech;
  report["seed"] = config.seed;
  report["runs"] = Json::array();
  std::optional<Assignment> found;
  for (const Rational& lambda : lambdas) {
    TieConfig run = config;
    run.lambda = lambda;
    run.Validate();
    const TieReport r = RunTieExtraction(phi, mechanism, run);
    Json j;
    j["lambda"] = ToJson(lambda);
    j["ell"] = run.ell;
    j["m0"] = run.m0;
    j["j"] = run.j;
    j["alpha"] = ToJson(run.alpha);
    j["beta"] = ToJson(run.EffectiveBeta());
    j["code"] = ToJson(TieCode(run, phi));
    j["verdict"] = r.satisfiable ? "SAT" : "PRESUMED_UNSAT";
    j["assignment"] = AssignmentJson(r.assignment);
    j["trials_run"] = r.trials_run;
    j["trials"] = TieTrialsJson(r);
    report["runs"].push_back(j);
    if (r.satisfiable) {
      found = r.assignment;
      break;
    }
  }
  report["verdict"] = found ? "SAT" : "PRESUMED_UNSAT";
  report["assignment"] = AssignmentJson(found);
  Emit(g, report, out);
  return found ? kExitSuccess : kExitNegative;
}

// ----------------------------------------------------------- reduce-cpp

struct CppArgs {
  std::string instance;
  std::string generate;
  int u = 6;
  int k = 2;
  int d = 2;
  std::string mech = "cpp_exact";
  std::string mode = "adaptive";
  std::string no_fraction;
  std::string c = "1/2";
  std::string epsilon;
  std::string p_m;
  int trials = 8;
  std::string write_instance;
};

int RunReduceCpp(const CppArgs& a, const Globals& g, std::ostream& out) {
  if (a.instance.empty() == a.generate.empty()) {
    throw InputError("give exactly one of --instance and --generate");
  }
  const uint64_t seed = ResolveSeed(g);
  RegularCoverInstance inst;
  if (!a.instance.empty()) {
    inst = CoverInstanceFromJson(ReadJsonFile(a.instance));
  } else if (a.generate == "yes") {
    inst = BuildRegularYesInstance(a.u, a.k, a.d, DeriveSeed(seed, 1));
  } else if (a.generate == "random") {
    inst = BuildRegularRandomInstance(a.u, a.k, a.d, DeriveSeed(seed, 1));
  } else {
    throw InputError("--generate must be yes or random");
  }
  inst.Validate();

  CPPConfig config;
  config.c = ParseRational(a.c);
  if (!a.epsilon.empty()) config.epsilon = ParseRational(a.epsilon);
  if (!a.p_m.empty()) config.p_m = ParseRational(a.p_m);
  config.trials = a.trials;
  config.seed = DeriveSeed(seed, 2);
  if (a.mode == "asymptotic") {
    config.mode = ThresholdMode::kAsymptotic;
  } else if (a.mode == "adaptive") {
    config.mode = ThresholdMode::kAdaptive;
    // Default: anything short of a full cover counts as NO.
    config.no_fraction = a.no_fraction.empty()
                             ? Rational(inst.universe_size - 1,
                                        inst.universe_size)
                             : ParseRational(a.no_fraction);
    config.no_fraction.canonicalize();
  } else {
    throw InputError("--mode must be asymptotic or adaptive");
  }
  config.Validate();

  // Certify from scratch and check any certificate the file carried.
  const CoverCertificate cert = CertifyInstance(inst, config.Low());
  if (cert.verdict == CoverKind::kUncertified) {
    throw InputError("instance is neither a full cover nor below the NO "
                     "threshold (max covered " +
                     std::to_string(cert.max_covered) + " of " +
                     std::to_string(inst.universe_size) + ")");
  }
  if (inst.kind != CoverKind::kUncertified && inst.kind != cert.verdict) {
    throw InputError(std::string("instance claims ") +
                     CoverKindName(inst.kind) + " but certifies as " +
                     CoverKindName(cert.verdict));
  }
  if (inst.kind == CoverKind::kNo && inst.certified_max &&
      *inst.certified_max != cert.max_covered) {
    throw InputError("certified_max disagrees with the exhaustive maximum");
  }
  inst = Certified(std::move(inst), config.Low());
  if (!a.write_instance.empty()) {
    WriteText(a.write_instance, ToJson(inst).dump(2) + "\n");
  }

  const CppMechanismPtr mech = MakeCppMechanism(CanonicalMechanismName(a.mech));
  const CppDecisionReport r = CppDecision(inst, *mech, config);

  Json report;
  report["command"] = "reduce-cpp";
  report["seed"] = seed;
  report["mechanism"] = mech->name();
  report["instance"] = ToJson(inst);
  Json c;
  c["verdict"] = CoverKindName(cert.verdict);
  c["max_covered"] = cert.max_covered;
  c["best"] = ToJson(cert.best);
  report["certificate"] = c;
  Json cfg;
  cfg["mode"] = a.mode;
  cfg["c"] = ToJson(config.c);
  cfg["epsilon"] = ToJson(config.EffectiveEpsilon());
  cfg["low"] = ToJson(config.Low());
  cfg["high"] = ToJson(config.High());
  cfg["trials"] = config.trials;
  cfg["seed"] = config.seed;
  report["config"] = cfg;
  Json d;
  d["verdict"] = r.yes ? "YES" : "NO";
  d["p_m"] = ToJson(r.p_m);
  d["scale"] = ToJson(r.scale);
  d["low_value"] = ToJson(r.low_value);
  d["high_value"] = ToJson(r.high_value);
  d["cutoff"] = ToJson(r.cutoff);
  d["mean_value"] = ToJson(r.mean_value);
  d["trials"] = Json::array();
  for (const CppTrial& t : r.trials) {
    Json j;
    j["seed"] = t.seed;
    j["permutation"] = t.permutation;
    j["returned"] = ToJson(t.returned);
    j["value"] = ToJson(t.value);
    j["price"] = ToJson(t.price);
    d["trials"].push_back(j);
  }
  report["decision"] = d;
  report["correct"] = r.yes == (cert.verdict == CoverKind::kYes);
  Emit(g, report, out);
  return r.yes ? kExitSuccess : kExitNegative;
}

// ----------------------------------------------------------- reduce-mua

struct MuaArgs {
  std::string formula;
  std::string mech = "midr_exact";
  int trials = 1;
  bool lemma52 = false;
  CLI::Option* x_opt = nullptr;
  int64_t x = 0;
  std::string epsilon = "1/10";
  int lemma_trials = 1000;
  std::string plot;
};

int RunReduceMua(const MuaArgs& a, const Globals& g, std::ostream& out) {
  const Formula phi = LoadFormula(a.formula);
  if (phi.num_vars() > 30) throw CapExceeded("variables", phi.num_vars(), 30);
  const int64_t m = int64_t{1} << phi.num_vars();
  const uint64_t seed = ResolveSeed(g);
  const MultiUnitMechanismPtr mech = MakeMultiUnitMechanism(a.mech);
  const MuaReport r = MuaExtract(phi, *mech, m, a.trials, DeriveSeed(seed, 0));

  Json report;
  report["command"] = "reduce-mua";
  report["formula"] = FormulaSummary(phi);
  report["mechanism"] = mech->name();
  report["seed"] = seed;
  report["num_units"] = m;
  report["verdict"] = r.assignment ? "SAT" : "PRESUMED_UNSAT";
  report["assignment"] = AssignmentJson(r.assignment);
  report["trials"] = Json::array();
  for (const MuaTrial& t : r.trials) {
    Json j;
    j["seed"] = t.seed;
    j["x"] = t.x;
    j["welfare"] = ToJson(t.welfare);
    report["trials"].push_back(j);
  }
  if (a.lemma52) {
    int64_t x = a.x;
    if (!a.x_opt->count() && r.assignment) {
      x = static_cast<int64_t>(r.trials.back().x);
    }
    const Lemma52Report l = Lemma52Check(*mech, x, m, ParseRational(a.epsilon),
                                         a.lemma_trials, DeriveSeed(seed, 1));
    Json j;
    j["x"] = l.x;
    j["trials"] = l.trials;
    j["hits"] = l.hits;
    j["empirical_rate"] = l.empirical_rate;
    j["exact_probability"] =
        l.exact_probability ? ToJson(*l.exact_probability) : Json(nullptr);
    j["bound"] = ToJson(l.bound);
    j["flagged"] = l.flagged;
    report["lemma52"] = j;
  }
  if (!a.plot.empty()) {
    // Histogram of welfare relative to 2m over the trials.
    std::vector<std::string> labels = {"2m-1 or less", "2m", "2m+1"};
    std::vector<double> counts(3, 0);
    for (const MuaTrial& t : r.trials) {
      const Rational diff = t.welfare - Rational(2 * m);
      counts[diff >= 1 ? 2 : diff >= 0 ? 1 : 0] += 1;
    }
    WriteText(a.plot,
              RenderBarChart({"Welfare over trials", "welfare",
                              "trials", labels, counts}));
  }
  Emit(g, report, out);
  return r.assignment ? kExitSuccess : kExitNegative;
}

// ----------------------------------------------------------------- menu

struct MenuArgs {
  std::string mech = "vcg";
  int m = 4;
  int bidders = 2;
  int bidder = 0;
  int k = 0;
  std::string p = "1";
  int density_level = -1;
  int ell = 1;
  int density_trials = 3;
};

int RunMenu(const MenuArgs& a, const Globals& g, std::ostream& out) {
  if (a.m < 1 || a.m > 10) throw InputError("--m must lie in [1, 10]");
  if (a.bidders < 2) throw InputError("--bidders must be >= 2");
  if (a.bidder < 0 || a.bidder >= a.bidders) {
    throw InputError("--bidder out of range");
  }
  if (a.k < 0 || a.k > a.m) throw InputError("--k must lie in [0, m]");
  const uint64_t seed = ResolveSeed(g);
  const std::string name = CanonicalMechanismName(a.mech);
  const MechanismPtr mech = MakeMechanism(name);
  OthersProfile profile;
  profile.num_items = a.m;
  profile.bidder = a.bidder;
  for (int i = 0; i + 1 < a.bidders; ++i) {
    profile.others.push_back(
        SampleRandomPolar(a.m, a.bidders, DeriveSeed(seed, i)));
  }

  std::ostringstream lines;
  auto line = [&](const Json& j) { lines << j.dump() << '\n'; };
  {
    Json j;
    j["type"] = "profile";
    j["mechanism"] = name;
    j["seed"] = seed;
    j["num_items"] = a.m;
    j["bidder"] = a.bidder;
    j["others"] = Json::array();
    for (const ValuationPtr& v : profile.others) j["others"].push_back(ToJson(*v));
    line(j);
  }
  std::unique_ptr<TaxationMenu> menu;
  try {
    menu = ReferenceMenu(*mech, profile);
  } catch (const Unsupported& e) {
    line(Json{{"type", "note"}, {"message", e.what()}});
  }
  if (menu) {
    for (uint64_t s = 0; s < (uint64_t{1} << a.m); ++s) {
      const MenuPrice price = menu->Price(Bundle(s));
      Json j;
      j["type"] = "price";
      j["bundle"] = ToJson(Bundle(s));
      j["on_menu"] = menu->OnMenu(Bundle(s));
      j["price"] = price.infinite() ? Json(nullptr) : ToJson(*price.value);
      line(j);
    }
  }
  if (a.k > 0) {
    const SubmenuParams params =
        SubmenuParams::Defaults(a.m, a.k, ParseRational(a.p));
    if (menu) {
      Json j;
      j["type"] = "submenu";
      j["k"] = a.k;
      j["p"] = ToJson(params.p);
      j["bundles"] = Json::array();
      for (Bundle s : EnumerateStructuredSubmenu(*menu, params)) {
        j["bundles"].push_back(ToJson(s));
      }
      line(j);
    }
    const MenuProber prober(mech, profile, params.p, params.eps_window,
                            params.eps_probe, DeriveSeed(seed, 1 << 20));
    for (Bundle s : KSubsets(a.m, a.k)) {
      const CandidacyVerdict v = prober.Probe(s, a.k);
      Json j;
      j["type"] = "probe";
      j["bundle"] = ToJson(s);
      j["candidate"] = v.is_candidate;
      if (v.observed_price) j["observed_price"] = ToJson(*v.observed_price);
      j["steps"] = Json::array();
      for (const ProbeStep& step : v.transcript) {
        Json t;
        t["purpose"] = step.purpose;
        t["report"] = RationalList(step.report);
        t["returned"] = ToJson(step.returned);
        t["price"] = ToJson(step.price);
        j["steps"].push_back(t);
      }
      line(j);
    }
  }
  if (a.density_level >= 0) {
    DensityOptions options;
    options.level = a.density_level;
    options.ell = a.ell;
    options.trials = a.density_trials;
    options.seed = DeriveSeed(seed, 1 << 21);
    for (const DensitySample& d : SampleDensityMenu(*mech, profile, options)) {
      Json j;
      j["type"] = "density";
      j["desired"] = ToJson(d.desired);
      j["returned"] = ToJson(d.returned);
      j["omega"] = ToJson(d.omega);
      j["x"] = ToJson(d.x);
      j["price"] = ToJson(d.price);
      line(j);
    }
  }
  if (g.out.empty()) {
    out << lines.str();
  } else {
    WriteText(g.out, lines.str());
  }
  return kExitSuccess;
}

// ---------------------------------------------------------------- audit

struct AuditArgs {
  std::string mech = "vcg";
  int m = 4;
  int bidders = 2;
  int family = 50;
  std::string epsilon = "0";
  int trials = 0;
};

int RunAudit(const AuditArgs& a, const Globals& g, std::ostream& out) {
  if (a.m < 1 || a.m > 6) throw InputError("--m must lie in [1, 6]");
  if (a.bidders < 1) throw InputError("--bidders must be >= 1");
  if (a.family < 1) throw InputError("--family must be >= 1");
  const uint64_t seed = ResolveSeed(g);
  const std::string name = CanonicalMechanismName(a.mech);
  const MechanismPtr mech = MakeMechanism(name);
  const Instance instance{a.m,
                          RandomMisreportFamily(a.m, a.bidders,
                                                DeriveSeed(seed, 1))};
  const std::vector<ValuationPtr> family =
      RandomMisreportFamily(a.m, a.family, DeriveSeed(seed, 2));
  AuditOptions options;
  options.epsilon = ParseRational(a.epsilon);
  options.trials = a.trials;
  options.seed = DeriveSeed(seed, 3);
  const AuditReport r = AuditTruthfulness(*mech, instance, family, options);

  Json report;
  report["command"] = "audit";
  report["mechanism"] = name;
  report["seed"] = seed;
  report["num_items"] = a.m;
  report["truthful"] = Json::array();
  for (const ValuationPtr& v : instance.valuations) {
    report["truthful"].push_back(ToJson(*v));
  }
  report["family_size"] = a.family;
  report["epsilon"] = ToJson(options.epsilon);
  report["exact"] = r.exact;
  report["comparisons"] = r.comparisons;
  report["worst_ratio"] = r.worst_ratio ? ToJson(*r.worst_ratio) : Json(nullptr);
  report["violations"] = Json::array();
  for (const AuditViolation& v : r.violations) {
    Json j;
    j["bidder"] = v.bidder;
    j["misreport"] = v.misreport;
    j["misreport_valuation"] = ToJson(*family[v.misreport]);
    j["truthful_utility"] = ToJson(v.truthful_utility);
    j["misreport_utility"] = ToJson(v.misreport_utility);
    report["violations"].push_back(j);
  }
  report["passed"] = r.passed();
  Emit(g, report, out);
  return r.passed() ? kExitSuccess : kExitNegative;
}

// -------------------------------------------------------------- claim25

struct Claim25Args {
  int ell = 3;
  int family = 0;
  int trials = 10000;
  int m = 0;
  std::string csv;
  std::string plot;
};

std::string Fixed(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8f", v);
  return buf;
}

int RunClaim25(const Claim25Args& a, const Globals& g, std::ostream& out) {
  Claim25Options options;
  options.ell = a.ell;
  if (a.ell < 1 || a.ell > 12) throw InputError("--ell must lie in [1, 12]");
  options.family_size = a.family > 0 ? a.family : (1 << (2 * a.ell)) + 1;
  options.trials = a.trials;
  options.num_items = a.m;
  options.seed = ResolveSeed(g);
  options.workers = g.workers;
  options.keep_trace = true;
  const Claim25Report r = VerifyClaim25(options);

  Json report;
  report["command"] = "claim25";
  report["seed"] = options.seed;
  report["ell"] = r.ell;
  report["num_items"] = r.num_items;
  report["family_size"] = r.family_size;
  report["trials"] = r.trials;
  report["target"] = r.target.ToString();
  report["misses"] = r.misses;
  report["miss_rate"] = r.miss_rate;
  report["bound"] = r.bound;
  report["bound_sigma"] = r.bound_sigma;
  report["within_bound"] = r.within_bound;
  report["pair_hits"] = r.pair_hits;
  report["pair_rate"] = r.pair_rate;
  report["pair_expected"] = r.pair_expected;
  report["pair_sigma"] = r.pair_sigma;
  report["pair_within"] = r.pair_within;
  report["single_hits"] = r.single_hits;
  report["single_rate"] = r.single_rate;
  report["single_expected"] = r.single_expected;
  report["setup_seed"] = DeriveSeed(options.seed, 0);
  Json seeds = Json::array();
  for (int t = 0; t < r.trials; ++t) seeds.push_back(DeriveSeed(options.seed, t + 1));
  report["trial_seeds"] = seeds;

  if (!a.csv.empty()) {
    std::ostringstream csv;
    csv << "statistic,ell,num_items,family_size,trials,count,rate,expected,"
           "sigma,within_3sigma\n";
    auto row = [&](const char* name, int64_t count, double rate,
                   double expected, double sigma, bool within) {
      csv << name << ',' << r.ell << ',' << r.num_items << ','
          << r.family_size << ',' << r.trials << ',' << count << ','
          << Fixed(rate) << ',' << Fixed(expected) << ',' << Fixed(sigma)
          << ',' << (within ? 1 : 0) << '\n';
    };
    row("miss", r.misses, r.miss_rate, r.bound, r.bound_sigma, r.within_bound);
    row("pair", r.pair_hits, r.pair_rate, r.pair_expected, r.pair_sigma,
        r.pair_within);
    row("single", r.single_hits, r.single_rate, r.single_expected,
        std::sqrt(r.single_expected * (1 - r.single_expected) / r.trials),
        true);
    WriteText(a.csv, csv.str());
  }
  if (!a.plot.empty()) {
    // Running miss rate against the bound, at up to 200 checkpoints.
    Series rate{"miss rate", "#1f77b4", {}, {}, false};
    Series bound{"bound", "#d62728", {}, {}, true};
    Series upper{"bound + 3 sigma", "#ff7f0e", {}, {}, true};
    const int step = std::max(1, r.trials / 200);
    int64_t misses = 0;
    for (int t = 0; t < r.trials; ++t) {
      misses += r.miss_trace[t];
      if ((t + 1) % step != 0 && t + 1 != r.trials) continue;
      const double n = t + 1;
      rate.x.push_back(n);
      rate.y.push_back(misses / n);
      bound.x.push_back(n);
      bound.y.push_back(r.bound);
      upper.x.push_back(n);
      upper.y.push_back(r.bound + 3 * std::sqrt(r.bound * (1 - r.bound) / n));
    }
    WriteText(a.plot,
              RenderLineChart({"Projection miss rate, ell = " +
                                   std::to_string(r.ell),
                               "trials", "rate", {rate, bound, upper}}));
  }
  Emit(g, report, out);
  return r.within_bound && r.pair_within ? kExitSuccess : kExitNegative;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Mechanism testbed and hardness-reduction harness",
               "truthbench"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Globals g;
  g.seed_flag = app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--workers", g.workers, "Worker threads")
      ->check(CLI::Range(1, 256));
  app.add_option("--out", g.out, "Report path (default stdout)");

  std::function<int()> action;

  PropsArgs props;
  auto* sp = app.add_subcommand("props", "Exhaustive property suites");
  sp->add_option("--suite", props.suite)
      ->check(CLI::IsMember({"monotonicity", "submodularity", "structural",
                             "lemma34", "probe", "bonus-point", "all"}));
  sp->add_option("--max-m", props.max_m, "Largest m for bonus valuations");
  sp->add_option("--bonus-count", props.bonus_count);
  sp->add_option("--max-support", props.max_support,
                 "Largest support for double-peak families");
  sp->add_option("--probe-combos", props.probe_combos);
  sp->add_option("--menu-max-m", props.menu_max_m);
  sp->callback([&] { action = [&] { return RunProps(props, g, out); }; });

  CaArgs ca;
  auto* sca = app.add_subcommand("reduce-ca", "Combinatorial-auction reduction");
  sca->add_option("--formula", ca.formula, "DIMACS CNF")->required();
  sca->add_option("--mech", ca.mech);
  sca->add_option("--config", ca.config, "JSON config");
  sca->add_option("--csv", ca.csv, "Per-trial CSV");
  ca.m = sca->add_option("--m", ca.num_items);
  ca.bidders = sca->add_option("--bidders", ca.num_bidders);
  ca.repeats = sca->add_option("--repeats", ca.outer_repeats);
  sca->add_option("--grid", ca.grid);
  sca->add_option("--scale", ca.scale);
  sca->callback([&] { action = [&] { return RunReduceCa(ca, g, out); }; });

  TieArgs tie;
  auto* stie = app.add_subcommand("reduce-tie", "Randomized reduction");
  stie->add_option("--formula", tie.formula, "DIMACS CNF")->required();
  stie->add_option("--mech", tie.mech);
  stie->add_option("--advice", tie.advice, "JSON advice");
  stie->add_option("--lambda-grid", tie.lambda_grid,
                   "Comma-separated lambdas tried in order");
  tie.ell_opt = stie->add_option("--ell", tie.ell);
  tie.m0_opt = stie->add_option("--m0", tie.m0);
  tie.trials_opt = stie->add_option("--trials", tie.trials);
  tie.cpp_k_opt = stie->add_option("--cpp-k", tie.cpp_k);
  stie->callback([&] { action = [&] { return RunReduceTie(tie, g, out); }; });

  CppArgs cpp;
  auto* scpp = app.add_subcommand("reduce-cpp", "Public-project decision");
  scpp->add_option("--instance", cpp.instance, "Cover instance JSON");
  scpp->add_option("--generate", cpp.generate)
      ->check(CLI::IsMember({"yes", "random"}));
  scpp->add_option("--u", cpp.u);
  scpp->add_option("--k", cpp.k);
  scpp->add_option("--d", cpp.d);
  scpp->add_option("--mech", cpp.mech);
  scpp->add_option("--mode", cpp.mode)
      ->check(CLI::IsMember({"asymptotic", "adaptive"}));
  scpp->add_option("--no-fraction", cpp.no_fraction);
  scpp->add_option("--c", cpp.c);
  scpp->add_option("--epsilon", cpp.epsilon);
  scpp->add_option("--p-m", cpp.p_m);
  scpp->add_option("--trials", cpp.trials);
  scpp->add_option("--write-instance", cpp.write_instance);
  scpp->callback([&] { action = [&] { return RunReduceCpp(cpp, g, out); }; });

  MuaArgs mua;
  auto* smua = app.add_subcommand("reduce-mua", "Multi-unit reduction");
  smua->add_option("--formula", mua.formula, "DIMACS CNF")->required();
  smua->add_option("--mech", mua.mech);
  smua->add_option("--trials", mua.trials);
  smua->add_flag("--lemma52", mua.lemma52, "Also run the split-rate check");
  mua.x_opt = smua->add_option("--x", mua.x);
  smua->add_option("--epsilon", mua.epsilon);
  smua->add_option("--lemma-trials", mua.lemma_trials);
  smua->add_option("--plot", mua.plot, "Welfare histogram SVG");
  smua->callback([&] { action = [&] { return RunReduceMua(mua, g, out); }; });

  MenuArgs menu;
  auto* smenu = app.add_subcommand("menu", "Menu prices and probe transcripts");
  smenu->add_option("--mech", menu.mech);
  smenu->add_option("--m", menu.m);
  smenu->add_option("--bidders", menu.bidders);
  smenu->add_option("--bidder", menu.bidder);
  smenu->add_option("--k", menu.k, "Submenu size; 0 skips probing");
  smenu->add_option("--p", menu.p);
  smenu->add_option("--density-level", menu.density_level);
  smenu->add_option("--ell", menu.ell);
  smenu->add_option("--density-trials", menu.density_trials);
  smenu->callback([&] { action = [&] { return RunMenu(menu, g, out); }; });

  AuditArgs audit;
  auto* saudit = app.add_subcommand("audit", "Truthfulness audit");
  saudit->add_option("--mech", audit.mech);
  saudit->add_option("--m", audit.m);
  saudit->add_option("--bidders", audit.bidders);
  saudit->add_option("--family", audit.family);
  saudit->add_option("--epsilon", audit.epsilon);
  saudit->add_option("--trials", audit.trials);
  saudit->callback([&] { action = [&] { return RunAudit(audit, g, out); }; });

  Claim25Args claim;
  auto* sclaim = app.add_subcommand("claim25", "Random projection statistics");
  sclaim->add_option("--ell", claim.ell);
  sclaim->add_option("--family", claim.family, "0 means 2^(2 ell) + 1");
  sclaim->add_option("--trials", claim.trials);
  sclaim->add_option("--m", claim.m, "0 means 2 ell + 2");
  sclaim->add_option("--csv", claim.csv);
  sclaim->add_option("--plot", claim.plot, "Running miss rate SVG");
  sclaim->callback([&] { action = [&] { return RunClaim25(claim, g, out); }; });

  // Name the offending word rather than CLI11's generic complaint.
  for (int i = 1; i < argc; ++i) {
    const std::string word = argv[i];
    if (word == "--seed" || word == "--workers" || word == "--out") {
      ++i;
      continue;
    }
    if (word.rfind("-", 0) == 0) continue;
    if (app.get_subcommand_no_throw(word) == nullptr) {
      err << "error: unknown subcommand '" << word << "'\n";
      return kExitError;
    }
    break;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitError;
  }
  try {
    return action();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace truthbench
