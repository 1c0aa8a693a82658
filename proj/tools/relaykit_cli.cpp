// Command-line front end: channel sweeps, the constant-gap audit, scaling
// maps, and the deterministic-example verifier. All commands are
// deterministic given (config, seed); CSV output is byte-stable across
// reruns with numbers at 9 significant digits.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relaykit/relaykit.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitClaimFailure = 1;
constexpr int kExitUsage = 2;

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void emit(const std::string& text, const std::string& outPath) {
  if (outPath.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(outPath, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + outPath);
  os << text;
}

json loadJson(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file: " + path);
  return json::parse(is);
}

// ---- sweep ------------------------------------------------------------------

struct SweepSpec {
  relaykit::ChannelParams base;
  std::string variable;
  std::vector<double> values;
  std::vector<std::string> strategies;
};

SweepSpec parseSweepSpec(const json& j) {
  SweepSpec spec;
  spec.base = relaykit::channelFromJson(j.at("base"));
  spec.variable = j.at("variable").get<std::string>();
  const std::vector<std::string> known{"snr_db", "g2", "R0", "alpha", "rho"};
  if (std::find(known.begin(), known.end(), spec.variable) == known.end())
    throw std::runtime_error("unknown sweep variable: " + spec.variable);
  for (const auto& v : j.at("values")) spec.values.push_back(v.get<double>());
  if (spec.values.empty()) throw std::runtime_error("sweep values must be nonempty");
  for (size_t i = 0; i + 1 < spec.values.size(); ++i)
    if (!(spec.values[i] < spec.values[i + 1]))
      throw std::runtime_error("sweep values must be ascending");
  for (const auto& s : j.at("strategies")) spec.strategies.push_back(s.get<std::string>());
  if (spec.strategies.empty()) throw std::runtime_error("strategy set must be nonempty");
  const std::vector<std::string> knownStrat{"ghf", "cf1", "cf2", "af", "baseline", "outer"};
  for (const auto& s : spec.strategies)
    if (std::find(knownStrat.begin(), knownStrat.end(), s) == knownStrat.end())
      throw std::runtime_error("unknown strategy: " + s);
  return spec;
}

relaykit::ChannelParams applyVariable(relaykit::ChannelParams p, const std::string& variable,
                                      double v) {
  using std::sqrt;
  if (variable == "snr_db") {
    p.N = p.h11 * p.h11 * p.P1 / std::pow(10.0, v / 10.0);
  } else if (variable == "g2") {
    p.g2 = v;
  } else if (variable == "R0") {
    p.R0 = v;
  } else if (variable == "alpha") {
    const double snr1 = p.h11 * p.h11 * p.P1 / p.N;
    p.h12 = sqrt(p.N * std::pow(snr1, v) / p.P1);
    p.h21 = sqrt(p.N * std::pow(snr1, v) / p.P2);
  } else if (variable == "rho") {
    const double snr1 = p.h11 * p.h11 * p.P1 / p.N;
    p.R0 = 0.5 * v * std::log2(snr1);
  }
  return p;
}

struct SweepRow {
  double r1 = std::nan("");
  double r2 = std::nan("");
};

SweepRow evalStrategy(const relaykit::ChannelParams& p, const std::string& strategy) {
  using namespace relaykit;
  SweepRow row;
  const auto tinQuantizer = [&p](bool fine) {
    if (p.R0 <= 0.0) return p.N;  // relay silent, resolution irrelevant
    return fine ? quantizerGhfTinMin(p).q : quantizerCfTinMax(p).q;
  };
  if (strategy == "ghf") {
    const TinRates r = tinGhfRates(p, tinQuantizer(true));
    row = {r.r1, r.r2};
  } else if (strategy == "cf1") {
    const TinRates r = tinGhfRates(p, tinQuantizer(false));
    row = {r.r1, r.r2};
  } else if (strategy == "cf2") {
    const double q = p.R0 > 0.0 ? quantizerCfOrder2(p, fullPrivateSplit(p)).q : p.N;
    const TinRates r = tinGhfRates(p, q);
    row = {r.r1, r.r2};
  } else if (strategy == "af") {
    const TinRates r = afRates(p);
    row = {r.r1, r.r2};
  } else if (strategy == "baseline") {
    const TinRates r = tinGhfRates(p, p.N);
    row = {r.r1Baseline, r.r2Baseline};
  } else if (strategy == "outer") {
    try {
      const auto best = maxWeightedSum(outerBoundRegion(p), 1.0, 1.0);
      row = {best.r1, best.r2};
    } catch (const RegimeViolation&) {
      // outside weak interference the bound does not apply; leave nan
    }
  }
  return row;
}

int cmdSweep(const json& config, const std::string& outPath) {
  const SweepSpec spec = parseSweepSpec(config);
  std::ostringstream os;
  os << "value,strategy,R1,R2,sumRate,improvementSum\n";
  for (double v : spec.values) {
    const relaykit::ChannelParams p = applyVariable(spec.base, spec.variable, v);
    const relaykit::TinRates base = relaykit::tinGhfRates(p, p.N);
    const double baseSum = base.r1Baseline + base.r2Baseline;
    for (const auto& strategy : spec.strategies) {
      const SweepRow row = evalStrategy(p, strategy);
      const double sum = row.r1 + row.r2;
      os << num(v) << ',' << strategy << ',' << num(row.r1) << ',' << num(row.r2) << ','
         << num(sum) << ',' << num(sum - baseSum) << '\n';
    }
  }
  emit(os.str(), outPath);
  return kExitOk;
}

// ---- gap-audit ---------------------------------------------------------------

struct AuditRegime {
  double snrMin = 10.0;
  double snrMax = 1e6;
};

int cmdGapAudit(uint64_t seed, int count, const AuditRegime& regime,
                const std::string& outPath) {
  using namespace relaykit;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double gapLimit = 0.5 * std::log2(15.0) + 1e-6;
  const double lossLimit = 0.5 * std::log2(2.5);
  const double relaySlackLimit = 0.5 * std::log2(3.0);

  int audited = 0, skipped = 0;
  int gapViolations = 0, lossViolations = 0, relayGainViolations = 0, notContained = 0;
  double maxDelta = -kInf, maxLoss = 0.0, minRelaySlack = kInf;
  std::vector<int> histogram(20, 0);  // delta in [0, 2), 0.1-wide bins

  while (audited < count) {
    ChannelParams p;
    p.h11 = p.h22 = 1.0;
    p.N = 1.0;
    const double snr = regime.snrMin * std::pow(regime.snrMax / regime.snrMin, unit(rng));
    p.P1 = p.P2 = snr;
    const double inr1 = std::pow(snr, unit(rng));
    const double inr2 = std::pow(snr, unit(rng));
    const double snrR1 = std::pow(snr, unit(rng));
    const double snrR2 = std::pow(snr, unit(rng));
    p.h21 = std::sqrt(inr1 / p.P2);
    p.h12 = std::sqrt(inr2 / p.P1);
    p.g1 = std::sqrt(snrR1 / p.P1);
    p.g2 = std::sqrt(snrR2 / p.P2);
    const R0Admissibility adm = r0Admissible(p);
    if (!(adm.maxR0 > 0.0)) {
      ++skipped;
      continue;
    }
    p.R0 = adm.maxR0 * std::max(1e-6, unit(rng));
    ++audited;

    const PowerSplit split = etwSplit(p);
    const double q = quantizerGhfWeak(p, split).q;
    const MITermSet terms = miTermSet(p, split, q);
    maxLoss = std::max({maxLoss, terms.delta1, terms.delta2});
    if (terms.delta1 > lossLimit || terms.delta2 > lossLimit) ++lossViolations;
    const double slack =
        std::min({terms.de1, terms.de2, terms.dg1, terms.dg2}) - (p.R0 - relaySlackLimit);
    minRelaySlack = std::min(minRelaySlack, slack);
    if (slack < -1e-9) ++relayGainViolations;

    const GapReport rep = constantGap(outerBoundRegion(p), hkGhfRegion(p, split, q));
    maxDelta = std::max(maxDelta, rep.delta);
    if (rep.delta > gapLimit) ++gapViolations;
    if (!rep.contained) ++notContained;
    const int bin = std::clamp(static_cast<int>(rep.delta / 0.1), 0, 19);
    ++histogram[bin];
  }

  json summary = {
      {"requested", count},
      {"audited", audited},
      {"skippedInadmissible", skipped},
      {"gapLimit", 0.5 * std::log2(15.0)},
      {"violations",
       {{"gap", gapViolations},
        {"quantizationLoss", lossViolations},
        {"relayGain", relayGainViolations},
        {"containment", notContained}}},
  };
  if (audited > 0) {
    summary["maxDelta"] = maxDelta;
    summary["maxQuantizationLoss"] = maxLoss;
    summary["minRelayGainSlack"] = minRelaySlack;
    summary["deltaHistogram"] = histogram;
  }
  emit(summary.dump(2) + "\n", outPath);
  const bool failed = gapViolations + lossViolations + relayGainViolations + notContained > 0;
  return failed ? kExitClaimFailure : kExitOk;
}

// ---- gdof-map ----------------------------------------------------------------

int cmdGdofMap(double rho, int steps, const std::string& outPath) {
  using namespace relaykit;
  if (steps < 1) throw std::runtime_error("steps must be >= 1");
  std::ostringstream os;
  os << "alpha1,alpha2,rho,d_ghf,d_cf1,d_cf2,gain_per_bit,label\n";
  for (int i = 1; i <= steps; ++i) {
    const double a1 = static_cast<double>(i) / (steps + 1);
    for (int j = 1; j <= steps; ++j) {
      const double a2 = static_cast<double>(j) / (steps + 1);
      const double dGhf = ghfSumGdof(a1, a2, rho);
      const double gainPerBit = rho > 0.0 ? (dGhf - ghfSumGdof(a1, a2, 0.0)) / rho : 0.0;
      os << num(a1) << ',' << num(a2) << ',' << num(rho) << ',' << num(dGhf) << ',';
      if (a1 == a2)
        os << num(cfOrder1SymSumGdof(a1, rho)) << ',' << num(cfOrder2SymSumGdof(a1, rho));
      else
        os << ',';
      os << ',' << num(gainPerBit) << ',' << regimeLabelName(classifyRegime(a1, a2)) << '\n';
    }
  }
  emit(os.str(), outPath);
  return kExitOk;
}

// ---- det-verify --------------------------------------------------------------

int cmdDetVerify(const std::string& fixtureName, const std::string& configPath,
                 const std::string& outPath) {
  using namespace relaykit;
  DetExampleReport rep;
  if (!configPath.empty()) {
    rep = verifyFixture(fixtureFromJson(loadJson(configPath)));
  } else if (fixtureName == "fig1") {
    rep = verifyFixture(fig1Fixture());
  } else if (fixtureName == "fig2") {
    rep = verifyExample2();
  } else {
    std::cerr << "unknown fixture: " << fixtureName << " (expected fig1 or fig2)\n";
    return kExitUsage;
  }
  emit(reportToJson(rep).dump(2) + "\n", outPath);
  return rep.passed ? kExitOk : kExitClaimFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate-region toolkit for the two-user interference channel with a shared digital relay"};
  app.require_subcommand(1);

  std::string configPath, outPath, format = "csv";
  uint64_t seed = 1;
  app.add_option("--config", configPath, "JSON config file");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--out", outPath, "output file (default stdout)");
  app.add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "rate sweep over a channel variable");

  auto* audit = app.add_subcommand("gap-audit", "randomized constant-gap audit");
  int count = 1000;
  audit->add_option("--count", count, "number of admissible channels to audit");

  auto* gdofMap = app.add_subcommand("gdof-map", "high-SNR scaling map as CSV");
  double rho = 0.25;
  int steps = 99;
  gdofMap->add_option("--rho", rho, "relay rate exponent");
  gdofMap->add_option("--steps", steps, "grid steps per axis (interior points)");

  auto* detVerify = app.add_subcommand("det-verify", "verify a deterministic example fixture");
  std::string fixtureName;
  detVerify->add_option("fixture", fixtureName, "fixture name: fig1 or fig2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sweep->parsed()) {
      if (configPath.empty()) {
        std::cerr << "sweep requires --config\n";
        return kExitUsage;
      }
      return cmdSweep(loadJson(configPath), outPath);
    }
    if (audit->parsed()) {
      AuditRegime regime;
      if (!configPath.empty()) {
        const json j = loadJson(configPath);
        regime.snrMin = j.value("snrMin", regime.snrMin);
        regime.snrMax = j.value("snrMax", regime.snrMax);
      }
      if (count < 0) {
        std::cerr << "count must be >= 0\n";
        return kExitUsage;
      }
      return cmdGapAudit(seed, count, regime, outPath);
    }
    if (gdofMap->parsed()) return cmdGdofMap(rho, steps, outPath);
    if (detVerify->parsed()) {
      if (fixtureName.empty() && configPath.empty()) {
        std::cerr << "det-verify requires a fixture name or --config\n";
        return kExitUsage;
      }
      return cmdDetVerify(fixtureName, configPath, outPath);
    }
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
