// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "relaykit/relaykit.hpp"

using namespace relaykit;

namespace {

struct Gate {
  int failures = 0;

  void criterion(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s  criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
  }
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

ChannelParams curves5(double g2, double snrDb) {
  ChannelParams p;
  p.h11 = p.h22 = 1.0;
  p.h12 = p.h21 = 0.5;
  p.g1 = 0.5;
  p.g2 = g2;
  p.P1 = p.P2 = 10.0;
  p.N = p.h11 * p.h11 * p.P1 / std::pow(10.0, snrDb / 10.0);
  p.R0 = 1.0;
  return p;
}

// Weak-interference sampler shared by criteria 1-3: SNR1 = SNR2 log-uniform,
// INR_i and SNR_ri log-uniform in (1, SNR), R0 uniform in (0, maxR0].
struct AuditSample {
  ChannelParams params;
  PowerSplit split;
  double q = 0.0;
};

class AuditSampler {
 public:
  explicit AuditSampler(uint64_t seed) : rng_(seed) {}

  AuditSample next() {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    while (true) {
      ChannelParams p;
      p.h11 = p.h22 = 1.0;
      p.N = 1.0;
      const double snr = 10.0 * std::pow(1e5, unit(rng_));
      p.P1 = p.P2 = snr;
      p.h21 = std::sqrt(std::pow(snr, unit(rng_)) / p.P2);
      p.h12 = std::sqrt(std::pow(snr, unit(rng_)) / p.P1);
      p.g1 = std::sqrt(std::pow(snr, unit(rng_)) / p.P1);
      p.g2 = std::sqrt(std::pow(snr, unit(rng_)) / p.P2);
      const R0Admissibility adm = r0Admissible(p);
      if (!(adm.maxR0 > 0.0)) continue;
      p.R0 = adm.maxR0 * std::max(1e-6, unit(rng_));
      AuditSample s;
      s.params = p;
      s.split = etwSplit(p);
      s.q = quantizerGhfWeak(p, s.split).q;
      return s;
    }
  }

 private:
  std::mt19937_64 rng_;
};

void runConstantGapAudit(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  AuditSampler sampler(20240817);
  const int count = 1000;
  const double gapLimit = 0.5 * std::log2(15.0) + 1e-6;
  const double lossLimit = 0.5 * std::log2(2.5);
  const double relayBound = 0.5 * std::log2(3.0);

  double maxDelta = -kInf, maxLoss = 0.0, minRelaySlack = kInf;
  int gapViolations = 0, lossViolations = 0, relayViolations = 0, uncontained = 0;
  for (int i = 0; i < count; ++i) {
    const AuditSample s = sampler.next();
    const MITermSet terms = miTermSet(s.params, s.split, s.q);
    maxLoss = std::max({maxLoss, terms.delta1, terms.delta2});
    if (terms.delta1 > lossLimit || terms.delta2 > lossLimit) ++lossViolations;
    const double slack = std::min({terms.de1, terms.de2, terms.dg1, terms.dg2}) -
                         (s.params.R0 - relayBound);
    minRelaySlack = std::min(minRelaySlack, slack);
    if (slack < -1e-9) ++relayViolations;

    const GapReport rep =
        constantGap(outerBoundRegion(s.params), hkGhfRegion(s.params, s.split, s.q));
    maxDelta = std::max(maxDelta, rep.delta);
    if (rep.delta > gapLimit) ++gapViolations;
    if (!rep.contained) ++uncontained;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  gate.criterion(1, "constant-gap audit over 1000 admissible channels",
                 gapViolations == 0 && uncontained == 0 && seconds < 60.0,
                 fmt("max delta %.6f <= 1.9532, uncontained %.0f, %.1f s", maxDelta,
                     static_cast<double>(uncontained), seconds));
  gate.criterion(2, "quantization loss below half log 5/2", lossViolations == 0,
                 fmt("max loss %.6f <= %.6f", maxLoss, lossLimit));
  gate.criterion(3, "relay gain at least R0 minus half log 3", relayViolations == 0,
                 fmt("min slack %.3g >= 0", minRelaySlack));
}

void runReferenceCurves(Gate& gate) {
  bool pass = true;
  std::string detail;

  {  // symmetric relay observation: both strategies deliver R0 per user
    const ChannelParams p = curves5(0.5, 60.0);
    const TinRates ghf = tinGhfRates(p, quantizerGhfTinMin(p).q);
    const TinRates cf = tinGhfRates(p, quantizerCfTinMax(p).q);
    const double ghfSum = ghf.improvement1 + ghf.improvement2;
    const double cfSum = cf.improvement1 + cf.improvement2;
    pass &= std::abs(ghfSum - cfSum) <= 1e-6;
    pass &= std::abs(ghfSum - 2.0) <= 0.05;
    detail += fmt("sym ghf %.4f cf %.4f; ", ghfSum, cfSum);
  }
  {  // asymmetric: list decoding keeps both users at R0, unique decoding pays
    const ChannelParams p = curves5(0.1, 60.0);
    const TinRates ghf = tinGhfRates(p, quantizerGhfTinMin(p).q);
    const TinRates cf = tinGhfRates(p, quantizerCfTinMax(p).q);
    pass &= std::abs(ghf.improvement1 + ghf.improvement2 - 2.0) <= 0.05;
    pass &= std::abs(cf.improvement1 - (1.0 - 0.5 * std::log2(3.0))) <= 0.02;
    pass &= std::abs(cf.improvement2 - 1.0) <= 0.02;
    detail += fmt("asym ghf %.4f cf1 %.4f cf2 %.4f; ",
                  ghf.improvement1 + ghf.improvement2, cf.improvement1, cf.improvement2);
  }
  {  // analog relaying is strictly below the digital link rate everywhere
    double worst = -kInf;
    for (double g2 : {0.5, 0.1, 0.0})
      for (int db = 0; db <= 60; db += 5) {
        const TinRates af = afRates(curves5(g2, db));
        worst = std::max({worst, af.improvement1, af.improvement2});
        pass &= af.improvement1 < curves5(g2, db).R0;
        pass &= af.improvement2 < curves5(g2, db).R0;
      }
    detail += fmt("af max improvement %.4f < 1", worst);
  }
  gate.criterion(4, "reference curves at 60 dB", pass, detail);
}

void runSlopeChecks(Gate& gate) {
  const ChannelParams tmpl;
  const std::vector<double> snrs{1e8, 1e12};
  bool pass = true;
  std::string detail;
  for (const auto& [alpha, rho] :
       std::vector<std::pair<double, double>>{{0.4, 0.3}, {0.5, 0.25}, {0.6, 0.1}}) {
    const SlopeCheck chk = gdofSlopeCheck(tmpl, alpha, rho, snrs, SumRateStrategy::Ghf);
    pass &= chk.pass;
    detail += fmt("ghf %.3g/%.3g ", chk.empiricalSlope, chk.predicted);
  }
  const SlopeCheck cf = gdofSlopeCheck(tmpl, 0.6, 0.1, snrs, SumRateStrategy::CfOrder1);
  const SlopeCheck base = gdofSlopeCheck(tmpl, 0.6, 0.0, snrs, SumRateStrategy::Baseline);
  const double gain = cf.empiricalSlope - base.empiricalSlope;
  pass &= std::abs(gain) <= 0.02;
  detail += fmt("cf1 zero-gain %.4g", gain);
  gate.criterion(5, "finite-SNR slopes match the scaling laws", pass, detail);
}

void runRegimeMap(Gate& gate) {
  int mismatches = 0;
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 100; ++j) {
      const RegimeLabel lbl = classifyRegime(i / 100.0, j / 100.0);
      // integer-exact classification of the two boundary lines
      RegimeLabel expect;
      if (i + 2 * j == 200 || 2 * i + j == 200)
        expect = RegimeLabel::Boundary;
      else if (i + 2 * j < 200 && 2 * i + j < 200)
        expect = RegimeLabel::Gain2;
      else
        expect = RegimeLabel::Gain1;
      if (lbl != expect) ++mismatches;
    }
  }
  gate.criterion(6, "regime map reproduces the two boundary lines", mismatches == 0,
                 fmt("%.0f mismatches on the 101x101 grid", double(mismatches)));
}

void runDeterministicExamples(Gate& gate) {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;

  const DetFixture f1 = fig1Fixture();
  const auto [d1, d2] = simulate(f1.params, f1.scheme);
  pass &= d1 && d2;
  DetChannelParams noRelay = f1.params;
  noRelay.r0bits = 0;
  const auto frontier = bruteForceBest(noRelay, 8);
  pass &= frontierDominates(frontier, 1, 2);          // (1,2) achievable without relay
  pass &= !frontierDominates(frontier, 2, 3);         // (2,3) needs the relay
  detail += fmt("fig1 scheme decodes %.0f, baseline has (1,2) %.0f; ", d1 && d2 ? 1.0 : 0.0,
                frontierDominates(frontier, 1, 2) ? 1.0 : 0.0);

  const DetExampleReport rep2 = verifyExample2();
  pass &= rep2.passed;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  pass &= seconds < 10.0;
  detail += fmt("fig2 +1/+1 %.0f, %.2f s", rep2.passed ? 1.0 : 0.0, seconds);
  gate.criterion(7, "deterministic relay examples", pass, detail);
}

struct SmallModel {
  GaussianModel model;
  std::vector<double> latentVars;
  std::vector<std::vector<double>> coeffs;
  std::vector<std::string> names;
};

// Shared latents plus one private noise source per observable, keeping every
// joint covariance full rank and every MI finite.
SmallModel randomSmallModel(std::mt19937_64& rng, int latents, int observables) {
  std::uniform_real_distribution<double> var(0.1, 3.0);
  std::uniform_real_distribution<double> noiseVar(0.2, 1.0);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  SmallModel sm;
  for (int i = 0; i < latents; ++i) {
    sm.latentVars.push_back(var(rng));
    sm.model.addLatent("L" + std::to_string(i), sm.latentVars.back());
  }
  for (int i = 0; i < observables; ++i) {
    sm.latentVars.push_back(noiseVar(rng));
    sm.model.addLatent("n" + std::to_string(i), sm.latentVars.back());
    std::vector<std::pair<std::string, double>> c;
    std::vector<double> w(static_cast<size_t>(latents) + observables, 0.0);
    for (int k = 0; k < latents; ++k) {
      w[k] = coeff(rng);
      c.emplace_back("L" + std::to_string(k), w[k]);
    }
    w[latents + i] = 1.0;
    c.emplace_back("n" + std::to_string(i), 1.0);
    sm.coeffs.push_back(std::move(w));
    sm.names.push_back("O" + std::to_string(i));
    sm.model.addObservable(sm.names.back(), c);
  }
  return sm;
}

void runEngineProperties(Gate& gate) {
  bool pass = true;
  std::string detail;
  std::mt19937_64 rng(8211);
  std::uniform_real_distribution<double> u(0.1, 1.5);

  double worstIdentity = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const SmallModel sm = randomSmallModel(rng, 4, 4);
    const auto& n = sm.names;
    const double sym = conditionalMI(sm.model, {n[0]}, {n[1]}, {n[3]}) -
                       conditionalMI(sm.model, {n[1]}, {n[0]}, {n[3]});
    const double chain = conditionalMI(sm.model, {n[0]}, {n[1], n[2]}, {n[3]}) -
                         conditionalMI(sm.model, {n[0]}, {n[1]}, {n[3]}) -
                         conditionalMI(sm.model, {n[0]}, {n[2]}, {n[3], n[1]});
    worstIdentity = std::max({worstIdentity, std::abs(sym), std::abs(chain)});

    ChannelParams p;
    p.h11 = u(rng); p.h22 = u(rng); p.h12 = u(rng); p.h21 = u(rng);
    p.g1 = u(rng); p.g2 = u(rng);
    p.P1 = 20.0 * u(rng); p.P2 = 20.0 * u(rng); p.N = u(rng);
    p.R0 = 2.0 * u(rng);
    const double q = u(rng);
    const GaussianModel m = buildModel(p, fullPrivateSplit(p), q);
    const double decomp = conditionalMI(m, {"X1"}, {"Y1", "Yhat"}) -
                          (conditionalMI(m, {"X1"}, {"Y1"}) +
                           conditionalMI(m, {"Yhat"}, {"Yr"}, {"Y1"}) -
                           conditionalMI(m, {"Yhat"}, {"Yr"}, {"X1", "Y1"}));
    worstIdentity = std::max(worstIdentity, std::abs(decomp));

    const MITermSet t = miTermSet(p, etwSplit(p), q);
    const double tol = 1e-9;
    const bool ordered = t.da1 <= t.de1 + tol && t.de1 <= t.dg1 + tol && t.dd1 <= t.dg1 + tol &&
                         t.da2 <= t.de2 + tol && t.de2 <= t.dg2 + tol && t.dd2 <= t.dg2 + tol &&
                         t.a1 <= t.e1 + tol && t.e1 <= t.g1 + tol && t.d1 <= t.g1 + tol &&
                         t.a2 <= t.e2 + tol && t.e2 <= t.g2 + tol && t.d2 <= t.g2 + tol;
    pass &= ordered;
  }
  pass &= worstIdentity <= 1e-9;
  detail += fmt("worst identity residual %.2g; ", worstIdentity);

  // Monte-Carlo covariance agreement, 20 seeded models, 1e6 draws each
  std::mt19937_64 mcRng(515151);
  int entriesChecked = 0, entriesOff = 0;
  double worstSigma = 0.0;
  for (int modelIdx = 0; modelIdx < 20; ++modelIdx) {
    const SmallModel sm = randomSmallModel(mcRng, 4, 4);
    const int nObs = static_cast<int>(sm.names.size());
    const int nLat = static_cast<int>(sm.latentVars.size());
    const int draws = 1'000'000;
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> sum(nObs, 0.0), prod(nObs * nObs, 0.0), obs(nObs), lat(nLat);
    for (int d = 0; d < draws; ++d) {
      for (int k = 0; k < nLat; ++k) lat[k] = gauss(mcRng) * std::sqrt(sm.latentVars[k]);
      for (int i = 0; i < nObs; ++i) {
        obs[i] = 0.0;
        for (int k = 0; k < nLat; ++k) obs[i] += sm.coeffs[i][k] * lat[k];
        sum[i] += obs[i];
      }
      for (int i = 0; i < nObs; ++i)
        for (int j = i; j < nObs; ++j) prod[i * nObs + j] += obs[i] * obs[j];
    }
    for (int i = 0; i < nObs; ++i)
      for (int j = i; j < nObs; ++j) {
        const double sample =
            prod[i * nObs + j] / draws - (sum[i] / draws) * (sum[j] / draws);
        const double analytic = sm.model.cov(sm.names[i], sm.names[j]);
        const double se = std::sqrt((sm.model.cov(sm.names[i], sm.names[i]) *
                                         sm.model.cov(sm.names[j], sm.names[j]) +
                                     analytic * analytic) /
                                    draws);
        ++entriesChecked;
        worstSigma = std::max(worstSigma, std::abs(sample - analytic) / se);
        if (std::abs(sample - analytic) > 3.0 * se) ++entriesOff;
      }
  }
  pass &= entriesOff == 0;
  detail += fmt("mc: %.0f entries, worst %.2f se", double(entriesChecked), worstSigma);
  gate.criterion(8, "information-engine identities and sampling agreement", pass, detail);
}

void runDegeneration(Gate& gate) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worstZero = 0.0, worstCoarse = 0.0;
  for (int i = 0; i < 50; ++i) {
    ChannelParams p;
    p.h11 = p.h22 = 1.0;
    p.N = 1.0;
    const double snr = std::pow(10.0, 1.0 + 3.0 * u(rng));
    p.P1 = p.P2 = snr;
    p.h21 = std::sqrt(std::pow(snr, 0.2 + 0.6 * u(rng)) / p.P2);
    p.h12 = std::sqrt(std::pow(snr, 0.2 + 0.6 * u(rng)) / p.P1);
    p.g1 = std::sqrt(std::pow(snr, 0.2 + 0.7 * u(rng)) / p.P1);
    p.g2 = std::sqrt(std::pow(snr, 0.2 + 0.7 * u(rng)) / p.P2);
    p.R0 = 0.1 + u(rng);
    const PowerSplit s = etwSplit(p);
    const RatePolytope base = noRelayHkRegion(p, s);

    ChannelParams zero = p;
    zero.R0 = 0.0;
    const RatePolytope atZero = hkGhfRegion(zero, s, quantizerGhfWeak(zero, s).q);
    const RatePolytope coarse = hkGhfRegion(p, s, 1e12);
    for (const auto& [c1, c2] : kNormalFamily) {
      worstZero = std::max(worstZero, std::abs(atZero.bound(c1, c2) - base.bound(c1, c2)));
      worstCoarse = std::max(worstCoarse, std::abs(coarse.bound(c1, c2) - base.bound(c1, c2)));
    }
  }
  gate.criterion(9, "relay region degenerates to the no-relay region",
                 worstZero <= 1e-9 && worstCoarse <= 1e-6,
                 fmt("R0=0 residual %.2g, coarse-q residual %.2g", worstZero, worstCoarse));
}

}  // namespace

int main() {
  Gate gate;
  runConstantGapAudit(gate);
  runReferenceCurves(gate);
  runSlopeChecks(gate);
  runRegimeMap(gate);
  runDeterministicExamples(gate);
  runEngineProperties(gate);
  runDegeneration(gate);
  if (gate.failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", gate.failures);
  return gate.failures;
}
