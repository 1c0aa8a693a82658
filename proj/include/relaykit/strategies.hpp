#pragma once

/// Quantizer selection rules and single-relay rate evaluators for the
/// treat-interference-as-noise setting (no rate splitting): the
/// list-decoding relay strategy, classic successive-decoding relaying with
/// its feasibility constraint, and the analog amplify-and-forward baseline.

#include <algorithm>
#include <cmath>
#include <vector>

#include "relaykit/channel.hpp"
#include "relaykit/gaussian.hpp"

namespace relaykit {

enum class QuantizerKind {
  GhfWeak,    // max{N, g1²Pv1, g2²Pv2}
  CfOrder1,   // max conditional variance given Y_i, Wyner-Ziv tight
  CfOrder2,   // max conditional variance given (Y_i, W_i)
  GhfTinMin,  // asymptotic min(a,b)/(2^{2R0}-1)
  CfTinMax,   // asymptotic max(a,b)/(2^{2R0}-1)
  Explicit,
};

struct QuantizerChoice {
  QuantizerKind kind = QuantizerKind::Explicit;
  double q = 0.0;
};

inline QuantizerChoice quantizerGhfWeak(const ChannelParams& p, const PowerSplit& split) {
  const double q = std::max({p.N, p.g1 * p.g1 * split.pv1, p.g2 * p.g2 * split.pv2});
  return {QuantizerKind::GhfWeak, q};
}

namespace detail {

inline double wynerZivScale(const ChannelParams& p) {
  if (p.R0 <= 0.0) throw InvalidR0("Wyner-Ziv quantizer requires R0 > 0");
  return 1.0 / (std::exp2(2.0 * p.R0) - 1.0);
}

// Residual relay-observation variances given each receiver's side information.
inline std::pair<double, double> relayResidualVars(const ChannelParams& p, const PowerSplit& split,
                                                   bool conditionOnCommon) {
  const GaussianModel m = buildModel(p, split, 1.0);
  if (conditionOnCommon)
    return {conditionalVariance(m, "Yr", {"Y1", "W1"}), conditionalVariance(m, "Yr", {"Y2", "W2"})};
  return {conditionalVariance(m, "Yr", {"Y1"}), conditionalVariance(m, "Yr", {"Y2"})};
}

// Zero-noise limits of var(Yr|Y1), var(Yr|Y2) at full power.
inline std::pair<double, double> residualVarLimits(const ChannelParams& p) {
  const double a = std::pow(p.g1 * p.h21 - p.g2 * p.h11, 2) * p.P1 * p.P2 /
                   (p.h11 * p.h11 * p.P1 + p.h21 * p.h21 * p.P2);
  const double b = std::pow(p.g1 * p.h22 - p.g2 * p.h12, 2) * p.P1 * p.P2 /
                   (p.h12 * p.h12 * p.P1 + p.h22 * p.h22 * p.P2);
  return {a, b};
}

}  // namespace detail

inline QuantizerChoice quantizerCfOrder1(const ChannelParams& p, const PowerSplit& split) {
  const double s = detail::wynerZivScale(p);
  const auto [v1, v2] = detail::relayResidualVars(p, split, false);
  return {QuantizerKind::CfOrder1, s * std::max(v1, v2)};
}

inline QuantizerChoice quantizerCfOrder2(const ChannelParams& p, const PowerSplit& split) {
  const double s = detail::wynerZivScale(p);
  const auto [v1, v2] = detail::relayResidualVars(p, split, true);
  return {QuantizerKind::CfOrder2, s * std::max(v1, v2)};
}

inline QuantizerChoice quantizerGhfTinMin(const ChannelParams& p) {
  const double s = detail::wynerZivScale(p);
  const auto [a, b] = detail::residualVarLimits(p);
  return {QuantizerKind::GhfTinMin, s * std::min(a, b)};
}

inline QuantizerChoice quantizerCfTinMax(const ChannelParams& p) {
  const double s = detail::wynerZivScale(p);
  const auto [a, b] = detail::residualVarLimits(p);
  return {QuantizerKind::CfTinMax, s * std::max(a, b)};
}

/// The four candidate resolutions: min/max over receivers of the relay
/// residual variance, with and without the own common message as extra side
/// information, each scaled Wyner-Ziv style.
inline std::vector<QuantizerChoice> candidateQuantizers(const ChannelParams& p,
                                                        const PowerSplit& split) {
  const double s = detail::wynerZivScale(p);
  const auto [c1, c2] = detail::relayResidualVars(p, split, true);
  const auto [u1, u2] = detail::relayResidualVars(p, split, false);
  return {{QuantizerKind::Explicit, s * std::min(c1, c2)},
          {QuantizerKind::CfOrder2, s * std::max(c1, c2)},
          {QuantizerKind::GhfTinMin, s * std::min(u1, u2)},
          {QuantizerKind::CfTinMax, s * std::max(u1, u2)}};
}

struct TinRates {
  double r1 = 0, r2 = 0;
  double r1Baseline = 0, r2Baseline = 0;
  double improvement1 = 0, improvement2 = 0;
};

/// Per-user list-decoding relay rate with interference treated as noise:
/// R_i = I(X_i;Y_i) + min{R0, I(Yhat;Yr|Y_i)} - min{R0, I(Yhat;Yr|X_i,Y_i)}.
inline TinRates tinGhfRates(const ChannelParams& p, double q) {
  const GaussianModel m = buildModel(p, fullPrivateSplit(p), q);
  TinRates r;
  r.r1Baseline = conditionalMI(m, {"X1"}, {"Y1"});
  r.r2Baseline = conditionalMI(m, {"X2"}, {"Y2"});
  const auto clip = [&p](double v) { return std::min(p.R0, v); };
  r.improvement1 = clip(conditionalMI(m, {"Yhat"}, {"Yr"}, {"Y1"})) -
                   clip(conditionalMI(m, {"Yhat"}, {"Yr"}, {"X1", "Y1"}));
  r.improvement2 = clip(conditionalMI(m, {"Yhat"}, {"Yr"}, {"Y2"})) -
                   clip(conditionalMI(m, {"Yhat"}, {"Yr"}, {"X2", "Y2"}));
  r.r1 = r.r1Baseline + r.improvement1;
  r.r2 = r.r2Baseline + r.improvement2;
  return r;
}

/// Classic relaying where both receivers uniquely reconstruct the quantized
/// relay observation first; requires R0 to cover the worse side information.
inline TinRates tinCfRates(const ChannelParams& p, double q) {
  const GaussianModel m = buildModel(p, fullPrivateSplit(p), q);
  const double wz1 = conditionalMI(m, {"Yhat"}, {"Yr"}, {"Y1"});
  const double wz2 = conditionalMI(m, {"Yhat"}, {"Yr"}, {"Y2"});
  if (p.R0 < std::max(wz1, wz2) - 1e-9)
    throw WynerZivInfeasible("q too fine for R0: reconstruction rate exceeds relay link");
  TinRates r;
  r.r1Baseline = conditionalMI(m, {"X1"}, {"Y1"});
  r.r2Baseline = conditionalMI(m, {"X2"}, {"Y2"});
  r.r1 = conditionalMI(m, {"X1"}, {"Y1", "Yhat"});
  r.r2 = conditionalMI(m, {"X2"}, {"Y2", "Yhat"});
  r.improvement1 = r.r1 - r.r1Baseline;
  r.improvement2 = r.r2 - r.r2Baseline;
  return r;
}

/// Mismatch between the two receivers' reconstruction rates; the penalty a
/// single shared quantizer pays under unique decoding.
inline double rDelta(const ChannelParams& p, double q) {
  const GaussianModel m = buildModel(p, fullPrivateSplit(p), q);
  return std::abs(conditionalMI(m, {"Yhat"}, {"Yr"}, {"Y1"}) -
                  conditionalMI(m, {"Yhat"}, {"Yr"}, {"Y2"}));
}

/// Analog baseline: the relay scales Yr onto a unit-noise broadcast link
/// whose power P matches the digital link rate, R0 = ½log₂(1+P).
inline TinRates afRates(const ChannelParams& p) {
  const double relayPower = std::exp2(2.0 * p.R0) - 1.0;
  const double lambda =
      std::sqrt(relayPower / (p.g1 * p.g1 * p.P1 + p.g2 * p.g2 * p.P2 + p.N));
  const GaussianModel m = buildModel(p, fullPrivateSplit(p), 1.0, lambda);
  TinRates r;
  r.r1Baseline = conditionalMI(m, {"X1"}, {"Y1"});
  r.r2Baseline = conditionalMI(m, {"X2"}, {"Y2"});
  r.r1 = conditionalMI(m, {"X1"}, {"Y1", "Ya1"});
  r.r2 = conditionalMI(m, {"X2"}, {"Y2", "Ya2"});
  r.improvement1 = r.r1 - r.r1Baseline;
  r.improvement2 = r.r2 - r.r2Baseline;
  return r;
}

}  // namespace relaykit
