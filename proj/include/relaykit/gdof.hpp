#pragma once

/// High-SNR scaling maps. Sum rates are expressed in units of ½log₂SNR with
/// cross links at SNR^α, relay observation links near SNR (β → 1⁻) and the
/// relay rate at R0 = ½ρ·log₂SNR. Every formula here is piecewise linear in
/// (α, ρ); the slope checker ties them back to the finite-SNR evaluators.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "relaykit/channel.hpp"
#include "relaykit/regions.hpp"

namespace relaykit {

namespace detail {

inline void requireOpenUnit(double a, const char* name) {
  if (!(a > 0.0) || !(a < 1.0))
    throw DomainError(std::string(name) + " must lie in the open interval (0,1)");
}

inline double pos(double x) { return std::max(0.0, x); }

}  // namespace detail

/// Sum rate with list-decoding relaying, general interference exponents.
inline double ghfSumGdof(double alpha1, double alpha2, double rho) {
  detail::requireOpenUnit(alpha1, "alpha1");
  detail::requireOpenUnit(alpha2, "alpha2");
  if (!(rho >= 0.0)) throw DomainError("rho must be >= 0");
  const double m = std::min({rho, alpha1, alpha2});
  const double c1 = (2.0 - alpha1) + m;
  const double c2 = (2.0 - alpha2) + m;
  const double c3 = std::max(alpha1 + alpha2, 2.0 - alpha1 - alpha2) +
                    2.0 * std::min({rho, alpha1, alpha2, 1.0 - alpha1, 1.0 - alpha2});
  return std::min({c1, c2, c3});
}

inline double ghfSymSumGdof(double alpha, double rho) {
  return ghfSumGdof(alpha, alpha, rho);  // the symmetric form specializes exactly
}

/// Symmetric sum rate when both receivers reconstruct the relay codeword
/// before decoding any message.
inline double cfOrder1SymSumGdof(double alpha, double rho) {
  detail::requireOpenUnit(alpha, "alpha");
  if (!(rho >= 0.0)) throw DomainError("rho must be >= 0");
  const double c1 = (2.0 - alpha) + std::min(rho, alpha);
  const double c2 = 2.0 * std::max(alpha, 1.0 - alpha) +
                    2.0 * detail::pos(rho + 1.0 - std::max(1.0, 2.0 * alpha)) -
                    2.0 * detail::pos(rho - alpha);
  return std::min(c1, c2);
}

/// Symmetric sum rate when each receiver decodes its own common message
/// first and reconstructs the relay codeword with that side information.
inline double cfOrder2SymSumGdof(double alpha, double rho) {
  detail::requireOpenUnit(alpha, "alpha");
  if (!(rho >= 0.0)) throw DomainError("rho must be >= 0");
  const double c1 = 4.0 * (1.0 - alpha);
  const double c2 = 2.0 * std::max(alpha, 1.0 - alpha) + 2.0 * rho -
                    2.0 * detail::pos(rho - std::min(alpha, 1.0 - alpha));
  return std::min(c1, c2);
}

/// Largest relay exponent for which the constant-gap admissibility condition
/// survives the β → 1⁻ limit.
inline double rhoLimit(double alpha1, double alpha2) {
  detail::requireOpenUnit(alpha1, "alpha1");
  detail::requireOpenUnit(alpha2, "alpha2");
  return std::min({alpha1, alpha2, 1.0 - alpha1, 1.0 - alpha2});
}

enum class RegimeLabel { Gain2, Gain1, Boundary };

inline const char* regimeLabelName(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::Gain2: return "gain2";
    case RegimeLabel::Gain1: return "gain1";
    default: return "boundary";
  }
}

/// Two-for-one region: alpha1 + 2·alpha2 < 2 and 2·alpha1 + alpha2 < 2, with
/// a 1e-12 band labelled boundary.
inline RegimeLabel classifyRegime(double alpha1, double alpha2) {
  constexpr double band = 1e-12;
  const double f1 = alpha1 + 2.0 * alpha2 - 2.0;
  const double f2 = 2.0 * alpha1 + alpha2 - 2.0;
  if (std::abs(f1) <= band || std::abs(f2) <= band) return RegimeLabel::Boundary;
  return (f1 < 0.0 && f2 < 0.0) ? RegimeLabel::Gain2 : RegimeLabel::Gain1;
}

struct RegimeCell {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  RegimeLabel label = RegimeLabel::Gain1;
};

/// Row-major classification over the cartesian grid alphas × alphas.
inline std::vector<RegimeCell> regimeMap(const std::vector<double>& alphas) {
  std::vector<RegimeCell> cells;
  cells.reserve(alphas.size() * alphas.size());
  for (double a1 : alphas)
    for (double a2 : alphas) cells.push_back({a1, a2, classifyRegime(a1, a2)});
  return cells;
}

enum class SumRateStrategy { Ghf, CfOrder1, CfOrder2, Baseline };

/// Symmetric channel at a given SNR with the scaling conventions above:
/// unit direct/relay gains, P = SNR, N = 1, cross gains SNR^{(α−1)/2}.
inline ChannelParams gdofChannel(double alpha, double rho, double snr,
                                 const ChannelParams& tmpl = ChannelParams{}) {
  ChannelParams p = tmpl;
  p.h11 = p.h22 = 1.0;
  p.g1 = p.g2 = 1.0;
  p.N = 1.0;
  p.P1 = p.P2 = snr;
  p.h12 = p.h21 = std::pow(snr, (alpha - 1.0) / 2.0);
  p.R0 = 0.5 * rho * std::log2(snr);
  return p;
}

inline double finiteSnrSumRate(const ChannelParams& p, SumRateStrategy strategy) {
  const PowerSplit split = etwSplit(p);
  switch (strategy) {
    case SumRateStrategy::Ghf:
      return maxWeightedSum(hkGhfRegion(p, split, quantizerGhfWeak(p, split).q), 1.0, 1.0).value;
    case SumRateStrategy::CfOrder1:
      return maxWeightedSum(cfRegionOrder1(p, split, quantizerCfOrder1(p, split).q), 1.0, 1.0).value;
    case SumRateStrategy::CfOrder2:
      return maxWeightedSum(cfRatesOrder2(p, split, quantizerCfOrder2(p, split).q), 1.0, 1.0).value;
    default:
      return maxWeightedSum(noRelayHkRegion(p, split), 1.0, 1.0).value;
  }
}

struct SlopeCheck {
  double empiricalSlope = 0.0;
  double predicted = 0.0;
  bool pass = false;
};

/// Measures the sum-rate slope in ½log₂SNR between the extreme entries of
/// snrList and compares against the closed-form prediction.
inline SlopeCheck gdofSlopeCheck(const ChannelParams& tmpl, double alpha, double rho,
                                 const std::vector<double>& snrList,
                                 SumRateStrategy strategy = SumRateStrategy::Ghf,
                                 double tolerance = 0.05) {
  if (snrList.size() < 2) throw std::invalid_argument("snrList needs at least two entries");
  for (size_t i = 0; i + 1 < snrList.size(); ++i)
    if (!(snrList[i] < snrList[i + 1])) throw std::invalid_argument("snrList must be ascending");
  if (!(snrList.front() >= 1e6)) throw std::invalid_argument("snrList entries must be >= 1e6");
  const double lo = finiteSnrSumRate(gdofChannel(alpha, rho, snrList.front(), tmpl), strategy);
  const double hi = finiteSnrSumRate(gdofChannel(alpha, rho, snrList.back(), tmpl), strategy);
  SlopeCheck chk;
  chk.empiricalSlope =
      (hi - lo) / (0.5 * std::log2(snrList.back()) - 0.5 * std::log2(snrList.front()));
  switch (strategy) {
    case SumRateStrategy::Ghf: chk.predicted = ghfSymSumGdof(alpha, rho); break;
    case SumRateStrategy::CfOrder1: chk.predicted = cfOrder1SymSumGdof(alpha, rho); break;
    case SumRateStrategy::CfOrder2: chk.predicted = cfOrder2SymSumGdof(alpha, rho); break;
    default: chk.predicted = ghfSymSumGdof(alpha, 0.0); break;
  }
  chk.pass = std::abs(chk.empiricalSlope - chk.predicted) <= tolerance;
  return chk;
}

}  // namespace relaykit
