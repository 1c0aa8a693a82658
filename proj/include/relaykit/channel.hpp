#pragma once

/// Physical channel description for the two-user Gaussian interference
/// channel with a shared digital relay link, plus the derived link budget,
/// the standard private/common power split, and the relay-rate
/// admissibility threshold.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <json.hpp>

#include "relaykit/errors.hpp"

namespace relaykit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Direct gains h11/h22, cross gains h12/h21 (transmitter -> other receiver),
/// relay-link gains g1/g2, transmit powers, common noise variance and the
/// digital relay rate R0 in bits per channel use. All gains are amplitudes;
/// squared gains enter variances.
struct ChannelParams {
  double h11 = 1.0;
  double h21 = 0.0;
  double h12 = 0.0;
  double h22 = 1.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double P1 = 1.0;
  double P2 = 1.0;
  double N = 1.0;
  double R0 = 0.0;

  void validate() const {
    if (!(P1 > 0.0) || !(P2 > 0.0)) throw std::invalid_argument("powers must be > 0");
    if (!(N > 0.0)) throw std::invalid_argument("noise variance must be > 0");
    if (!(R0 >= 0.0)) throw std::invalid_argument("R0 must be >= 0");
    for (double v : {h11, h21, h12, h22, g1, g2, P1, P2, N, R0})
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite channel parameter");
  }
};

/// Linear SNR/INR ratios and the log-domain exponents. Exponents are absent
/// when the defining ratio is degenerate (SNR <= 1 or zero numerator).
struct LinkBudget {
  double snr1 = 0.0, snr2 = 0.0;
  double inr1 = 0.0, inr2 = 0.0;
  double snrR1 = 0.0, snrR2 = 0.0;
  std::optional<double> alpha1, alpha2, beta1, beta2;
};

struct PowerSplit {
  double pv1 = 0.0, pw1 = 0.0;  // private/common powers, user 1
  double pv2 = 0.0, pw2 = 0.0;
};

struct ThetaParams {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta = 0.0;
};

struct R0Admissibility {
  bool admissible = false;
  double maxR0 = -kInf;  // bits; -inf when theta == 0
};

inline LinkBudget linkBudget(const ChannelParams& p) {
  p.validate();
  LinkBudget lb;
  lb.snr1 = p.P1 * p.h11 * p.h11 / p.N;
  lb.snr2 = p.P2 * p.h22 * p.h22 / p.N;
  lb.inr1 = p.P2 * p.h21 * p.h21 / p.N;
  lb.inr2 = p.P1 * p.h12 * p.h12 / p.N;
  lb.snrR1 = p.P1 * p.g1 * p.g1 / p.N;
  lb.snrR2 = p.P2 * p.g2 * p.g2 / p.N;
  auto exponent = [](double num, double den) -> std::optional<double> {
    if (den <= 1.0 || num <= 0.0) return std::nullopt;
    return std::log2(num) / std::log2(den);
  };
  lb.alpha1 = exponent(lb.inr1, lb.snr1);
  lb.alpha2 = exponent(lb.inr2, lb.snr2);
  lb.beta1 = exponent(lb.snrR1, lb.snr1);
  lb.beta2 = exponent(lb.snrR2, lb.snr2);
  return lb;
}

/// Private power set so the private signal arrives at the unintended receiver
/// at the noise floor, capped at the total power (all-private below INR = 1).
inline PowerSplit etwSplit(const ChannelParams& p) {
  p.validate();
  PowerSplit s;
  s.pv1 = (p.h12 == 0.0) ? p.P1 : std::min(p.P1, p.N / (p.h12 * p.h12));
  s.pv2 = (p.h21 == 0.0) ? p.P2 : std::min(p.P2, p.N / (p.h21 * p.h21));
  s.pw1 = p.P1 - s.pv1;
  s.pw2 = p.P2 - s.pv2;
  return s;
}

inline ThetaParams thetaParams(const ChannelParams& p) {
  p.validate();
  if (p.h11 == 0.0 || p.h22 == 0.0)
    throw DegenerateChannel("thetaParams requires h11 != 0 and h22 != 0");
  const double d = p.h11 * p.h22;
  const double t1 = (p.g1 * p.h21 - p.g2 * p.h11) / d;
  const double t2 = (p.g2 * p.h12 - p.g1 * p.h22) / d;
  ThetaParams t;
  t.theta1 = t1 * t1;
  t.theta2 = t2 * t2;
  t.theta = std::min(t.theta1, t.theta2);
  return t;
}

/// Largest relay rate for which the constant-gap guarantee applies: the
/// minimum of the six threshold terms, each ½(log₂SNR + log₂ratio + log₂θ)
/// in bits. Uses min(SNR1, SNR2) for the SNR slot, which is exact for the
/// equal-SNR regime the guarantee is stated in and conservative otherwise.
inline R0Admissibility r0Admissible(const ChannelParams& p) {
  const LinkBudget lb = linkBudget(p);
  const ThetaParams th = thetaParams(p);
  R0Admissibility out;
  if (th.theta <= 0.0) {
    out.maxR0 = -kInf;
    out.admissible = (p.R0 <= out.maxR0);
    return out;
  }
  const double snr = std::min(lb.snr1, lb.snr2);
  const double lsnr = std::log2(snr);
  const double lth = std::log2(th.theta);
  auto lg = [](double x) { return x > 0.0 ? std::log2(x) : -kInf; };
  const double bounds[6] = {
      lsnr + lth,
      lsnr + lg(lb.inr2 / lb.snrR1) + lth,
      lsnr + lg(lb.inr1 / lb.snrR2) + lth,
      lg(snr / lb.inr1) + lg(snr / lb.inr2) + lth,
      lg(snr / lb.inr1) + lg(snr / lb.snrR1) + lth,
      lg(snr / lb.inr2) + lg(snr / lb.snrR2) + lth,
  };
  double m = kInf;
  for (double b : bounds) m = std::min(m, b);
  out.maxR0 = 0.5 * m;
  out.admissible = (p.R0 <= out.maxR0);
  return out;
}

// ---- JSON channel-config schema -------------------------------------------

inline ChannelParams channelFromJson(const nlohmann::json& j) {
  ChannelParams p;
  auto get = [&j](const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing channel field: ") + key);
    if (!j.at(key).is_number()) throw std::invalid_argument(std::string("channel field is not a number: ") + key);
    return j.at(key).get<double>();
  };
  p.h11 = get("h11");
  p.h21 = get("h21");
  p.h12 = get("h12");
  p.h22 = get("h22");
  p.g1 = get("g1");
  p.g2 = get("g2");
  p.P1 = get("P1");
  p.P2 = get("P2");
  p.N = get("N");
  p.R0 = get("R0");
  p.validate();
  return p;
}

inline nlohmann::json channelToJson(const ChannelParams& p) {
  return nlohmann::json{{"h11", p.h11}, {"h21", p.h21}, {"h12", p.h12}, {"h22", p.h22},
                        {"g1", p.g1},   {"g2", p.g2},   {"P1", p.P1},   {"P2", p.P2},
                        {"N", p.N},     {"R0", p.R0}};
}

}  // namespace relaykit
