#pragma once

/// 2-D rate polytopes over the fixed normal family
/// {(1,0),(0,1),(1,1),(2,1),(1,2)}: the rate-splitting inner regions with
/// and without relay terms, the genie-aided outer bound, both
/// successive-decoding variants, weighted-sum queries, and the constant-gap
/// audit between an outer and an inner region.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "relaykit/channel.hpp"
#include "relaykit/gaussian.hpp"
#include "relaykit/strategies.hpp"

namespace relaykit {

struct RateConstraint {
  int c1 = 0;
  int c2 = 0;
  double b = 0.0;  // c1·R1 + c2·R2 <= b
};

inline constexpr std::array<std::pair<int, int>, 5> kNormalFamily{
    {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}}};

/// Half-plane description; keeps the tightest bound per normal. R1,R2 >= 0
/// are implicit. Bounds may be nonpositive; feasibility is decided at query
/// time.
class RatePolytope {
 public:
  void add(int c1, int c2, double b) {
    if ((c1 == 0 && c2 == 0) || c1 < 0 || c2 < 0)
      throw std::invalid_argument("constraint normal must be nonnegative and nonzero");
    auto key = std::make_pair(c1, c2);
    auto it = bounds_.find(key);
    if (it == bounds_.end())
      bounds_.emplace(key, b);
    else
      it->second = std::min(it->second, b);
  }

  std::vector<RateConstraint> constraints() const {
    std::vector<RateConstraint> out;
    for (const auto& [n, b] : bounds_) out.push_back({n.first, n.second, b});
    return out;
  }

  bool hasBound(int c1, int c2) const { return bounds_.count({c1, c2}) > 0; }

  double bound(int c1, int c2) const {
    auto it = bounds_.find({c1, c2});
    if (it == bounds_.end()) throw std::invalid_argument("no bound stored for that normal");
    return it->second;
  }

  bool contains(double r1, double r2, double tol = 1e-9) const {
    if (r1 < -tol || r2 < -tol) return false;
    for (const auto& [n, b] : bounds_)
      if (n.first * r1 + n.second * r2 > b + tol * std::max(1.0, std::abs(b))) return false;
    return true;
  }

  nlohmann::json toJson() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [n, b] : bounds_)
      arr.push_back({{"c1", n.first}, {"c2", n.second}, {"b", b}});
    return nlohmann::json{{"constraints", arr}};
  }

  static RatePolytope fromJson(const nlohmann::json& j) {
    RatePolytope poly;
    for (const auto& c : j.at("constraints"))
      poly.add(c.at("c1").get<int>(), c.at("c2").get<int>(), c.at("b").get<double>());
    return poly;
  }

 private:
  std::map<std::pair<int, int>, double> bounds_;
};

namespace detail {

inline RatePolytope hkPolytopeFromTerms(const MITermSet& t) {
  RatePolytope poly;
  poly.add(1, 0, t.d1 + t.dd1 - t.delta1);
  poly.add(0, 1, t.d2 + t.dd2 - t.delta2);
  poly.add(1, 1, t.a1 + t.da1 - t.delta1 + t.g2 + t.dg2 - t.delta2);
  poly.add(1, 1, t.g1 + t.dg1 - t.delta1 + t.a2 + t.da2 - t.delta2);
  poly.add(1, 1, t.e1 + t.de1 - t.delta1 + t.e2 + t.de2 - t.delta2);
  poly.add(2, 1, t.a1 + t.da1 + t.g1 + t.dg1 - 2.0 * t.delta1 + t.e2 + t.de2 - t.delta2);
  poly.add(1, 2, t.e1 + t.de1 - t.delta1 + t.a2 + t.da2 + t.g2 + t.dg2 - 2.0 * t.delta2);
  return poly;
}

/// The proof's input-distribution union: the given split plus the two
/// degenerate splits with one common message removed; per-normal best bound.
inline std::array<PowerSplit, 3> splitVariants(const ChannelParams& p, const PowerSplit& s) {
  return {s, PowerSplit{p.P1, 0.0, s.pv2, s.pw2}, PowerSplit{s.pv1, s.pw1, p.P2, 0.0}};
}

template <typename PolyOfSplit>
RatePolytope splitUnion(const ChannelParams& p, const PowerSplit& s, PolyOfSplit&& makePoly) {
  RatePolytope out;
  bool first = true;
  std::map<std::pair<int, int>, double> best;
  for (const PowerSplit& v : splitVariants(p, s)) {
    const RatePolytope poly = makePoly(v);
    for (const RateConstraint& c : poly.constraints()) {
      auto key = std::make_pair(c.c1, c.c2);
      auto it = best.find(key);
      if (it == best.end() || c.b > it->second) best[key] = c.b;
    }
    first = false;
  }
  (void)first;
  for (const auto& [n, b] : best) out.add(n.first, n.second, b);
  return out;
}

}  // namespace detail

/// Rate-splitting inner region with the relay improvement terms.
inline RatePolytope hkGhfRegion(const ChannelParams& p, const PowerSplit& split, double q) {
  return detail::splitUnion(p, split, [&](const PowerSplit& v) {
    return detail::hkPolytopeFromTerms(miTermSet(p, v, q));
  });
}

/// Same constraint system with every relay term zero.
inline RatePolytope noRelayHkRegion(const ChannelParams& p, const PowerSplit& split) {
  ChannelParams noRelay = p;
  noRelay.R0 = 0.0;
  return detail::splitUnion(p, split, [&](const PowerSplit& v) {
    return detail::hkPolytopeFromTerms(miTermSet(noRelay, v, 1.0));
  });
}

enum class OuterPairing { Adopted, Alternate };

/// Genie-aided capacity outer bound for the weak-interference regime. The two
/// typeset variants of the bound differ in how the INR indices pair with the
/// K terms; Adopted is the variant consistent with the per-constraint
/// constant-gap arithmetic, Alternate is kept for comparison.
inline RatePolytope outerBoundRegion(const ChannelParams& p,
                                     OuterPairing pairing = OuterPairing::Adopted) {
  const LinkBudget lb = linkBudget(p);
  if (!(lb.inr1 < lb.snr1) || !(lb.inr2 < lb.snr2))
    throw RegimeViolation("outerBoundRegion requires weak interference (INR_i < SNR_i)");
  const double s1 = lb.snr1, s2 = lb.snr2, i1 = lb.inr1, i2 = lb.inr2;
  const double k1 = 0.5 * std::log2((1.0 + s1 + lb.snrR1) / (1.0 + s1));
  const double k2 = 0.5 * std::log2((1.0 + s2 + lb.snrR2) / (1.0 + s2));
  const double r0 = p.R0;
  auto lg = [](double x) { return 0.5 * std::log2(x); };
  RatePolytope poly;
  poly.add(1, 0, lg(1.0 + s1) + k1);
  poly.add(0, 1, lg(1.0 + s2) + k2);
  if (pairing == OuterPairing::Adopted) {
    poly.add(1, 1, lg(1.0 + s1) + lg(1.0 + s2 / (1.0 + i2)) + r0 + k1);
    poly.add(1, 1, lg(1.0 + s2) + lg(1.0 + s1 / (1.0 + i1)) + r0 + k2);
    poly.add(1, 1, lg(1.0 + i1 + s1 / (1.0 + i2)) + lg(1.0 + i2 + s2 / (1.0 + i1)) + 2.0 * r0);
    poly.add(2, 1, lg(1.0 + s1 + i1) + lg(1.0 + i2 + s2 / (1.0 + i1)) +
                       lg((1.0 + s1) / (1.0 + i2)) + 2.0 * r0 + k1);
    poly.add(1, 2, lg(1.0 + s2 + i2) + lg(1.0 + i1 + s1 / (1.0 + i2)) +
                       lg((1.0 + s2) / (1.0 + i1)) + 2.0 * r0 + k2);
  } else {
    poly.add(1, 1, lg(1.0 + s1) + lg(1.0 + s2 / (1.0 + i1)) + r0 + k1);
    poly.add(1, 1, lg(1.0 + s2) + lg(1.0 + s1 / (1.0 + i2)) + r0 + k2);
    poly.add(1, 1, lg(1.0 + i2 + s1 / (1.0 + i1)) + lg(1.0 + i1 + s2 / (1.0 + i2)) + 2.0 * r0);
    poly.add(2, 1, lg(1.0 + s1 + i2) + lg(1.0 + i1 + s2 / (1.0 + i2)) +
                       lg((1.0 + s1) / (1.0 + i2)) + 2.0 * r0 + k1);
    poly.add(1, 2, lg(1.0 + s2 + i1) + lg(1.0 + i2 + s1 / (1.0 + i1)) +
                       lg((1.0 + s2) / (1.0 + i1)) + 2.0 * r0 + k2);
  }
  return poly;
}

/// Successive decoding, relay codeword reconstructed first: the no-relay
/// constraint system with every receiver output augmented by the
/// reconstructed Yhat. Requires Wyner-Ziv feasibility at both receivers.
inline RatePolytope cfRegionOrder1(const ChannelParams& p, const PowerSplit& split, double q) {
  {
    const GaussianModel m = buildModel(p, fullPrivateSplit(p), q);
    const double wz1 = conditionalMI(m, {"Yhat"}, {"Yr"}, {"Y1"});
    const double wz2 = conditionalMI(m, {"Yhat"}, {"Yr"}, {"Y2"});
    if (p.R0 < std::max(wz1, wz2) - 1e-9)
      throw WynerZivInfeasible("q too fine for R0 at one of the receivers");
  }
  return detail::splitUnion(p, split, [&](const PowerSplit& v) {
    const GaussianModel m = buildModel(p, v, q);
    const auto mi = [&m](const std::vector<std::string>& a, const std::vector<std::string>& b,
                         const std::vector<std::string>& c) { return conditionalMI(m, a, b, c); };
    MITermSet t;
    t.a1 = mi({"Y1", "Yhat"}, {"X1"}, {"W1", "W2"});
    t.d1 = mi({"Y1", "Yhat"}, {"X1"}, {"W2"});
    t.e1 = mi({"Y1", "Yhat"}, {"X1", "W2"}, {"W1"});
    t.g1 = mi({"Y1", "Yhat"}, {"X1", "W2"}, {});
    t.a2 = mi({"Y2", "Yhat"}, {"X2"}, {"W1", "W2"});
    t.d2 = mi({"Y2", "Yhat"}, {"X2"}, {"W1"});
    t.e2 = mi({"Y2", "Yhat"}, {"X2", "W1"}, {"W2"});
    t.g2 = mi({"Y2", "Yhat"}, {"X2", "W1"}, {});
    return detail::hkPolytopeFromTerms(t);
  });
}

/// Successive decoding with the own common message decoded before the relay
/// codeword: per-message constraints only, so the projected region is the
/// box R1 <= S1+T1, R2 <= S2+T2 with each split rate at its binding bound.
/// The private messages are decoded without the reconstructed observation.
inline RatePolytope cfRatesOrder2(const ChannelParams& p, const PowerSplit& split, double q) {
  const GaussianModel m = buildModel(p, split, q);
  const double wz1 = conditionalMI(m, {"Yhat"}, {"Yr"}, {"Y1", "W1"});
  const double wz2 = conditionalMI(m, {"Yhat"}, {"Yr"}, {"Y2", "W2"});
  if (p.R0 < std::max(wz1, wz2) - 1e-9)
    throw WynerZivInfeasible("q too fine for R0 with common-message side information");
  const double t1Own = conditionalMI(m, {"W1"}, {"Y1"});
  const double t2Own = conditionalMI(m, {"W2"}, {"Y2"});
  const double t1Cross = conditionalMI(m, {"W1"}, {"Y2", "Yhat"}, {"W2"});
  const double t2Cross = conditionalMI(m, {"W2"}, {"Y1", "Yhat"}, {"W1"});
  const double s1 = conditionalMI(m, {"X1"}, {"Y1"}, {"W1", "W2"});
  const double s2 = conditionalMI(m, {"X2"}, {"Y2"}, {"W1", "W2"});
  RatePolytope poly;
  poly.add(1, 0, s1 + std::min(t1Own, t1Cross));
  poly.add(0, 1, s2 + std::min(t2Own, t2Cross));
  return poly;
}

struct WeightedSumResult {
  double value = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

namespace detail {

inline std::vector<std::pair<double, double>> candidateVertices(const RatePolytope& poly) {
  const auto cs = poly.constraints();
  std::vector<std::pair<double, double>> pts;
  pts.emplace_back(0.0, 0.0);
  for (const auto& c : cs) {
    if (c.c1 > 0) pts.emplace_back(c.b / c.c1, 0.0);  // on R2 = 0
    if (c.c2 > 0) pts.emplace_back(0.0, c.b / c.c2);  // on R1 = 0
  }
  for (size_t i = 0; i < cs.size(); ++i) {
    for (size_t j = i + 1; j < cs.size(); ++j) {
      const double det = static_cast<double>(cs[i].c1) * cs[j].c2 -
                         static_cast<double>(cs[j].c1) * cs[i].c2;
      if (det == 0.0) continue;
      pts.emplace_back((cs[i].b * cs[j].c2 - cs[j].b * cs[i].c2) / det,
                       (cs[i].c1 * cs[j].b - cs[j].c1 * cs[i].b) / det);
    }
  }
  std::vector<std::pair<double, double>> feasible;
  for (const auto& [r1, r2] : pts)
    if (poly.contains(r1, r2)) feasible.emplace_back(std::max(0.0, r1), std::max(0.0, r2));
  return feasible;
}

}  // namespace detail

/// Exact 2-D linear program by vertex enumeration; ties resolved toward the
/// lexicographically largest (R1, R2).
inline WeightedSumResult maxWeightedSum(const RatePolytope& poly, double w1, double w2) {
  if (w1 == 0.0 && w2 == 0.0) throw std::invalid_argument("weights must not both be zero");
  if (w1 < 0.0 || w2 < 0.0) throw std::invalid_argument("weights must be nonnegative");
  const auto pts = detail::candidateVertices(poly);
  if (pts.empty()) throw EmptyRegion("no feasible nonnegative rate pair");
  WeightedSumResult best{-kInf, 0.0, 0.0};
  for (const auto& [r1, r2] : pts) {
    const double v = w1 * r1 + w2 * r2;
    const double tol = 1e-12 * std::max(1.0, std::abs(best.value));
    if (v > best.value + tol ||
        (v >= best.value - tol &&
         (r1 > best.r1 + 1e-12 || (std::abs(r1 - best.r1) <= 1e-12 && r2 > best.r2 + 1e-12)))) {
      best = {v, r1, r2};
    }
  }
  return best;
}

struct GapReport {
  std::map<std::pair<int, int>, double> perConstraintGap;
  double delta = 0.0;  // max over normals of (b_outer - b_inner)/(c1+c2)
  bool contained = false;
};

inline GapReport constantGap(const RatePolytope& outer, const RatePolytope& inner) {
  GapReport rep;
  rep.delta = -kInf;
  for (const auto& c : inner.constraints()) {
    if (!outer.hasBound(c.c1, c.c2)) continue;
    const double gap = outer.bound(c.c1, c.c2) - c.b;
    rep.perConstraintGap[{c.c1, c.c2}] = gap;
    rep.delta = std::max(rep.delta, gap / (c.c1 + c.c2));
  }
  rep.contained = true;
  for (const auto& [r1, r2] : detail::candidateVertices(inner))
    if (!outer.contains(r1, r2, 1e-9)) {
      rep.contained = false;
      break;
    }
  return rep;
}

}  // namespace relaykit
