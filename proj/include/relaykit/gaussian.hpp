#pragma once

/// Linear-Gaussian mutual-information engine. A model is a set of
/// independent latent sources plus observables defined as linear
/// combinations of them; every rate expression in the toolkit reduces to
/// conditional MI or conditional variance queries against one model, so the
/// covariance/determinant code below is the single source of truth for all
/// of them.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "relaykit/channel.hpp"
#include "relaykit/errors.hpp"

namespace relaykit {

struct LatentSource {
  std::string name;
  double variance = 0.0;
};

class GaussianModel {
 public:
  void addLatent(const std::string& name, double variance) {
    if (!(variance >= 0.0) || !std::isfinite(variance))
      throw std::invalid_argument("latent variance must be finite and >= 0: " + name);
    if (latentIndex_.count(name)) throw std::invalid_argument("duplicate latent: " + name);
    latentIndex_[name] = latents_.size();
    latents_.push_back({name, variance});
  }

  void addObservable(const std::string& name,
                     const std::vector<std::pair<std::string, double>>& coeffs) {
    if (obsIndex_.count(name)) throw std::invalid_argument("duplicate observable: " + name);
    std::vector<double> w(latents_.size(), 0.0);
    for (const auto& [latent, c] : coeffs) {
      auto it = latentIndex_.find(latent);
      if (it == latentIndex_.end()) throw std::invalid_argument("unknown latent: " + latent);
      w[it->second] += c;
    }
    obsIndex_[name] = obsNames_.size();
    obsNames_.push_back(name);
    obsCoeffs_.push_back(std::move(w));
  }

  bool hasObservable(const std::string& name) const { return obsIndex_.count(name) > 0; }

  double cov(const std::string& a, const std::string& b) const {
    const auto& wa = coeffsOf(a);
    const auto& wb = coeffsOf(b);
    // latents declared after an observable carry zero weight in it
    const size_t n = std::min(wa.size(), wb.size());
    double s = 0.0;
    for (size_t k = 0; k < n; ++k) s += wa[k] * wb[k] * latents_[k].variance;
    return s;
  }

  double variance(const std::string& a) const { return cov(a, a); }

  const std::vector<std::string>& observableNames() const { return obsNames_; }

  /// Debug dump of the full observable covariance matrix.
  std::string covarianceCsv() const {
    std::ostringstream os;
    os << "name";
    for (const auto& n : obsNames_) os << ',' << n;
    os << '\n';
    for (const auto& a : obsNames_) {
      os << a;
      for (const auto& b : obsNames_) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.9g", cov(a, b));
        os << ',' << buf;
      }
      os << '\n';
    }
    return os.str();
  }

  Eigen::MatrixXd covMatrix(const std::vector<std::string>& names) const {
    Eigen::MatrixXd m(names.size(), names.size());
    for (size_t i = 0; i < names.size(); ++i)
      for (size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = cov(names[i], names[j]);
    return m;
  }

 private:
  const std::vector<double>& coeffsOf(const std::string& name) const {
    auto it = obsIndex_.find(name);
    if (it == obsIndex_.end()) throw std::invalid_argument("unknown observable: " + name);
    return obsCoeffs_[it->second];
  }

  std::vector<LatentSource> latents_;
  std::map<std::string, size_t> latentIndex_;
  std::vector<std::string> obsNames_;
  std::vector<std::vector<double>> obsCoeffs_;
  std::map<std::string, size_t> obsIndex_;
};

namespace detail {

/// log₂ det of a covariance block; det(∅) = 1. Near-singular matrices get one
/// symmetric diagonal bump of 1e-12·trace/dim, after which a nonpositive
/// determinant raises SingularModel.
inline double logDet2(Eigen::MatrixXd s) {
  if (s.rows() == 0) return 0.0;
  double det = s.determinant();
  const double diagProd = s.diagonal().prod();
  if (!(det > 1e-14 * diagProd)) {
    s.diagonal().array() += 1e-12 * s.trace() / static_cast<double>(s.rows());
    det = s.determinant();
    if (!(det > 0.0)) throw SingularModel("covariance block is singular");
  }
  return std::log2(det);
}

/// Drops zero-variance observables; duplicates within one set are also
/// collapsed so a name never enters a determinant twice.
inline std::vector<std::string> pruned(const GaussianModel& m, std::vector<std::string> names) {
  std::vector<std::string> out;
  for (auto& n : names) {
    if (!(m.variance(n) > 0.0)) continue;
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(std::move(n));
  }
  return out;
}

inline std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline void requireDisjoint(const std::vector<std::string>& a, const std::vector<std::string>& b,
                            const char* what) {
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) != b.end())
      throw std::invalid_argument(std::string("conditionalMI: sets not disjoint (") + what + "): " + x);
}

}  // namespace detail

/// I(A; B | C) in bits via ½·log₂(det Σ_AC · det Σ_BC / (det Σ_ABC · det Σ_C)),
/// clamped to [0, ∞).
inline double conditionalMI(const GaussianModel& m, const std::vector<std::string>& argA,
                            const std::vector<std::string>& argB,
                            const std::vector<std::string>& argC = {}) {
  if (argA.empty() || argB.empty())
    throw std::invalid_argument("conditionalMI: A and B must be nonempty");
  detail::requireDisjoint(argA, argB, "A,B");
  detail::requireDisjoint(argA, argC, "A,C");
  detail::requireDisjoint(argB, argC, "B,C");
  const auto a = detail::pruned(m, argA);
  const auto b = detail::pruned(m, argB);
  const auto c = detail::pruned(m, argC);
  if (a.empty() || b.empty()) return 0.0;
  const double mi = 0.5 * (detail::logDet2(m.covMatrix(detail::concat(a, c))) +
                           detail::logDet2(m.covMatrix(detail::concat(b, c))) -
                           detail::logDet2(m.covMatrix(detail::concat(detail::concat(a, b), c))) -
                           detail::logDet2(m.covMatrix(c)));
  return std::max(0.0, mi);
}

/// var(target | C) by Schur complement, clamped to [0, ∞).
inline double conditionalVariance(const GaussianModel& m, const std::string& target,
                                  const std::vector<std::string>& argC = {}) {
  if (std::find(argC.begin(), argC.end(), target) != argC.end())
    throw std::invalid_argument("conditionalVariance: target must not be in C");
  const double vt = m.variance(target);
  const auto c = detail::pruned(m, argC);
  if (c.empty()) return vt;
  Eigen::MatrixXd sc = m.covMatrix(c);
  Eigen::VectorXd s(c.size());
  for (size_t i = 0; i < c.size(); ++i) s(i) = m.cov(target, c[i]);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(sc);
  Eigen::VectorXd x = ldlt.solve(s);
  if ((sc * x - s).norm() > 1e-7 * std::max(1.0, s.norm())) {
    sc.diagonal().array() += 1e-12 * sc.trace() / static_cast<double>(sc.rows());
    ldlt.compute(sc);
    x = ldlt.solve(s);
    if ((sc * x - s).norm() > 1e-6 * std::max(1.0, s.norm()))
      throw SingularModel("conditionalVariance: conditioning covariance is singular");
  }
  return std::max(0.0, vt - s.dot(x));
}

/// Channel model as observables: X_i = W_i + V_i, the three receive signals,
/// the quantized relay observation Yhat = Yr + eta with var(eta) = q, and
/// optionally the analog relay outputs Ya_i = lambda·Yr + Z'_i.
inline GaussianModel buildModel(const ChannelParams& p, const PowerSplit& split, double q,
                                std::optional<double> afLambda = std::nullopt) {
  p.validate();
  if (!(q >= 0.0)) throw std::invalid_argument("quantizer variance q must be >= 0");
  GaussianModel m;
  m.addLatent("W1", split.pw1);
  m.addLatent("V1", split.pv1);
  m.addLatent("W2", split.pw2);
  m.addLatent("V2", split.pv2);
  m.addLatent("Z1", p.N);
  m.addLatent("Z2", p.N);
  m.addLatent("Zr", p.N);
  m.addLatent("eta", q);
  m.addObservable("W1", {{"W1", 1.0}});
  m.addObservable("W2", {{"W2", 1.0}});
  m.addObservable("X1", {{"W1", 1.0}, {"V1", 1.0}});
  m.addObservable("X2", {{"W2", 1.0}, {"V2", 1.0}});
  m.addObservable("Y1", {{"W1", p.h11}, {"V1", p.h11}, {"W2", p.h21}, {"V2", p.h21}, {"Z1", 1.0}});
  m.addObservable("Y2", {{"W1", p.h12}, {"V1", p.h12}, {"W2", p.h22}, {"V2", p.h22}, {"Z2", 1.0}});
  m.addObservable("Yr", {{"W1", p.g1}, {"V1", p.g1}, {"W2", p.g2}, {"V2", p.g2}, {"Zr", 1.0}});
  m.addObservable("Yhat",
                  {{"W1", p.g1}, {"V1", p.g1}, {"W2", p.g2}, {"V2", p.g2}, {"Zr", 1.0}, {"eta", 1.0}});
  if (afLambda) {
    const double l = *afLambda;
    m.addLatent("Zp1", 1.0);
    m.addLatent("Zp2", 1.0);
    m.addObservable("Ya1", {{"W1", l * p.g1}, {"V1", l * p.g1}, {"W2", l * p.g2}, {"V2", l * p.g2},
                            {"Zr", l}, {"Zp1", 1.0}});
    m.addObservable("Ya2", {{"W1", l * p.g1}, {"V1", l * p.g1}, {"W2", l * p.g2}, {"V2", l * p.g2},
                            {"Zr", l}, {"Zp2", 1.0}});
  }
  return m;
}

inline PowerSplit fullPrivateSplit(const ChannelParams& p) {
  return PowerSplit{p.P1, 0.0, p.P2, 0.0};
}

/// The twelve common/private MI terms of the two virtual multiple access
/// channels plus the relay improvement and quantization-loss terms, all relay
/// terms already clipped by min{R0, ·}. Time sharing is degenerate (constant).
struct MITermSet {
  double a1 = 0, d1 = 0, e1 = 0, g1 = 0;
  double a2 = 0, d2 = 0, e2 = 0, g2 = 0;
  double da1 = 0, dd1 = 0, de1 = 0, dg1 = 0;
  double da2 = 0, dd2 = 0, de2 = 0, dg2 = 0;
  double delta1 = 0, delta2 = 0;
};

inline MITermSet miTermSet(const ChannelParams& p, const PowerSplit& split, double q) {
  const GaussianModel m = buildModel(p, split, q);
  const auto mi = [&m](const std::vector<std::string>& a, const std::vector<std::string>& b,
                       const std::vector<std::string>& c) { return conditionalMI(m, a, b, c); };
  const auto clip = [&p](double v) { return std::min(p.R0, v); };
  MITermSet t;
  t.a1 = mi({"Y1"}, {"X1"}, {"W1", "W2"});
  t.d1 = mi({"Y1"}, {"X1"}, {"W2"});
  t.e1 = mi({"Y1"}, {"X1", "W2"}, {"W1"});
  t.g1 = mi({"Y1"}, {"X1", "W2"}, {});
  t.a2 = mi({"Y2"}, {"X2"}, {"W1", "W2"});
  t.d2 = mi({"Y2"}, {"X2"}, {"W1"});
  t.e2 = mi({"Y2"}, {"X2", "W1"}, {"W2"});
  t.g2 = mi({"Y2"}, {"X2", "W1"}, {});
  t.da1 = clip(mi({"Yhat"}, {"Yr"}, {"Y1", "W1", "W2"}));
  t.dd1 = clip(mi({"Yhat"}, {"Yr"}, {"Y1", "W2"}));
  t.de1 = clip(mi({"Yhat"}, {"Yr"}, {"Y1", "W1"}));
  t.dg1 = clip(mi({"Yhat"}, {"Yr"}, {"Y1"}));
  t.da2 = clip(mi({"Yhat"}, {"Yr"}, {"Y2", "W1", "W2"}));
  t.dd2 = clip(mi({"Yhat"}, {"Yr"}, {"Y2", "W1"}));
  t.de2 = clip(mi({"Yhat"}, {"Yr"}, {"Y2", "W2"}));
  t.dg2 = clip(mi({"Yhat"}, {"Yr"}, {"Y2"}));
  t.delta1 = clip(mi({"Yhat"}, {"Yr"}, {"Y1", "X1", "W2"}));
  t.delta2 = clip(mi({"Yhat"}, {"Yr"}, {"Y2", "X2", "W1"}));
  return t;
}

}  // namespace relaykit
