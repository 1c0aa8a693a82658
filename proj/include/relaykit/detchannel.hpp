#pragma once

/// Linear-deterministic interference-relay channel over GF(2). Gains become
/// bit-level shifts, additions become XOR, and the shared relay forwards
/// r0bits linear combinations of its observed levels per use. Levels are
/// MSB-first; input bit j of user k lands at receiver level j + (L - n_k),
/// so the strongest links align at the top.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "relaykit/errors.hpp"

namespace relaykit {

struct DetChannelParams {
  int n11 = 0, n21 = 0;  // strengths into receiver 1 (own, cross)
  int n12 = 0, n22 = 0;  // strengths into receiver 2 (cross, own)
  int nr1 = 0, nr2 = 0;  // strengths into the relay
  int r0bits = 0;

  void validate() const {
    for (int v : {n11, n21, n12, n22, nr1, nr2, r0bits})
      if (v < 0 || v > 32) throw std::invalid_argument("bit-level strengths must be in [0, 32]");
  }
  int txLen1() const { return std::max({n11, n12, nr1}); }
  int txLen2() const { return std::max({n21, n22, nr2}); }
  int rxLevels1() const { return std::max(n11, n21); }
  int rxLevels2() const { return std::max(n12, n22); }
  int relayLevels() const { return std::max(nr1, nr2); }
};

/// Dense GF(2) matrix, one uint64_t bitmask per row (column j = bit j).
struct GfMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<uint64_t> row;

  static GfMatrix zero(int r, int c) {
    GfMatrix m;
    m.rows = r;
    m.cols = c;
    m.row.assign(static_cast<size_t>(r), 0);
    return m;
  }
  static GfMatrix identity(int n) {
    GfMatrix m = zero(n, n);
    for (int i = 0; i < n; ++i) m.row[i] = uint64_t{1} << i;
    return m;
  }

  GfMatrix multiply(const GfMatrix& rhs) const {
    if (cols != rhs.rows) throw DimensionMismatch("GF(2) matrix product shape mismatch");
    GfMatrix out = zero(rows, rhs.cols);
    for (int i = 0; i < rows; ++i) {
      uint64_t acc = 0;
      uint64_t r = row[i];
      while (r) {
        const int j = __builtin_ctzll(r);
        r &= r - 1;
        acc ^= rhs.row[j];
      }
      out.row[i] = acc;
    }
    return out;
  }

  /// Horizontal concatenation [this | rhs].
  GfMatrix beside(const GfMatrix& rhs) const {
    if (rows != rhs.rows) throw DimensionMismatch("GF(2) concat row mismatch");
    GfMatrix out = zero(rows, cols + rhs.cols);
    for (int i = 0; i < rows; ++i) out.row[i] = row[i] | (rhs.row[i] << cols);
    return out;
  }

  GfMatrix stackedOn(const GfMatrix& below) const {
    if (cols != below.cols) throw DimensionMismatch("GF(2) stack column mismatch");
    GfMatrix out = *this;
    out.rows += below.rows;
    out.row.insert(out.row.end(), below.row.begin(), below.row.end());
    return out;
  }

  uint64_t apply(uint64_t v) const {
    uint64_t out = 0;
    for (int i = 0; i < rows; ++i)
      if (__builtin_parityll(row[i] & v)) out |= uint64_t{1} << i;
    return out;
  }

  int rank() const {
    std::vector<uint64_t> rs = row;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
      int pivot = -1;
      for (int i = r; i < rows; ++i)
        if (rs[i] >> c & 1) {
          pivot = i;
          break;
        }
      if (pivot < 0) continue;
      std::swap(rs[r], rs[pivot]);
      for (int i = 0; i < rows; ++i)
        if (i != r && (rs[i] >> c & 1)) rs[i] ^= rs[r];
      ++r;
    }
    return r;
  }

  /// Columns [first, first+count) as a new matrix.
  GfMatrix columnSlice(int first, int count) const {
    GfMatrix out = zero(rows, count);
    const uint64_t mask = count == 64 ? ~uint64_t{0} : (uint64_t{1} << count) - 1;
    for (int i = 0; i < rows; ++i) out.row[i] = (row[i] >> first) & mask;
    return out;
  }
};

/// Message-to-level encoders for both users plus the relay's forwarding map.
struct DetScheme {
  int k1 = 0, k2 = 0;
  GfMatrix enc1, enc2;   // txLen_i x k_i
  GfMatrix relayMap;     // r0bits x relayLevels
};

namespace detail {

/// L x m shift matrix: the top n input bits land at the bottom-aligned n
/// levels of an L-level receiver.
inline GfMatrix shiftMatrix(int levels, int strength, int txLen) {
  GfMatrix a = GfMatrix::zero(levels, txLen);
  for (int j = 0; j < std::min(strength, txLen); ++j) {
    const int level = j + (levels - strength);
    if (level >= 0 && level < levels) a.row[level] |= uint64_t{1} << j;
  }
  return a;
}

/// Full linear map from (u1, u2) to receiver i's stacked observation
/// [own levels; relay bits].
inline GfMatrix receiverSystem(const DetChannelParams& p, const DetScheme& s, int receiver) {
  const int m1 = p.txLen1(), m2 = p.txLen2();
  const int levels = receiver == 1 ? p.rxLevels1() : p.rxLevels2();
  const GfMatrix a1 = shiftMatrix(levels, receiver == 1 ? p.n11 : p.n12, m1).multiply(s.enc1);
  const GfMatrix a2 = shiftMatrix(levels, receiver == 1 ? p.n21 : p.n22, m2).multiply(s.enc2);
  GfMatrix sys = a1.beside(a2);
  if (p.r0bits > 0) {
    const int lr = p.relayLevels();
    const GfMatrix r1 = s.relayMap.multiply(shiftMatrix(lr, p.nr1, m1).multiply(s.enc1));
    const GfMatrix r2 = s.relayMap.multiply(shiftMatrix(lr, p.nr2, m2).multiply(s.enc2));
    sys = sys.stackedOn(r1.beside(r2));
  }
  return sys;
}

/// u_own uniquely determined from M·u iff rank(M) = rank(M_other) + k_own.
inline bool blockDecodable(const GfMatrix& sys, int ownFirst, int ownCount, int otherFirst,
                           int otherCount) {
  (void)ownFirst;
  const GfMatrix other = sys.columnSlice(otherFirst, otherCount);
  return sys.rank() == other.rank() + ownCount;
}

}  // namespace detail

inline std::pair<bool, bool> simulate(const DetChannelParams& p, const DetScheme& s) {
  p.validate();
  if (s.enc1.rows != p.txLen1() || s.enc1.cols != s.k1 || s.enc2.rows != p.txLen2() ||
      s.enc2.cols != s.k2)
    throw DimensionMismatch("encoder shape does not match channel strengths");
  if (p.r0bits > 0 &&
      (s.relayMap.rows != p.r0bits || s.relayMap.cols != p.relayLevels()))
    throw DimensionMismatch("relay map shape does not match channel strengths");
  const GfMatrix sys1 = detail::receiverSystem(p, s, 1);
  const GfMatrix sys2 = detail::receiverSystem(p, s, 2);
  const bool d1 = detail::blockDecodable(sys1, 0, s.k1, s.k1, s.k2);
  const bool d2 = detail::blockDecodable(sys2, s.k1, s.k2, 0, s.k1);
  return {d1, d2};
}

namespace detail {

inline GfMatrix matrixFromBits(uint64_t bits, int rows, int cols) {
  GfMatrix m = GfMatrix::zero(rows, cols);
  const uint64_t mask = cols == 64 ? ~uint64_t{0} : (uint64_t{1} << cols) - 1;
  for (int i = 0; i < rows; ++i) m.row[i] = (bits >> (i * cols)) & mask;
  return m;
}

}  // namespace detail

/// True if any pair of encoders (and any relay map, unless one is pinned)
/// delivers k1 and k2 message bits simultaneously. Exhaustive over all GF(2)
/// matrices; refuses searches beyond the iteration budget.
inline bool schemeExists(const DetChannelParams& p, int k1, int k2,
                         const std::optional<GfMatrix>& fixedRelayMap = std::nullopt,
                         uint64_t budget = uint64_t{1} << 26) {
  p.validate();
  const int m1 = p.txLen1(), m2 = p.txLen2();
  if (k1 > m1 || k2 > m2) return false;
  const int encBits1 = m1 * k1, encBits2 = m2 * k2;
  const int mapBits = (p.r0bits > 0 && !fixedRelayMap) ? p.r0bits * p.relayLevels() : 0;
  if (encBits1 + encBits2 + mapBits >= 63 ||
      (uint64_t{1} << (encBits1 + encBits2 + mapBits)) > budget)
    throw SearchBudgetExceeded("deterministic-scheme search space exceeds budget");
  DetScheme s;
  s.k1 = k1;
  s.k2 = k2;
  for (uint64_t e1 = 0; e1 < (uint64_t{1} << encBits1); ++e1) {
    s.enc1 = detail::matrixFromBits(e1, m1, k1);
    if (s.enc1.rank() != k1) continue;
    for (uint64_t e2 = 0; e2 < (uint64_t{1} << encBits2); ++e2) {
      s.enc2 = detail::matrixFromBits(e2, m2, k2);
      if (s.enc2.rank() != k2) continue;
      for (uint64_t rm = 0; rm < (uint64_t{1} << mapBits); ++rm) {
        if (p.r0bits > 0)
          s.relayMap = fixedRelayMap ? *fixedRelayMap
                                     : detail::matrixFromBits(rm, p.r0bits, p.relayLevels());
        else
          s.relayMap = GfMatrix::zero(0, p.relayLevels());
        const auto [d1, d2] = simulate(p, s);
        if (d1 && d2) return true;
        if (mapBits == 0) break;
      }
    }
  }
  return false;
}

/// Pareto frontier of simultaneously decodable (k1, k2) pairs.
inline std::vector<std::pair<int, int>> bruteForceBest(
    const DetChannelParams& p, int kMax,
    const std::optional<GfMatrix>& fixedRelayMap = std::nullopt,
    uint64_t budget = uint64_t{1} << 26) {
  p.validate();
  const int k1Cap = std::min(kMax, p.txLen1());
  const int k2Cap = std::min(kMax, p.txLen2());
  std::vector<std::pair<int, int>> frontier;
  int bestK2 = -1;
  for (int k1 = k1Cap; k1 >= 0; --k1) {
    int k2 = k2Cap;
    while (k2 > bestK2 && !schemeExists(p, k1, k2, fixedRelayMap, budget)) --k2;
    if (k2 > bestK2) {
      frontier.emplace_back(k1, k2);
      bestK2 = k2;
    }
  }
  return frontier;
}

inline bool frontierDominates(const std::vector<std::pair<int, int>>& frontier, int k1, int k2) {
  for (const auto& [f1, f2] : frontier)
    if (f1 >= k1 && f2 >= k2) return true;
  return false;
}

// ---- Named example configurations -----------------------------------------

struct DetFixture {
  std::string name;
  DetChannelParams params;
  DetScheme scheme;
  std::pair<int, int> withRelay;  // rate pair the stored scheme delivers
};

/// Equal-strength relay observation; forwarding the top level a1 xor b1 buys
/// each user one bit over the (1,2) no-relay point.
inline DetFixture fig1Fixture() {
  DetFixture f;
  f.name = "fig1";
  f.params = {2, 1, 1, 3, 2, 2, 1};
  f.scheme.k1 = 2;
  f.scheme.k2 = 3;
  f.scheme.enc1 = GfMatrix::identity(2);
  f.scheme.enc2 = GfMatrix::identity(3);
  f.scheme.relayMap = GfMatrix::zero(1, 2);
  f.scheme.relayMap.row[0] = 0b01;  // top relay level
  f.withRelay = {2, 3};
  return f;
}

/// Weaker own-signal at the relay; the useful forwarded level is the second
/// one (a1 xor b2), not the cleanly observed top bit.
inline DetFixture fig2Fixture() {
  DetFixture f;
  f.name = "fig2";
  f.params = {3, 2, 1, 3, 1, 2, 1};
  f.scheme.k1 = 2;
  f.scheme.k2 = 3;
  f.scheme.enc1 = GfMatrix::zero(3, 2);
  f.scheme.enc1.row[0] = 0b01;  // message bit 1 on the top level
  f.scheme.enc1.row[2] = 0b10;  // message bit 2 on the bottom level
  f.scheme.enc2 = GfMatrix::identity(3);
  f.scheme.relayMap = GfMatrix::zero(1, 2);
  f.scheme.relayMap.row[0] = 0b10;  // second relay level
  f.withRelay = {2, 3};
  return f;
}

struct DetExampleReport {
  std::string name;
  std::vector<std::pair<int, int>> noRelayFrontier;
  std::pair<int, int> baseline;   // frontier point the relay scheme improves on
  std::pair<int, int> withRelay;
  bool schemeDecodes = false;
  bool gainOneEach = false;       // withRelay = baseline + (1,1)
  bool relayNeeded = false;       // withRelay pair not achievable without relay
  bool passed = false;
};

inline DetExampleReport verifyFixture(const DetFixture& f) {
  DetExampleReport rep;
  rep.name = f.name;
  rep.withRelay = f.withRelay;
  const auto [d1, d2] = simulate(f.params, f.scheme);
  rep.schemeDecodes = d1 && d2;
  DetChannelParams noRelay = f.params;
  noRelay.r0bits = 0;
  rep.noRelayFrontier = bruteForceBest(noRelay, 8);
  rep.baseline = {f.withRelay.first - 1, f.withRelay.second - 1};
  rep.gainOneEach = frontierDominates(rep.noRelayFrontier, rep.baseline.first, rep.baseline.second);
  rep.relayNeeded = !frontierDominates(rep.noRelayFrontier, f.withRelay.first, f.withRelay.second);
  rep.passed = rep.schemeDecodes && rep.gainOneEach && rep.relayNeeded;
  return rep;
}

/// The second example's point: the bit-level the relay forwards matters.
/// Forwarding the second level enables a pair the top-level map cannot reach.
inline DetExampleReport verifyExample2() {
  const DetFixture f = fig2Fixture();
  DetExampleReport rep = verifyFixture(f);
  GfMatrix topLevelMap = GfMatrix::zero(1, 2);
  topLevelMap.row[0] = 0b01;
  const auto topFrontier = bruteForceBest(f.params, 8, topLevelMap);
  const bool secondLevelStrictlyBetter =
      !frontierDominates(topFrontier, f.withRelay.first, f.withRelay.second);
  rep.passed = rep.passed && secondLevelStrictlyBetter;
  return rep;
}

// ---- JSON fixture files ----------------------------------------------------

inline GfMatrix gfMatrixFromJson(const nlohmann::json& j, int rows, int cols) {
  GfMatrix m = GfMatrix::zero(rows, cols);
  if (static_cast<int>(j.size()) != rows) throw DimensionMismatch("fixture matrix row count");
  for (int i = 0; i < rows; ++i) {
    const auto& r = j.at(i);
    if (static_cast<int>(r.size()) != cols) throw DimensionMismatch("fixture matrix column count");
    for (int c = 0; c < cols; ++c)
      if (r.at(c).get<int>() & 1) m.row[i] |= uint64_t{1} << c;
  }
  return m;
}

inline nlohmann::json gfMatrixToJson(const GfMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows; ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (int c = 0; c < m.cols; ++c) r.push_back(static_cast<int>(m.row[i] >> c & 1));
    rows.push_back(r);
  }
  return rows;
}

inline DetFixture fixtureFromJson(const nlohmann::json& j) {
  DetFixture f;
  f.name = j.value("name", "fixture");
  const auto& pj = j.at("params");
  f.params = {pj.at("n11").get<int>(), pj.at("n21").get<int>(), pj.at("n12").get<int>(),
              pj.at("n22").get<int>(), pj.at("nr1").get<int>(), pj.at("nr2").get<int>(),
              pj.at("r0bits").get<int>()};
  f.params.validate();
  const auto& sj = j.at("scheme");
  f.scheme.k1 = sj.at("k1").get<int>();
  f.scheme.k2 = sj.at("k2").get<int>();
  f.scheme.enc1 = gfMatrixFromJson(sj.at("enc1"), f.params.txLen1(), f.scheme.k1);
  f.scheme.enc2 = gfMatrixFromJson(sj.at("enc2"), f.params.txLen2(), f.scheme.k2);
  f.scheme.relayMap = gfMatrixFromJson(sj.at("relayMap"), f.params.r0bits, f.params.relayLevels());
  const auto& wr = j.at("withRelay");
  f.withRelay = {wr.at(0).get<int>(), wr.at(1).get<int>()};
  return f;
}

inline nlohmann::json fixtureToJson(const DetFixture& f) {
  return nlohmann::json{
      {"name", f.name},
      {"params",
       {{"n11", f.params.n11},
        {"n21", f.params.n21},
        {"n12", f.params.n12},
        {"n22", f.params.n22},
        {"nr1", f.params.nr1},
        {"nr2", f.params.nr2},
        {"r0bits", f.params.r0bits}}},
      {"scheme",
       {{"k1", f.scheme.k1},
        {"k2", f.scheme.k2},
        {"enc1", gfMatrixToJson(f.scheme.enc1)},
        {"enc2", gfMatrixToJson(f.scheme.enc2)},
        {"relayMap", gfMatrixToJson(f.scheme.relayMap)}}},
      {"withRelay", {f.withRelay.first, f.withRelay.second}}};
}

inline nlohmann::json reportToJson(const DetExampleReport& rep) {
  nlohmann::json frontier = nlohmann::json::array();
  for (const auto& [k1, k2] : rep.noRelayFrontier) frontier.push_back({k1, k2});
  return nlohmann::json{{"name", rep.name},
                        {"noRelayFrontier", frontier},
                        {"baseline", {rep.baseline.first, rep.baseline.second}},
                        {"withRelay", {rep.withRelay.first, rep.withRelay.second}},
                        {"schemeDecodes", rep.schemeDecodes},
                        {"gainOneEach", rep.gainOneEach},
                        {"relayNeeded", rep.relayNeeded},
                        {"passed", rep.passed}};
}

}  // namespace relaykit
