#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "oddsym/errors.hpp"

namespace oddsym {

// Odd generators. Total order: by kind (theta < xi < po < eps), then index.
enum class OddKind : std::uint8_t { theta = 0, xi = 1, po = 2, eps = 3 };

inline constexpr int kMaxOddIndex = 16;

struct OddGenerator {
  OddKind kind = OddKind::theta;
  int index = 1;

  friend bool operator==(const OddGenerator&, const OddGenerator&) = default;

  static OddGenerator theta(int i) { return {OddKind::theta, i}; }
  static OddGenerator xi(int i) { return {OddKind::xi, i}; }
  static OddGenerator po(int i) { return {OddKind::po, i}; }
  static OddGenerator eps(int i) { return {OddKind::eps, i}; }

  bool valid() const { return index >= 1 && index <= kMaxOddIndex; }

  int bit() const {
    if (!valid()) throw UnknownIndex("unknown odd generator index " + std::to_string(index));
    return static_cast<int>(kind) * kMaxOddIndex + index - 1;
  }

  static OddGenerator from_bit(int b) {
    return {static_cast<OddKind>(b / kMaxOddIndex), b % kMaxOddIndex + 1};
  }

  std::string name() const {
    switch (kind) {
      case OddKind::theta: return "th" + std::to_string(index);
      case OddKind::xi: return "xi" + std::to_string(index);
      case OddKind::po: return "po" + std::to_string(index);
      case OddKind::eps: return "eps" + std::to_string(index);
    }
    return "?";
  }
};

/// A product of distinct odd generators in ascending order, stored as a bit set.
using ThetaMonomial = std::uint64_t;

namespace mono {

inline constexpr ThetaMonomial bit(int b) { return ThetaMonomial{1} << b; }

inline ThetaMonomial of(const OddGenerator& g) { return bit(g.bit()); }

inline int degree(ThetaMonomial m) { return std::popcount(m); }

inline int parity(ThetaMonomial m) { return std::popcount(m) & 1; }

inline ThetaMonomial kind_mask(OddKind k) {
  return ((ThetaMonomial{1} << kMaxOddIndex) - 1) << (static_cast<int>(k) * kMaxOddIndex);
}

/// Generators below bit b.
inline ThetaMonomial below(int b) { return b >= 64 ? ~ThetaMonomial{0} : b == 0 ? 0 : (ThetaMonomial{1} << b) - 1; }

/// Sign of reordering the concatenation a*b (a, b disjoint) into ascending
/// order: (-1)^(number of pairs i in a, j in b with i > j).
inline int product_sign(ThetaMonomial a, ThetaMonomial b) {
  int swaps = 0;
  while (b) {
    int j = std::countr_zero(b);
    b &= b - 1;
    swaps += std::popcount(a & ~below(j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

inline std::vector<OddGenerator> generators(ThetaMonomial m) {
  std::vector<OddGenerator> out;
  while (m) {
    out.push_back(OddGenerator::from_bit(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

/// Canonical printing order: by degree, then by ascending bit pattern.
struct Order {
  bool operator()(ThetaMonomial a, ThetaMonomial b) const {
    int da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

}  // namespace mono
}  // namespace oddsym
