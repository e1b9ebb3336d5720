#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace diffhom {

// Variable families. Declaration order is the primary sort key of VarId.
enum class Family : std::uint8_t {
  JetX,     // X_i^(j): projective variable i, derivation order j
  TensorY,  // Y_s^(t): tensor slot s (1-based), order t
  Z,        // Z_i (1-based), harmonic side
  Lambda,   // l_m: m-th Taylor coefficient of a formal series, alpha^(m)(0)/m!
};

struct VarId {
  Family family = Family::JetX;
  int major = 0;  // i for X, s for Y, i for Z, m for Lambda
  int minor = 0;  // j for X, t for Y, unused otherwise

  static constexpr VarId X(int i, int j) { return {Family::JetX, i, j}; }
  static constexpr VarId Y(int s, int t) { return {Family::TensorY, s, t}; }
  static constexpr VarId Zv(int i) { return {Family::Z, i, 0}; }
  static constexpr VarId L(int m) { return {Family::Lambda, m, 0}; }

  // Derivation order for X and Y variables, 0 otherwise.
  constexpr int order() const {
    return (family == Family::JetX || family == Family::TensorY) ? minor : 0;
  }

  auto operator<=>(const VarId&) const = default;
};

inline std::string to_string(const VarId& v) {
  switch (v.family) {
    case Family::JetX:
      return "X" + std::to_string(v.major) + "^(" + std::to_string(v.minor) + ")";
    case Family::TensorY:
      return "Y" + std::to_string(v.major) + "^(" + std::to_string(v.minor) + ")";
    case Family::Z:
      return "Z" + std::to_string(v.major);
    case Family::Lambda:
      return "l" + std::to_string(v.major);
  }
  return "?";
}

}  // namespace diffhom
