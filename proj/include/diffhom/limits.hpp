#pragma once

#include <cstddef>
#include <string>

#include "diffhom/errors.hpp"

namespace diffhom {

// Size caps guarding the exact linear-algebra routines.
struct Limits {
  std::size_t max_monomials = 200000;  // columns of a jet-invariant system
  std::size_t max_box = 1u << 20;      // (k+1)^d coordinate / box spaces
  std::size_t max_enumeration = 5000000;

  void check_monomials(std::size_t n, const std::string& what) const {
    if (n > max_monomials)
      throw ResourceLimit(what + ": " + std::to_string(n) + " monomials exceed cap " +
                          std::to_string(max_monomials));
  }
  void check_box(std::size_t n, const std::string& what) const {
    if (n > max_box)
      throw ResourceLimit(what + ": box dimension " + std::to_string(n) + " exceeds cap " +
                          std::to_string(max_box));
  }
  void check_enumeration(std::size_t n, const std::string& what) const {
    if (n > max_enumeration)
      throw ResourceLimit(what + ": search space " + std::to_string(n) + " exceeds cap " +
                          std::to_string(max_enumeration));
  }
};

// Integer power as size_t, saturating at SIZE_MAX.
inline std::size_t checked_pow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (base != 0 && r > static_cast<std::size_t>(-1) / base) return static_cast<std::size_t>(-1);
    r *= base;
  }
  return r;
}

}  // namespace diffhom
