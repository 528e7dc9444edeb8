#pragma once

// The Morse model of S^∞/(Z/pZ) truncated to S^{2l+1}, and the Euler-class
// constant (-1)^n u^{n(p-1)} obtained from Wilson's theorem.

#include "smith/fp.hpp"
#include "smith/rational.hpp"
#include "smith/tate.hpp"

#include <cstdint>
#include <vector>

namespace smith {

struct CriticalPoint {
  int level = 0;       // l
  int root_index = 0;  // position of z_l among its p candidates
  bool odd = false;    // index 2l+1 when odd, 2l when even

  int index() const { return 2 * level + (odd ? 1 : 0); }
  /// Argument of z_l in turns: k/p on μ_p (odd index), k/p + 1/2 on -μ_p.
  Rational angle_turns(Prime p) const;
};

/// p points of each index 0, ..., 2 l_max + 1, ordered by index then root.
std::vector<CriticalPoint> enumerate_critical_points(Prime p, int l_max);

struct ResolutionHomology {
  std::vector<std::size_t> dims;  // degrees 0 .. length-1
  /// dims[0] = 1 and dims[k] = 0 for 0 < k < length-1; the last degree is a
  /// truncation boundary and is not constrained.
  bool matches_point() const;
};

/// F_p[G] --(1-σ)--> F_p[G] --N--> F_p[G] --(1-σ)--> ... with `length` terms.
ResolutionHomology resolution_homology(Prime p, int length);

/// (p-1)! mod p.
FpScalar wilson_constant(Prime p);

struct EulerConstant {
  FpScalar sign;
  std::int64_t u_exponent = 0;

  RpElement as_rp() const;
};

/// sign = wilson_constant(p)^n, exponent n(p-1).
EulerConstant local_euler_constant(int n, Prime p);

}  // namespace smith
