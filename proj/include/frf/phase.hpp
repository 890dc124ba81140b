#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>

#include "frf/errors.hpp"

namespace frf {

namespace detail {

// Enough limbs for exact arithmetic mod 2^(64*17) = 2^1088.  Any finite
// double is (odd m) * 2^-e with e <= 1074, so reducing an integer mod 2^e
// never needs more than 17 limbs.
inline constexpr int phase_limbs = 17;

// Little-endian fixed-width accumulator holding a nonnegative integer
// mod 2^(64*phase_limbs).  Truncation at the top limb is exact modular
// arithmetic, so repeated multiplication never overflows or loses the
// residue we need.
struct LimbPow {
    std::array<std::uint64_t, phase_limbs> w{};
    int len = 1;

    LimbPow() { w[0] = 1; }

    void mul(std::uint64_t n) {
        unsigned __int128 carry = 0;
        const int m = len < phase_limbs ? len + 1 : phase_limbs;
        for (int j = 0; j < m; ++j) {
            unsigned __int128 cur = carry;
            if (j < len) cur += static_cast<unsigned __int128>(w[j]) * n;
            w[j] = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
        len = m;
    }
};

}  // namespace detail

// Computes frac(N * t) exactly for one fixed double t and arbitrary
// integers N (given as n^k or as raw limbs).
//
// t is decomposed once as sign * m * 2^-e with m an odd integer (m = 0
// for t = 0).  Then N * t mod 1 = (N * m mod 2^e) * 2^-e, which is pure
// integer arithmetic; the only rounding is the final conversion to
// double.  This keeps phases meaningful for n^k or b^j far beyond where
// naive floating-point products lose all fractional information.
class PhaseReducer {
  public:
    explicit PhaseReducer(double t);

    // frac(n^k * t) in [0, 1).  n >= 1, k >= 1.
    double pow_frac(std::uint64_t n, int k) const;

    // frac(N * t) in [0, 1) for N given as little-endian 64-bit limbs.
    double limbs_frac(std::span<const std::uint64_t> n_limbs) const;

    bool integral() const { return integral_; }

  private:
    std::uint64_t mantissa_ = 0;
    int shift_ = 0;  // |t| = mantissa_ * 2^-shift_
    bool negative_ = false;
    bool integral_ = false;  // t is an integer; every phase vanishes
};

// e^(2*pi*i*x) for x in [0, 1).
inline std::complex<double> unit_phase(double frac01) {
    constexpr double two_pi = 6.283185307179586476925286766559;
    const double arg = two_pi * frac01;
    return {std::cos(arg), std::sin(arg)};
}

}  // namespace frf
