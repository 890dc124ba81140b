#include "frf/phase.hpp"

#include <algorithm>
#include <bit>

namespace frf {

PhaseReducer::PhaseReducer(double t) {
    if (!std::isfinite(t)) throw argument_error("PhaseReducer: t must be finite");
    negative_ = std::signbit(t);
    const double at = std::fabs(t);
    if (at == 0.0) {
        integral_ = true;
        return;
    }
    int ex = 0;
    const double mant = std::frexp(at, &ex);  // at = mant * 2^ex, mant in [1/2, 1)
    mantissa_ = static_cast<std::uint64_t>(std::ldexp(mant, 53));
    shift_ = 53 - ex;
    // Strip trailing zero bits so mantissa_ is odd; shift_ <= 1074 afterwards.
    while (shift_ > 0 && (mantissa_ & 1u) == 0) {
        mantissa_ >>= 1;
        --shift_;
    }
    if (shift_ <= 0) integral_ = true;  // |t| is an integer
}

double PhaseReducer::limbs_frac(std::span<const std::uint64_t> n_limbs) const {
    if (integral_) return 0.0;
    const int e = shift_;  // 1..1074
    const int need = (e + 63) / 64;
    // p = (N * mantissa_) mod 2^(64*need)
    std::uint64_t p[detail::phase_limbs] = {};
    unsigned __int128 carry = 0;
    const int n = std::min<int>(static_cast<int>(n_limbs.size()), need);
    for (int i = 0; i < n; ++i) {
        const unsigned __int128 cur =
            static_cast<unsigned __int128>(n_limbs[i]) * mantissa_ + carry;
        p[i] = static_cast<std::uint64_t>(cur);
        carry = cur >> 64;
    }
    if (n < need) p[n] = static_cast<std::uint64_t>(carry);
    // Keep the low e bits: p mod 2^e.
    const int top = (e - 1) / 64;
    const int bits = e - 64 * top;  // 1..64 valid bits in p[top]
    if (bits < 64) p[top] &= (std::uint64_t{1} << bits) - 1;
    // Sum p[i] * 2^(64i - e) from the top; limbs below top-2 sit under
    // 2^-65 and cannot affect the rounded double.
    long double v = 0.0L;
    for (int i = top; i >= 0 && i >= top - 2; --i)
        v += std::ldexp(static_cast<long double>(p[i]), 64 * i - e);
    double r = static_cast<double>(v);
    if (r >= 1.0) r = std::nextafter(1.0, 0.0);
    if (negative_ && r != 0.0) r = 1.0 - r;
    if (r >= 1.0) r = 0.0;
    return r;
}

double PhaseReducer::pow_frac(std::uint64_t n, int k) const {
    if (n < 1) throw argument_error("pow_frac: n must be >= 1");
    if (k < 1) throw argument_error("pow_frac: k must be >= 1");
    if (integral_) return 0.0;
    const int nb = 64 - std::countl_zero(n | 1u);
    if (nb * k <= 126) {
        // n^k fits in 128 bits
        unsigned __int128 N = 1;
        for (int i = 0; i < k; ++i) N *= n;
        const std::uint64_t limbs[2] = {static_cast<std::uint64_t>(N),
                                        static_cast<std::uint64_t>(N >> 64)};
        return limbs_frac(limbs);
    }
    detail::LimbPow acc;
    for (int i = 0; i < k; ++i) acc.mul(n);
    return limbs_frac(std::span<const std::uint64_t>(acc.w.data(), acc.len));
}

}  // namespace frf
