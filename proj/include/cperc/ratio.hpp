#pragma once

#include <cstdint>

#include "cperc/errors.hpp"

namespace cperc {

// Exact slope-window tests. Validity verdicts never go through floating
// point: the dyadic windows use 128-bit cross multiplication and the
// 2^-(j+7/2) windows use sign tests in Z[sqrt(2)].

namespace detail {

using i128 = __int128;

inline i128 checked_narrow(i128 r) {
    // Keep |r| < 2^62 so squaring fits unsigned 128-bit math.
    const i128 bound = static_cast<i128>(1) << 62;
    if (r > bound || r < -bound) {
        throw OverflowError("slope comparison operand exceeds 2^62");
    }
    return r;
}

inline i128 mul_guarded(i128 a, i128 b) { return checked_narrow(checked_narrow(a) * checked_narrow(b)); }

// u + v*sqrt(2) >= 0 for |u|,|v| < 2^62.
inline bool nonneg_plus_sqrt2(i128 u, i128 v) {
    if (u >= 0 && v >= 0) return true;
    if (u < 0 && v < 0) return false;
    const unsigned __int128 uu = static_cast<unsigned __int128>(u < 0 ? -u : u);
    const unsigned __int128 vv = static_cast<unsigned __int128>(v < 0 ? -v : v);
    if (v >= 0) return 2 * vv * vv >= uu * uu;  // u < 0
    return uu * uu >= 2 * vv * vv;              // v < 0
}

}  // namespace detail

// (1 - 2^-e)/r <= num/den <= r (1 + 2^-e), exact, for num,den >= 0.
// den==0 && num==0 passes (no constraint between adjacent anchors);
// otherwise a zero on one side fails the positive window.
inline bool slope_within_dyadic(std::int64_t num, std::int64_t den, std::int64_t r, int e) {
    if (num < 0 || den < 0) return false;
    if (den == 0) return num == 0;
    if (num == 0) return false;
    if (e < 0 || e > 60) throw DomainError("slope_within_dyadic: exponent out of range");
    using detail::i128;
    const i128 pow2 = static_cast<i128>(1) << e;
    // lower: r*num*2^e >= den*(2^e - 1)
    if (detail::mul_guarded(detail::mul_guarded(pow2, r), num) <
        detail::mul_guarded(pow2 - 1, den)) {
        return false;
    }
    // upper: num*2^e <= r*den*(2^e + 1)
    return detail::mul_guarded(pow2, num) <=
           detail::mul_guarded(detail::mul_guarded(pow2 + 1, r), den);
}

// (1 - 2^-(j+7/2))/r <= num/den <= r (1 + 2^-(j+7/2)), exact over Z[sqrt2];
// 2^-(j+7/2) = sqrt(2) * 2^-(j+4). Same degenerate-gap convention as above.
inline bool slope_within_half_exponent(std::int64_t num, std::int64_t den, std::int64_t r, int j) {
    if (num < 0 || den < 0) return false;
    if (den == 0) return num == 0;
    if (num == 0) return false;
    if (j < 0 || j + 4 > 40) throw DomainError("slope_within_half_exponent: level out of range");
    using detail::i128;
    const i128 pow2 = static_cast<i128>(1) << (j + 4);
    // lower: r*num >= den*(1 - sqrt2/2^(j+4))
    //   <=>  (r*num - den)*2^(j+4) + den*sqrt2 >= 0
    const i128 u = detail::mul_guarded(static_cast<i128>(r) * num - den, pow2);
    if (!detail::nonneg_plus_sqrt2(u, den)) return false;
    // upper: num <= r*den*(1 + sqrt2/2^(j+4))
    //   <=>  (r*den - num)*2^(j+4) + r*den*sqrt2 >= 0
    const i128 w = detail::mul_guarded(static_cast<i128>(r) * den - num, pow2);
    return detail::nonneg_plus_sqrt2(w, detail::mul_guarded(r, den));
}

}  // namespace cperc
