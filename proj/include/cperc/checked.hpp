#pragma once

#include <cstdint>
#include <string>

#include "cperc/errors.hpp"

namespace cperc {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError(std::string("integer overflow in ") + what);
    }
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError(std::string("integer overflow in ") + what);
    }
    return r;
}

inline std::int64_t checked_pow(std::int64_t base, std::int64_t exp, const char* what) {
    if (base <= 0 || exp < 0) {
        throw DomainError(std::string("checked_pow needs base>0, exp>=0 in ") + what);
    }
    std::int64_t result = 1;
    for (std::int64_t i = 0; i < exp; ++i) {
        result = checked_mul(result, base, what);
    }
    return result;
}

}  // namespace cperc
