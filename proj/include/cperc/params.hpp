#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cperc {

// Shared result type for non-throwing validators.
struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
    void fail(std::string what) {
        ok = false;
        violations.push_back(std::move(what));
    }
};

enum class Mode { strict, relaxed };

// Model constants and derived scales, L_j = L0^(alpha^j). Immutable by
// convention after construction; plain integers, cheap to copy and share.
//
// Strict mode pins the generalized exponents to their fixed values
// (block length alpha-1, chunk size 4, good-run length 3, geometric
// padding rate 4); relaxed mode decouples them so multi-level runs fit
// on a desk.
struct Params {
    std::int64_t alpha = 10;
    std::int64_t beta = 600;
    std::int64_t delta = 50;
    std::int64_t m = 60000;
    std::int64_t k0 = 300000;
    std::int64_t slope_r = 400000;  // R
    std::int64_t l0 = 10;           // L0
    Mode mode = Mode::strict;

    std::int64_t p_len = 9;
    std::int64_t p_chunk = 4;
    std::int64_t p_run = 3;
    std::int64_t p_geom = 4;

    std::int64_t len_exponent() const { return mode == Mode::strict ? alpha - 1 : p_len; }
    std::int64_t chunk_exponent() const { return mode == Mode::strict ? 4 : p_chunk; }
    std::int64_t run_exponent() const { return mode == Mode::strict ? 3 : p_run; }
    std::int64_t geom_exponent() const { return mode == Mode::strict ? 4 : p_geom; }

    static Params paper();    // the published strict constants
    static Params toy();      // desk-scale relaxed defaults
    static Params relaxed(std::int64_t alpha, std::int64_t l0);
};

// Checks the strict-mode constraint system (alpha>6, delta>max(2a,48),
// beta>a(d+1), m>9ab, k0>36ab, R>6(m+1)) or the relaxed bounds. Pure,
// never throws.
ValidationReport validate(const Params& p);

// L_j = L0^(alpha^j). Throws OverflowError naming j when not representable
// in 64 bits.
std::int64_t scale(const Params& p, int level);

// m_j = m + 2^-j (tail estimate exponent).
double tail_exponent(const Params& p, int level);

// Plain-text parameter files: one key=value per line, '#' comments.
Params load_params_file(const std::string& path);
Params parse_params_text(const std::string& text);
void apply_override(Params& p, const std::string& key, const std::string& value);
std::string to_key_value(const Params& p);

}  // namespace cperc
