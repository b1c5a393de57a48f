#include "cperc/params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cperc/checked.hpp"
#include "cperc/errors.hpp"

namespace cperc {

Params Params::paper() {
    Params p;
    p.alpha = 10;
    p.beta = 600;
    p.delta = 50;
    p.m = 60000;
    p.k0 = 300000;
    p.slope_r = 400000;
    p.l0 = 10;
    p.mode = Mode::strict;
    p.p_len = p.alpha - 1;
    p.p_chunk = 4;
    p.p_run = 3;
    p.p_geom = 4;
    return p;
}

Params Params::toy() {
    Params p;
    p.alpha = 2;
    p.beta = 2;
    p.delta = 2;
    p.m = 2;
    p.k0 = 3;
    p.slope_r = 4;
    p.l0 = 4;
    p.mode = Mode::relaxed;
    p.p_len = 2;
    p.p_chunk = 1;
    p.p_run = 1;
    p.p_geom = 2;
    return p;
}

Params Params::relaxed(std::int64_t alpha, std::int64_t l0) {
    Params p = Params::toy();
    p.alpha = alpha;
    p.l0 = l0;
    return p;
}

ValidationReport validate(const Params& p) {
    ValidationReport rep;
    if (p.l0 < 2) rep.fail("L0>=2");
    if (p.mode == Mode::strict) {
        if (!(p.alpha > 6)) rep.fail("alpha>6");
        if (!(p.delta > std::max<std::int64_t>(2 * p.alpha, 48))) rep.fail("delta>max(2*alpha,48)");
        if (!(p.beta > p.alpha * (p.delta + 1))) rep.fail("beta>alpha*(delta+1)");
        if (!(p.m > 9 * p.alpha * p.beta)) rep.fail("m>9*alpha*beta");
        if (!(p.k0 > 36 * p.alpha * p.beta)) rep.fail("k0>36*alpha*beta");
        if (!(p.slope_r > 6 * (p.m + 1))) rep.fail("R>6*(m+1)");
    } else {
        if (!(p.alpha >= 1)) rep.fail("alpha>=1");
        if (!(p.beta >= 1)) rep.fail("beta>=1");
        if (!(p.delta >= 1)) rep.fail("delta>=1");
        if (!(p.m >= 1)) rep.fail("m>=1");
        if (!(p.k0 >= 1)) rep.fail("k0>=1");
        if (!(p.slope_r >= 2)) rep.fail("R>=2");
        if (!(p.p_len >= 1)) rep.fail("p_len>=1");
        if (!(p.p_chunk >= 1)) rep.fail("p_chunk>=1");
        if (!(p.p_run >= 1)) rep.fail("p_run>=1");
        if (!(p.p_geom >= 1)) rep.fail("p_geom>=1");
    }
    return rep;
}

std::int64_t scale(const Params& p, int level) {
    if (level < 0) throw DomainError("scale: level must be >= 0");
    std::int64_t exponent = 1;
    for (int i = 0; i < level; ++i) {
        if (__builtin_mul_overflow(exponent, p.alpha, &exponent)) {
            throw OverflowError("scale: alpha^j overflows 64 bits at j=" + std::to_string(level));
        }
    }
    std::int64_t result = 1;
    for (std::int64_t i = 0; i < exponent; ++i) {
        if (__builtin_mul_overflow(result, p.l0, &result)) {
            throw OverflowError("scale: L0^(alpha^j) overflows 64 bits at j=" + std::to_string(level));
        }
    }
    return result;
}

double tail_exponent(const Params& p, int level) {
    return static_cast<double>(p.m) + std::ldexp(1.0, -level);
}

namespace {

Mode parse_mode(const std::string& v) {
    if (v == "strict") return Mode::strict;
    if (v == "relaxed") return Mode::relaxed;
    throw ParseError("unknown mode '" + v + "' (want strict|relaxed)");
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const std::int64_t r = std::stoll(v, &pos);
        if (pos != v.size()) throw ParseError("");
        return r;
    } catch (...) {
        throw ParseError("value for '" + key + "' is not an integer: '" + v + "'");
    }
}

}  // namespace

void apply_override(Params& p, const std::string& key, const std::string& value) {
    if (key == "alpha") p.alpha = parse_int(key, value);
    else if (key == "beta") p.beta = parse_int(key, value);
    else if (key == "delta") p.delta = parse_int(key, value);
    else if (key == "m") p.m = parse_int(key, value);
    else if (key == "k0") p.k0 = parse_int(key, value);
    else if (key == "R") p.slope_r = parse_int(key, value);
    else if (key == "L0") p.l0 = parse_int(key, value);
    else if (key == "mode") p.mode = parse_mode(value);
    else if (key == "p_len") p.p_len = parse_int(key, value);
    else if (key == "p_chunk") p.p_chunk = parse_int(key, value);
    else if (key == "p_run") p.p_run = parse_int(key, value);
    else if (key == "p_geom") p.p_geom = parse_int(key, value);
    else throw ParseError("unknown parameter key '" + key + "'");
}

Params parse_params_text(const std::string& text) {
    Params p = Params::paper();
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError("params line " + std::to_string(lineno) + ": expected key=value");
        }
        auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t");
            const auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        apply_override(p, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
    }
    return p;
}

Params load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open params file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_params_text(buf.str());
}

std::string to_key_value(const Params& p) {
    std::ostringstream out;
    out << "alpha=" << p.alpha << "\n"
        << "beta=" << p.beta << "\n"
        << "delta=" << p.delta << "\n"
        << "m=" << p.m << "\n"
        << "k0=" << p.k0 << "\n"
        << "R=" << p.slope_r << "\n"
        << "L0=" << p.l0 << "\n"
        << "mode=" << (p.mode == Mode::strict ? "strict" : "relaxed") << "\n"
        << "p_len=" << p.p_len << "\n"
        << "p_chunk=" << p.p_chunk << "\n"
        << "p_run=" << p.p_run << "\n"
        << "p_geom=" << p.p_geom << "\n";
    return out.str();
}

}  // namespace cperc
