#include "cperc/sequence.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "cperc/rng.hpp"

namespace cperc {

bool is_open(const Sequence& x, const Sequence& y, Site s) {
    return x.at(s.col) != y.at(s.row);
}

Sequence generate(std::int64_t alphabet, std::int64_t n, std::uint64_t seed, Role role) {
    if (alphabet < 3) throw DomainError("generate: alphabet size must be >= 3");
    if (n < 1) throw DomainError("generate: length must be >= 1");
    Sequence s;
    s.alphabet = alphabet;
    s.role = role;
    s.items.reserve(static_cast<std::size_t>(n));
    Xoshiro256ss rng(derive_seed(seed, role == Role::x_walk ? 1 : 2));
    for (std::int64_t i = 0; i < n; ++i) {
        s.items.push_back(static_cast<std::uint32_t>(rng.bounded(static_cast<std::uint64_t>(alphabet)) + 1));
    }
    return s;
}

void write_sequence_text(const Sequence& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << "M=" << s.alphabet << " n=" << s.size() << "\n";
    for (std::int64_t i = 0; i < s.size(); ++i) {
        out << s.items[static_cast<std::size_t>(i)];
        out << ((i + 1) % 20 == 0 ? '\n' : ' ');
    }
    out << "\n";
}

namespace {

void put_u32(std::ofstream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in, const std::string& path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) {
        throw ParseError("truncated binary sequence file '" + path + "'");
    }
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_sequence_binary(const Sequence& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    put_u32(out, static_cast<std::uint32_t>(s.alphabet));
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    for (std::uint32_t v : s.items) put_u32(out, v);
}

Sequence read_sequence_file(const std::string& path, Role role) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open sequence file '" + path + "'");
    char head[2] = {0, 0};
    in.read(head, 2);
    in.seekg(0);
    Sequence s;
    s.role = role;
    if (head[0] == 'M' && head[1] == '=') {
        std::string header;
        std::getline(in, header);
        std::int64_t m = 0, n = 0;
        if (std::sscanf(header.c_str(), "M=%ld n=%ld", &m, &n) != 2) {
            throw ParseError("bad sequence header in '" + path + "' (want 'M=<int> n=<int>')");
        }
        s.alphabet = m;
        s.items.reserve(static_cast<std::size_t>(n));
        std::int64_t v = 0;
        while (static_cast<std::int64_t>(s.items.size()) < n && (in >> v)) {
            if (v < 1 || v > m) throw ParseError("sequence item out of range in '" + path + "'");
            s.items.push_back(static_cast<std::uint32_t>(v));
        }
        if (static_cast<std::int64_t>(s.items.size()) != n) {
            throw ParseError("sequence file '" + path + "' shorter than its header claims");
        }
    } else {
        s.alphabet = get_u32(in, path);
        const std::uint32_t n = get_u32(in, path);
        s.items.reserve(n);
        for (std::uint32_t i = 0; i < n; ++i) {
            const std::uint32_t v = get_u32(in, path);
            if (v < 1 || v > s.alphabet) throw ParseError("sequence item out of range in '" + path + "'");
            s.items.push_back(v);
        }
    }
    if (s.alphabet < 3) throw DomainError("sequence file '" + path + "' has alphabet < 3");
    return s;
}

}  // namespace cperc
