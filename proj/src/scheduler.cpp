#include "cperc/scheduler.hpp"

#include <fstream>

namespace cperc {

Schedule extract_schedule(const std::vector<Site>& path, const Sequence& x, const Sequence& y) {
    if (path.empty()) throw DomainError("extract_schedule: empty path");
    if (path[0].col != 1 || path[0].row != 1) {
        throw DomainError("extract_schedule: path must start at (1,1)");
    }
    Schedule s;
    s.steps.reserve(path.size() - 1);
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (!is_open(x, y, path[i])) {
            throw DomainError("extract_schedule: closed site at path index " + std::to_string(i));
        }
        if (i == 0) continue;
        const std::int64_t dc = path[i].col - path[i - 1].col;
        const std::int64_t dr = path[i].row - path[i - 1].row;
        if (dc == 1 && dr == 0) {
            s.steps.push_back({Move::advance_x, x.at(path[i].col)});
        } else if (dc == 0 && dr == 1) {
            s.steps.push_back({Move::advance_y, y.at(path[i].row)});
        } else {
            throw DomainError("extract_schedule: non-oriented step at path index " +
                              std::to_string(i));
        }
    }
    return s;
}

VerifyResult verify_schedule(const Schedule& s, const Sequence& x, const Sequence& y) {
    if (x.size() < 1 || y.size() < 1) return {false, 0};
    std::int64_t ix = 1, iy = 1;
    std::uint32_t px = x.items[0], py = y.items[0];
    if (px == py) return {false, 0};
    for (std::size_t k = 0; k < s.steps.size(); ++k) {
        const auto& st = s.steps[k];
        const std::int64_t idx = static_cast<std::int64_t>(k) + 1;
        if (st.move == Move::advance_x) {
            if (ix + 1 > x.size()) return {false, idx};
            ++ix;
            if (st.vertex != x.at(ix)) return {false, idx};
            px = st.vertex;
        } else {
            if (iy + 1 > y.size()) return {false, idx};
            ++iy;
            if (st.vertex != y.at(iy)) return {false, idx};
            py = st.vertex;
        }
        if (px == py) return {false, idx};
    }
    return {true, -1};
}

void write_schedule(const Schedule& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    for (const auto& st : s.steps) {
        out << (st.move == Move::advance_x ? "X " : "Y ") << st.vertex << "\n";
    }
}

Schedule read_schedule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open schedule file '" + path + "'");
    Schedule s;
    std::string tag;
    std::uint32_t v;
    while (in >> tag >> v) {
        if (tag == "X") {
            s.steps.push_back({Move::advance_x, v});
        } else if (tag == "Y") {
            s.steps.push_back({Move::advance_y, v});
        } else {
            throw ParseError("bad schedule line tag '" + tag + "' in '" + path + "'");
        }
    }
    return s;
}

}  // namespace cperc
