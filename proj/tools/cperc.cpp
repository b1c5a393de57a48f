// cperc: simulator, analyzer and scheduler-extractor for the oriented
// coordinate percolation model of two random walks on K_M.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cperc/events.hpp"
#include "cperc/geometry.hpp"
#include "cperc/montecarlo.hpp"
#include "cperc/multiscale.hpp"
#include "cperc/params.hpp"
#include "cperc/reach.hpp"
#include "cperc/rng.hpp"
#include "cperc/scheduler.hpp"
#include "cperc/sequence.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace cperc;

constexpr const char* kVersion = "0.1.0";

struct Common {
    std::string params_file;
    std::vector<std::pair<std::string, std::string>> overrides;
    std::string out;
    std::uint64_t seed = 1;
    int workers = 1;
    bool force_point = false;
};

Params resolve_params(const Common& c) {
    Params p = c.params_file.empty() ? Params::paper() : load_params_file(c.params_file);
    for (const auto& [k, v] : c.overrides) apply_override(p, k, v);
    return p;
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

// Every result file is accompanied by <out>.manifest.json recording the
// exact argv; payload bytes contain no timestamps, so a rerun from the
// manifest reproduces them exactly.
void write_manifest(const std::string& out, const std::string& subcommand,
                    const std::vector<std::string>& argv, const std::string& started) {
    if (out.empty()) return;
    json m;
    m["tool"] = "cperc";
    m["version"] = kVersion;
    m["subcommand"] = subcommand;
    m["argv"] = argv;
    m["started"] = started;
    m["finished"] = timestamp_now();
    std::ofstream f(out + ".manifest.json");
    f << m.dump(2) << "\n";
}

void write_payload(const std::string& out, const std::string& body) {
    if (out.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ParseError("cannot open output file '" + out + "'");
    f << body;
}

Role parse_role(const std::string& r) {
    if (r == "x" || r == "X") return Role::x_walk;
    if (r == "y" || r == "Y") return Role::y_walk;
    throw DomainError("role must be x or y");
}

// Uniform synthetic level-(j+1) block over [lo,hi]: sub-blocks of length
// L_j each, remainder absorbed into the last. Lets the chunk-level queries
// run on plain rectangles.
Block segment_block(std::int64_t lo, std::int64_t hi, int j, Role role, const Params& p) {
    const std::int64_t lj = scale(p, j);
    Block b;
    b.level = j + 1;
    b.role = role;
    b.lo0 = lo;
    b.hi0 = hi;
    const std::int64_t span = hi - lo + 1;
    const std::int64_t n = span / lj;
    if (n < 1) {
        throw InfeasibleError("range shorter than one level-" + std::to_string(j) + " sub-block");
    }
    for (std::int64_t i = 1; i <= n; ++i) {
        b.sub_ends.push_back(i == n ? hi : lo + i * lj - 1);
    }
    return b;
}

int dispatch(const std::vector<std::string>& argv);

json block_json(const Block& b, std::int64_t index) {
    json jb;
    jb["index"] = index;
    jb["lo0"] = b.lo0;
    jb["hi0"] = b.hi0;
    jb["sub_count"] = b.sub_count();
    jb["excess"] = b.excess;
    if (b.padding >= 0) jb["padding"] = b.padding;
    jb["bad_subs"] = b.bad_subs;
    jb["law"] = b.law == Block::Law::first_block ? "first-block"
                : b.law == Block::Law::mu       ? "mu"
                                                : "mu-good";
    return jb;
}

json verdict_json(const GoodnessVerdict& v) {
    json jv;
    jv["overall"] = v.overall == 1 ? "good" : v.overall == 0 ? "bad" : "undecided";
    jv["seed"] = v.seed;
    jv["trials"] = v.trials;
    json conds = json::array();
    for (const auto& c : v.conditions) {
        json jc;
        jc["name"] = c.name;
        jc["state"] = c.state == 1 ? "pass" : c.state == 0 ? "fail" : "undecided";
        jc["structural"] = c.structural;
        if (!c.structural) {
            jc["estimate"] = c.estimate;
            jc["ci_low"] = c.ci_low;
            jc["ci_high"] = c.ci_high;
        }
        jc["threshold"] = c.threshold;
        conds.push_back(jc);
    }
    jv["conditions"] = conds;
    return jv;
}

json route_json(const Route& r) {
    json jr;
    jr["j"] = r.level;
    jr["t"] = r.t;
    jr["tprime"] = r.t_prime;
    json pts = json::array();
    for (const auto& pt : r.points) {
        pts.push_back(json{{"cell", {pt.cell_col, pt.cell_row}},
                           {"in", {pt.in_col, pt.in_row}},
                           {"out", {pt.out_col, pt.out_row}}});
    }
    jr["points"] = pts;
    return jr;
}

// Builds partitions level by level; verdicts for level-k blocks come from
// point-estimate Monte Carlo classification unless assume_good is set.
std::vector<BlockPartition> build_partitions(const Sequence& seq, int level, const Params& p,
                                             std::int64_t samples, std::uint64_t seed,
                                             bool assume_good) {
    std::vector<BlockPartition> parts;
    parts.push_back(build_level1(seq, p));
    for (int k = 2; k <= level; ++k) {
        const BlockPartition& prev = parts.back();
        std::vector<std::uint8_t> good(prev.blocks.size(), 1);
        if (!assume_good) {
            const PartnerSampler partner = stream_partner_sampler(
                k - 1, p, seq.alphabet, seq.role == Role::x_walk ? Role::y_walk : Role::x_walk,
                samples);
            for (std::size_t i = 0; i < prev.blocks.size(); ++i) {
                McSettings mc;
                mc.trials = samples;
                mc.seed = derive_seed(seed, 0xb10cull + i);
                mc.force_point_estimate = true;
                good[i] = classify_good(seq, prev.blocks[i], p, mc, partner).overall == 1 ? 1 : 0;
            }
        }
        parts.push_back(build_next_level(prev, good, p, derive_seed(seed, 0x13e7ull + k)));
    }
    return parts;
}

int run_rerun(const std::string& manifest_path, const std::string& new_out, int new_workers) {
    std::ifstream f(manifest_path);
    if (!f) throw ParseError("cannot open manifest '" + manifest_path + "'");
    json m = json::parse(f);
    std::vector<std::string> argv = m.at("argv").get<std::vector<std::string>>();
    for (std::size_t i = 0; i + 1 < argv.size(); ++i) {
        if (argv[i] == "--out" && !new_out.empty()) argv[i + 1] = new_out;
        if (argv[i] == "--workers" && new_workers > 0) argv[i + 1] = std::to_string(new_workers);
    }
    return dispatch(argv);
}

int dispatch(const std::vector<std::string>& argv) {
    CLI::App app{"coordinate percolation toolkit"};
    app.set_version_flag("--version", std::string("cperc ") + kVersion);
    app.require_subcommand(1);

    Common common;
    auto add_common = [&common](CLI::App* sub) {
        sub->add_option("--params", common.params_file, "parameter file (key=value lines)");
        sub->add_option("--out", common.out, "output file (payload; manifest written alongside)");
        sub->add_option("--seed", common.seed, "master seed");
        sub->add_option("--workers", common.workers, "worker threads for Monte Carlo");
        sub->add_flag("--force-point-estimate", common.force_point,
                      "classify by point estimate when the CI straddles a threshold");
        for (const char* key : {"alpha", "beta", "delta", "m", "k0", "R", "L0", "mode", "p_len",
                                "p_chunk", "p_run", "p_geom"}) {
            sub->add_option_function<std::string>(
                std::string("--") + key,
                [&common, key](const std::string& v) { common.overrides.push_back({key, v}); },
                std::string("override parameter ") + key);
        }
    };

    auto* sc_validate = app.add_subcommand("params-validate", "check the parameter constraint system");
    add_common(sc_validate);

    auto* sc_genseq = app.add_subcommand("genseq", "generate a step-stream file");
    std::int64_t g_alphabet = 8, g_n = 1024;
    std::string g_role = "x";
    bool g_binary = false;
    sc_genseq->add_option("--M", g_alphabet, "alphabet size (>= 3)")->required();
    sc_genseq->add_option("--n", g_n, "length")->required();
    sc_genseq->add_option("--role", g_role, "x or y");
    sc_genseq->add_flag("--binary", g_binary, "write the binary format");
    add_common(sc_genseq);

    auto* sc_perc = app.add_subcommand("percolate", "path-existence queries on a window");
    std::string p_x, p_y, p_rect, p_query = "cc";
    int p_level = 1;
    sc_perc->add_option("--x", p_x, "X sequence file")->required();
    sc_perc->add_option("--y", p_y, "Y sequence file")->required();
    sc_perc->add_option("--rect", p_rect, "a1,a2,b1,b2 (1-based inclusive)")->required();
    sc_perc->add_option("--query", p_query, "cc|cs|sc|ss|depth|nonoriented");
    sc_perc->add_option("--level", p_level,
                        "sub-block level j for cs/sc/ss (ranges sliced into length-L_j sub-blocks)");
    add_common(sc_perc);

    auto* sc_surv = app.add_subcommand("survive", "oriented survival curve");
    std::int64_t s_alphabet = 4, s_trials = 1000;
    std::string s_depths = "50,100,200";
    sc_surv->add_option("--M", s_alphabet, "alphabet size")->required();
    sc_surv->add_option("--depths", s_depths, "comma-separated depths");
    sc_surv->add_option("--trials", s_trials, "trials per curve");
    add_common(sc_surv);

    auto* sc_blocks = app.add_subcommand("blocks", "multi-scale partition of a sequence");
    std::string b_seq, b_role = "x";
    int b_level = 1;
    std::int64_t b_samples = 50;
    bool b_assume_good = false;
    sc_blocks->add_option("--seq", b_seq, "sequence file")->required();
    sc_blocks->add_option("--level", b_level, "partition level (>= 1)");
    sc_blocks->add_option("--role", b_role, "x or y");
    sc_blocks->add_option("--goodness-samples", b_samples,
                          "partner samples per verdict (levels >= 2)");
    sc_blocks->add_flag("--assume-good", b_assume_good, "treat every sub-block as good");
    add_common(sc_blocks);

    auto* sc_good = app.add_subcommand("goodness", "classify blocks of a partition");
    std::string gd_seq, gd_role = "x";
    int gd_level = 1;
    std::int64_t gd_samples = 200;
    sc_good->add_option("--seq", gd_seq, "sequence file")->required();
    sc_good->add_option("--level", gd_level, "block level to classify");
    sc_good->add_option("--role", gd_role, "x or y");
    sc_good->add_option("--samples", gd_samples, "partner samples per condition");
    add_common(sc_good);

    auto* sc_route = app.add_subcommand("route", "build a route or connection family");
    std::int64_t r_t = 1, r_tp = 1;
    int r_j = 1;
    std::string r_cells, r_kind = "cc";
    std::int64_t r_minspan = -1;
    sc_route->add_option("--t", r_t, "grid width in cells")->required();
    sc_route->add_option("--tprime", r_tp, "grid height in cells")->required();
    sc_route->add_option("--cells", r_cells, "file: line 1 = t widths, line 2 = t' heights")
        ->required();
    sc_route->add_option("--j", r_j, "level");
    sc_route->add_option("--kind", r_kind, "cc|cs|sc|ss");
    sc_route->add_option("--min-span", r_minspan, "override the 5^(j+6) R span threshold");
    add_common(sc_route);

    auto* sc_sched = app.add_subcommand("schedule", "extract a non-colliding delay schedule");
    std::string sd_x, sd_y;
    std::int64_t sd_n = 64;
    sc_sched->add_option("--x", sd_x, "X sequence file")->required();
    sc_sched->add_option("--y", sd_y, "Y sequence file")->required();
    sc_sched->add_option("--n", sd_n, "target depth (col+row)");
    add_common(sc_sched);

    auto* sc_check = app.add_subcommand("check-estimates", "empirical recursive estimates I-III");
    int c_level = 1;
    std::int64_t c_ensemble = 200, c_partner = 50, c_alphabet = 100;
    sc_check->add_option("--level", c_level, "level j");
    sc_check->add_option("--ensemble", c_ensemble, "ensemble size");
    sc_check->add_option("--partner-trials", c_partner, "partner samples per estimate");
    sc_check->add_option("--M", c_alphabet, "alphabet size (multiple of 4)");
    add_common(sc_check);

    auto* sc_rerun = app.add_subcommand("rerun", "re-execute a manifest");
    std::string rr_manifest, rr_out;
    int rr_workers = 0;
    sc_rerun->add_option("--manifest", rr_manifest, "manifest file")->required();
    sc_rerun->add_option("--out", rr_out, "redirect payload");
    sc_rerun->add_option("--workers", rr_workers, "override worker count");

    std::vector<std::string> cli_args(argv.rbegin(), argv.rend());
    app.parse(cli_args);

    const std::string started = timestamp_now();

    if (sc_rerun->parsed()) return run_rerun(rr_manifest, rr_out, rr_workers);

    if (sc_validate->parsed()) {
        const Params p = resolve_params(common);
        const ValidationReport rep = validate(p);
        json out;
        out["ok"] = rep.ok;
        out["violations"] = rep.violations;
        json jp;
        std::istringstream kv(to_key_value(p));
        std::string line;
        while (std::getline(kv, line)) {
            const auto eq = line.find('=');
            jp[line.substr(0, eq)] = line.substr(eq + 1);
        }
        out["params"] = jp;
        write_payload(common.out, out.dump(2) + "\n");
        write_manifest(common.out, "params-validate", argv, started);
        return rep.ok ? 0 : 2;
    }

    if (sc_genseq->parsed()) {
        if (common.out.empty()) throw DomainError("genseq needs --out");
        const Sequence s = generate(g_alphabet, g_n, common.seed, parse_role(g_role));
        if (g_binary) {
            write_sequence_binary(s, common.out);
        } else {
            write_sequence_text(s, common.out);
        }
        write_manifest(common.out, "genseq", argv, started);
        return 0;
    }

    if (sc_perc->parsed()) {
        const Params p = resolve_params(common);
        const Sequence x = read_sequence_file(p_x, Role::x_walk);
        const Sequence y = read_sequence_file(p_y, Role::y_walk);
        std::int64_t a1, a2, b1, b2;
        if (std::sscanf(p_rect.c_str(), "%ld,%ld,%ld,%ld", &a1, &a2, &b1, &b2) != 4) {
            throw DomainError("--rect wants a1,a2,b1,b2");
        }
        const Rect rect{a1, a2, b1, b2};
        json out;
        out["query"] = p_query;
        out["rect"] = {a1, a2, b1, b2};
        if (p_query == "cc") {
            out["connected"] = cc_connected(x, y, rect);
        } else if (p_query == "depth") {
            check_rect(x, y, rect);
            out["depth"] = survival_depth(x, y, std::min(x.size(), y.size()) + 1);
        } else if (p_query == "nonoriented") {
            check_rect(x, y, rect);
            out["n"] = std::min(a2, b2);
            out["reaches"] = non_oriented_reaches(x, y, std::min(a2, b2));
        } else if (p_query == "cs" || p_query == "sc" || p_query == "ss") {
            check_rect(x, y, rect);
            const Block xb = segment_block(a1, a2, p_level, Role::x_walk, p);
            const Block yb = segment_block(b1, b2, p_level, Role::y_walk, p);
            const auto ee = entry_exit_pairs(xb, yb, p);
            out["level"] = p_level;
            out["warning_too_few_chunks"] = ee.too_few_chunks;
            out["entry_chunks"] = ee.entries.size();
            out["exit_chunks"] = ee.exits.size();
            out["pairs"] = ee.pairs.size();
            if (p_query == "cs") out["connected"] = cs_connected(x, y, xb, yb, p);
            if (p_query == "sc") out["connected"] = sc_connected(x, y, xb, yb, p);
            if (p_query == "ss") out["connected"] = ss_connected(x, y, xb, yb, p);
        } else {
            throw DomainError("unknown query '" + p_query + "'");
        }
        write_payload(common.out, out.dump(2) + "\n");
        write_manifest(common.out, "percolate", argv, started);
        return 0;
    }

    if (sc_surv->parsed()) {
        std::vector<std::int64_t> depths;
        std::stringstream ss(s_depths);
        std::string tok;
        while (std::getline(ss, tok, ',')) depths.push_back(std::stoll(tok));
        const auto rows = survival_curve(s_alphabet, depths, s_trials, common.seed, common.workers);
        std::ostringstream csv;
        csv << "n,point,ci_low,ci_high,trials,seed\n";
        for (const auto& r : rows) {
            csv << r.depth << "," << r.est.point << "," << r.est.ci_low << "," << r.est.ci_high
                << "," << r.est.trials << "," << r.est.master_seed << "\n";
        }
        write_payload(common.out, csv.str());
        write_manifest(common.out, "survive", argv, started);
        return 0;
    }

    if (sc_blocks->parsed()) {
        const Params p = resolve_params(common);
        const Sequence seq = read_sequence_file(b_seq, parse_role(b_role));
        const auto parts = build_partitions(seq, b_level, p, b_samples, common.seed, b_assume_good);
        const BlockPartition& part = parts.back();
        json out;
        out["level"] = part.level;
        out["role"] = part.role == Role::x_walk ? "x" : "y";
        out["consumed0"] = part.consumed0;
        out["incomplete"] = part.incomplete;
        json arr = json::array();
        for (std::size_t i = 0; i < part.blocks.size(); ++i) {
            arr.push_back(block_json(part.blocks[i], static_cast<std::int64_t>(i + 1)));
        }
        out["blocks"] = arr;
        write_payload(common.out, out.dump(2) + "\n");
        write_manifest(common.out, "blocks", argv, started);
        return 0;
    }

    if (sc_good->parsed()) {
        const Params p = resolve_params(common);
        const Sequence seq = read_sequence_file(gd_seq, parse_role(gd_role));
        const std::int64_t needed = goodness_required_trials(p, gd_level);
        if (gd_samples < needed && !common.force_point) {
            throw InfeasibleError("condition (ii) threshold needs >= " + std::to_string(needed) +
                                  " samples at this level; rerun with more --samples or "
                                  "--force-point-estimate");
        }
        const auto parts = build_partitions(seq, gd_level, p, gd_samples, common.seed, false);
        const BlockPartition& part = parts.back();
        const PartnerSampler partner = stream_partner_sampler(
            gd_level, p, seq.alphabet, seq.role == Role::x_walk ? Role::y_walk : Role::x_walk,
            gd_samples);
        std::ostringstream lines;
        for (std::size_t i = 0; i < part.blocks.size(); ++i) {
            McSettings mc;
            mc.trials = gd_samples;
            mc.seed = derive_seed(common.seed, i);
            mc.force_point_estimate = common.force_point;
            const GoodnessVerdict v = classify_good(seq, part.blocks[i], p, mc, partner);
            json rec = verdict_json(v);
            rec["index"] = i + 1;
            lines << rec.dump() << "\n";
        }
        write_payload(common.out, lines.str());
        write_manifest(common.out, "goodness", argv, started);
        return 0;
    }

    if (sc_route->parsed()) {
        const Params p = resolve_params(common);
        std::ifstream cf(r_cells);
        if (!cf) throw ParseError("cannot open cells file '" + r_cells + "'");
        std::vector<std::int64_t> widths(static_cast<std::size_t>(r_t));
        std::vector<std::int64_t> heights(static_cast<std::size_t>(r_tp));
        for (auto& v : widths) {
            if (!(cf >> v)) throw ParseError("cells file: expected t widths");
        }
        for (auto& v : heights) {
            if (!(cf >> v)) throw ParseError("cells file: expected t' heights");
        }
        json out;
        out["kind"] = r_kind;
        if (r_kind == "cc") {
            const Route r = build_cc_route(r_t, r_tp, widths, heights, r_j, p);
            out["route"] = route_json(r);
        } else if (r_kind == "cs" || r_kind == "sc" || r_kind == "ss") {
            const ConnectionKind kind = r_kind == "cs"   ? ConnectionKind::corner_to_side
                                        : r_kind == "sc" ? ConnectionKind::side_to_corner
                                                         : ConnectionKind::side_to_side;
            std::optional<std::int64_t> ms;
            if (r_minspan >= 0) ms = r_minspan;
            const auto family = build_connection(kind, r_t, r_tp, widths, heights, r_j, p, ms);
            json arr = json::array();
            for (const auto& cr : family) {
                json e;
                e["entry"] = {cr.entry.col, cr.entry.row};
                e["exit"] = {cr.exit.col, cr.exit.row};
                e["route"] = route_json(cr.route);
                arr.push_back(e);
            }
            out["routes"] = arr;
        } else {
            throw DomainError("unknown kind '" + r_kind + "'");
        }
        write_payload(common.out, out.dump(2) + "\n");
        write_manifest(common.out, "route", argv, started);
        return 0;
    }

    if (sc_sched->parsed()) {
        const Sequence x = read_sequence_file(sd_x, Role::x_walk);
        const Sequence y = read_sequence_file(sd_y, Role::y_walk);
        if (sd_n < 2) throw DomainError("schedule: --n must be >= 2");
        const std::int64_t span = sd_n - 1;
        if (x.size() < span || y.size() < span) {
            throw BoundsError("schedule: sequences shorter than n-1");
        }
        const Rect rect{1, span, 1, span};
        const ReachSet reached = reach(x, y, rect);
        std::optional<Site> target;
        for (std::int64_t c = 1; c <= span; ++c) {
            const std::int64_t r = sd_n - c;
            if (r >= 1 && r <= span && reached.marked({c, r})) {
                target = Site{c, r};
                break;
            }
        }
        if (!target) {
            const std::int64_t d = survival_depth(x, y, sd_n);
            write_payload(common.out, "BLOCKED " + std::to_string(d) + "\n");
            write_manifest(common.out, "schedule", argv, started);
            std::cerr << json{{"error", "infeasible"},
                              {"message",
                               "no open oriented path to depth " + std::to_string(sd_n)}}
                             .dump()
                      << "\n";
            return 3;
        }
        const auto path = extract_path(reached, *target);
        const Schedule s = extract_schedule(path, x, y);
        std::ostringstream body;
        for (const auto& st : s.steps) {
            body << (st.move == Move::advance_x ? "X " : "Y ") << st.vertex << "\n";
        }
        write_payload(common.out, body.str());
        write_manifest(common.out, "schedule", argv, started);
        return 0;
    }

    if (sc_check->parsed()) {
        const Params p = resolve_params(common);
        EstimateSettings settings;
        settings.ensemble = c_ensemble;
        settings.partner_trials = c_partner;
        settings.seed = common.seed;
        settings.alphabet = c_alphabet;
        const RecursiveEstimatesReport rep = check_recursive_estimates(c_level, p, settings);
        json out;
        out["level"] = rep.level;
        out["ensemble"] = rep.ensemble;
        auto check_json = [](const EstimateCheck& c) {
            return json{{"name", c.name},
                        {"state", c.state == 1 ? "pass" : c.state == 0 ? "fail" : "undecided"},
                        {"observed", c.observed},
                        {"bound", c.bound}};
        };
        json tails = json::array();
        for (const auto& c : rep.tail_checks) tails.push_back(check_json(c));
        out["tail"] = tails;
        out["mgf"] = check_json(rep.mgf_check);
        out["good_fraction"] = check_json(rep.good_fraction_check);
        out["overall"] = rep.overall == 1 ? "pass" : rep.overall == 0 ? "fail" : "undecided";
        write_payload(common.out, out.dump(2) + "\n");
        write_manifest(common.out, "check-estimates", argv, started);
        return rep.overall == -1 ? 3 : 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        try {
            return dispatch(args);
        } catch (const CLI::CallForHelp&) {
            std::cout << "cperc " << kVersion
                      << "\nsubcommands: params-validate genseq percolate survive blocks goodness "
                         "route schedule check-estimates rerun\nrun 'cperc <subcommand> --help'\n";
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        std::cerr << nlohmann::ordered_json{{"error", "usage"}, {"message", e.what()}}.dump()
                  << "\n";
        return 64;
    } catch (const InfeasibleError& e) {
        std::cerr << nlohmann::ordered_json{{"error", "infeasible"}, {"message", e.what()}}.dump()
                  << "\n";
        return 3;
    } catch (const BudgetError& e) {
        std::cerr << nlohmann::ordered_json{{"error", "budget"}, {"message", e.what()}}.dump()
                  << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::ordered_json{{"error", "domain"}, {"message", e.what()}}.dump()
                  << "\n";
        return 2;
    }
}
