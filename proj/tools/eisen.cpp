// eisen: evaluate Eisenstein series, counting functions, property suites
// and degeneration sweeps from a config file.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "eisen/counting.hpp"
#include "eisen/degeneration.hpp"
#include "eisen/eisenstein.hpp"
#include "eisen/io.hpp"
#include "eisen/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace eisen;
using io::num;

namespace {

enum Exit { ok = 0, verify_failed = 1, config_failed = 2, numeric_failed = 3 };

struct Globals {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    int threads = 1;
    bool allow_incomplete = false;
    bool quiet = false;
    bool corrupt_bound = false;  // negative-control fixture
};

json pair(cplx z) { return json::array({z.real(), z.imag()}); }

void write_file(const fs::path& p, const std::string& body)
{
    std::ofstream f(p, std::ios::binary);
    if (!f) throw io::config_error("", "cannot write " + p.string());
    f << body;
    spdlog::info("wrote {}", p.string());
}

struct Context {
    io::RunConfig cfg;
    std::string hash;
    fs::path out;
    int threads = 1;

    EnumerationOptions enumeration() const
    {
        EnumerationOptions e;
        e.max_depth = cfg.max_depth;
        e.prune_slack = cfg.prune_slack;
        e.threads = threads;
        return e;
    }

    SeriesOptions series() const
    {
        SeriesOptions o;
        o.radius_safety = cfg.radius_safety;
        o.allow_incomplete = cfg.allow_incomplete;
        o.enumeration = enumeration();
        return o;
    }

    fs::path file(const std::string& stem, const char* ext) const { return out / (cfg.prefix + "_" + stem + ext); }

    json header(const std::string& command) const
    {
        json j;
        j["command"] = command;
        j["config_hash"] = hash;
        j["config"] = io::canonical(cfg);
        return j;
    }
};

bool is_torus(const io::RunConfig& c) { return c.family == "punctured-torus"; }
bool is_cyclic(const io::RunConfig& c) { return c.family.rfind("cyclic-", 0) == 0; }

// One entry per surface in the family; ell is NaN for the fixed groups.
std::vector<double> family_ells(const io::RunConfig& c)
{
    return is_torus(c) ? c.ell : std::vector<double>{std::numeric_limits<double>::quiet_NaN()};
}

std::string ell_field(double ell) { return std::isnan(ell) ? "" : num(ell); }

FuchsianGroup base_group(const io::RunConfig& c, double ell)
{
    if (c.family == "punctured-torus") return punctured_torus_tracking_frame(ell).group;
    if (c.family == "thrice-punctured-sphere") return thrice_punctured_sphere_group();
    if (c.family == "cyclic-hyperbolic") return cyclic_group(MoebiusTransform::diagonal(std::exp(c.translation / 2.0)));
    return cyclic_group(MoebiusTransform::translation(c.translation));
}

struct Setup {
    FuchsianGroup group;
    Word word;
    UHPoint z;
};

enum class Placement { Axis, Cusp, None };

// Points are given in the model frame of the family; the stabilizer is then
// moved to the imaginary axis or to the cusp at infinity of width omega.
Setup place(const io::RunConfig& c, double ell, Placement how)
{
    FuchsianGroup g = base_group(c, ell);
    Word w;
    try {
        w = g.word(c.word);
    } catch (const domain_error& e) {
        throw io::config_error("series.word", e.what());
    }
    if (is_cyclic(c)) {
        const bool par_group = c.family == "cyclic-parabolic";
        if ((how == Placement::Axis && par_group) || (how == Placement::Cusp && !par_group)) {
            throw io::config_error("family.kind", c.family + " does not fit a " +
                                                      (how == Placement::Axis ? "hyperbolic" : "parabolic") +
                                                      " series or count");
        }
    }
    if (how == Placement::None || is_cyclic(c)) return {std::move(g), std::move(w), c.z};
    try {
        const Frame f = how == Placement::Axis ? axis_frame(g, w) : cusp_frame(g, w, c.omega);
        return {f.group, std::move(w), f.to_frame(c.z)};
    } catch (const classification_error& e) {
        throw io::config_error("series.word", e.what());
    }
}

void require_complete(const DistanceSpectrum& spec, const io::RunConfig& c)
{
    if (!spec.complete && !c.allow_incomplete) {
        throw incomplete_spectrum("enumeration hit the depth cap at length " + std::to_string(spec.search_depth) +
                                  " (rerun with --allow-incomplete to keep the partial data)");
    }
}

// Words of the k closest coset representatives. The main enumeration runs
// without words; this one stops just past the k-th distance.
json nearest_words(const Context& ctx, const Setup& st, bool par, const DistanceSpectrum& spec, std::size_t k)
{
    json a = json::array();
    if (spec.size() == 0) return a;
    const double cut = spec.distances[std::min(k, spec.size()) - 1] + 1e-9;
    EnumerationOptions e = ctx.enumeration();
    e.keep_words = true;
    const DistanceSpectrum near = par ? orbit_distances_par(st.group, st.word, st.z, ctx.cfg.y0, cut, e)
                                      : orbit_distances_hyp(st.group, st.word, st.z, cut, e);
    for (std::size_t i = 0; i < std::min(k, near.size()); ++i) {
        a.push_back({{"word", near.words[i].to_string()}, {"distance", near.distances[i]}});
    }
    return a;
}

int cmd_eval(const Context& ctx, const std::string& kind)
{
    const io::RunConfig& c = ctx.cfg;
    const bool par = kind == "par";
    io::CsvWriter csv({"config_hash", "family", "ell", "kind", "word", "z", "s", "T0", "value_re", "value_im",
                       "tail_bound", "n_terms", "complete", "r"});
    json out = ctx.header("eval " + kind);
    out["rows"] = json::array();
    for (double ell : family_ells(c)) {
        const Setup st = place(c, ell, par ? Placement::Cusp : Placement::Axis);
        const SeriesOptions opts = ctx.series();
        const double r = series_radius(st.group, st.z, opts);
        const double omega = par ? cusp_width(st.group, st.word) : 1.0;
        std::vector<double> T0s;
        for (cplx s : c.s) {
            const double scale = par ? std::pow(c.y0 / omega, s.real()) : 1.0;
            T0s.push_back(c.T0 ? *c.T0 : std::max(tail_T0(c.epsilon / scale, s.real() - 1.0, r), r * 1.0001));
        }
        const double top = *std::max_element(T0s.begin(), T0s.end());
        // One enumeration serves the whole s grid.
        EnumerationOptions e = ctx.enumeration();
        e.keep_words = false;
        const DistanceSpectrum spec = par ? orbit_distances_par(st.group, st.word, st.z, c.y0, top, e)
                                          : orbit_distances_hyp(st.group, st.word, st.z, top, e);
        const json nearest = nearest_words(ctx, st, par, spec, 10);
        spdlog::info("enumerated {} cosets below {} (depth {}, {} nodes) for {} s values", spec.size(), num(top),
                     spec.search_depth, spec.nodes_visited, c.s.size());
        require_complete(spec, c);
        for (std::size_t i = 0; i < c.s.size(); ++i) {
            const cplx s = c.s[i];
            const EisensteinValue v = par ? e_par(spec, s, c.y0, omega, T0s[i], r) : e_hyp(spec, s, T0s[i], r);
            csv.row({ctx.hash, c.family, ell_field(ell), kind, c.word, io::point_string(c.z), io::format_complex(s),
                     num(v.T0), num(v.value.real()), num(v.value.imag()), num(v.tail_bound),
                     std::to_string(v.n_terms), v.complete ? "true" : "false", num(v.r)});
            json row;
            row["family"] = c.family;
            row["ell"] = std::isnan(ell) ? json(nullptr) : json(ell);
            row["kind"] = kind;
            row["word"] = c.word;
            row["z"] = pair(cplx(c.z.x(), c.z.y()));
            row["s"] = pair(s);
            row["T0"] = v.T0;
            row["value"] = pair(v.value);
            row["tail_bound"] = v.tail_bound;
            row["n_terms"] = v.n_terms;
            row["complete"] = v.complete;
            row["r"] = v.r;
            if (par) {
                row["y0"] = c.y0;
                row["omega"] = omega;
            }
            row["nearest"] = nearest;
            out["rows"].push_back(std::move(row));
            std::printf("%-8s s=%-12s E=%s  tail<=%s  terms=%zu\n", ell_field(ell).c_str(),
                        io::format_complex(s).c_str(), io::format_complex(v.value).c_str(), num(v.tail_bound).c_str(),
                        v.n_terms);
        }
    }
    write_file(ctx.file("eval_" + kind, ".csv"), csv.str());
    write_file(ctx.file("eval_" + kind, ".json"), out.dump(2) + "\n");
    return ok;
}

int cmd_count(const Context& ctx, const std::string& kind)
{
    const io::RunConfig& c = ctx.cfg;
    io::CsvWriter csv({"config_hash", "family", "ell", "kind", "word", "z", "T", "count", "complete"});
    json out = ctx.header("count " + kind);
    out["rows"] = json::array();
    const double top = *std::max_element(c.T.begin(), c.T.end());
    for (double ell : family_ells(c)) {
        std::vector<std::size_t> counts;
        bool complete = true;
        if (kind == "lattice") {
            const Setup st = place(c, ell, Placement::None);
            for (double T : c.T) {
                const LatticeCount n = lattice_count(st.group, st.z, c.w, T, ctx.enumeration());
                complete = complete && n.complete;
                counts.push_back(n.count);
            }
            if (!complete && !c.allow_incomplete) throw incomplete_spectrum("lattice enumeration hit the depth cap");
        } else if (kind == "boundary") {
            const Setup st = place(c, ell, Placement::Axis);
            const double len = translation_length(st.group.evaluate(st.word));
            const double eps = horocycle_area_relation(c.omega, c.y0).epsilon;
            const double g = collar_boundary_height(len, eps);
            const DistanceSpectrum spec = orbit_distances_hyp(st.group, st.word, st.z, top + g + 1e-9, ctx.enumeration());
            require_complete(spec, c);
            complete = spec.complete;
            for (double T : c.T) {
                std::size_t n = 0;
                for (const UHPoint& p : spec.points) n += dist_to_collar_boundary(p, len, eps) < T - tie_tolerance;
                counts.push_back(n);
            }
        } else {
            const bool par = kind == "par";
            const Setup st = place(c, ell, par ? Placement::Cusp : Placement::Axis);
            EnumerationOptions e = ctx.enumeration();
            e.keep_words = false;
            const DistanceSpectrum spec = par ? orbit_distances_par(st.group, st.word, st.z, c.y0, top + 1e-9, e)
                                              : orbit_distances_hyp(st.group, st.word, st.z, top + 1e-9, e);
            require_complete(spec, c);
            complete = spec.complete;
            for (double T : c.T) counts.push_back(spec.count_below(T - tie_tolerance));
        }
        for (std::size_t i = 0; i < c.T.size(); ++i) {
            csv.row({ctx.hash, c.family, ell_field(ell), kind, c.word, io::point_string(c.z), num(c.T[i]),
                     std::to_string(counts[i]), complete ? "true" : "false"});
            out["rows"].push_back({{"family", c.family},
                                   {"ell", std::isnan(ell) ? json(nullptr) : json(ell)},
                                   {"kind", kind},
                                   {"word", c.word},
                                   {"T", c.T[i]},
                                   {"count", counts[i]},
                                   {"complete", complete}});
            std::printf("%-8s T=%-6s N=%zu\n", ell_field(ell).c_str(), num(c.T[i]).c_str(), counts[i]);
        }
    }
    write_file(ctx.file("count_" + kind, ".csv"), csv.str());
    write_file(ctx.file("count_" + kind, ".json"), out.dump(2) + "\n");
    return ok;
}

double corrupted_bound(double n_at_T0, double, double, double) { return n_at_T0; }

int cmd_verify(const Context& ctx, const std::vector<std::string>& names, bool corrupt)
{
    const auto suites = verify::all_suites();
    std::vector<verify::SuiteEntry> chosen;
    for (const std::string& n : names) {
        const auto it = std::find_if(suites.begin(), suites.end(), [&](const auto& e) { return n == e.name; });
        if (it == suites.end()) {
            std::string known;
            for (const auto& e : suites) known += std::string(known.empty() ? "" : ", ") + e.name;
            throw io::config_error("verify", "unknown suite '" + n + "' (known: " + known + ")");
        }
        chosen.push_back(*it);
    }
    if (chosen.empty()) chosen = suites;

    verify::Options opt;
    opt.seed = ctx.cfg.seed;
    opt.threads = ctx.threads;
    if (corrupt) opt.bound = corrupted_bound;

    io::CsvWriter csv({"config_hash", "suite", "invariant", "observed", "tolerance", "pass", "instance"});
    json out = ctx.header("verify");
    out["seed"] = ctx.cfg.seed;
    out["suites"] = json::array();
    bool all = true;
    for (const auto& e : chosen) {
        const verify::SuiteResult r = e.run(opt);
        all = all && r.pass();
        std::printf("[%s] %-13s %-30s %.1fs\n", r.pass() ? "PASS" : "FAIL", r.name.c_str(), r.title.c_str(),
                    r.seconds);
        json js{{"suite", r.name}, {"title", r.title}, {"pass", r.pass()}, {"error", r.error}};
        js["checks"] = json::array();
        for (const verify::Check& ch : r.checks) {
            csv.row({ctx.hash, r.name, ch.invariant, num(ch.observed), num(ch.tolerance), ch.pass ? "true" : "false",
                     ch.instance});
            js["checks"].push_back({{"invariant", ch.invariant},
                                    {"observed", ch.observed},
                                    {"tolerance", ch.tolerance},
                                    {"pass", ch.pass},
                                    {"instance", ch.instance}});
            std::printf("       %-45s %-12s tol %-8s %s\n", ch.invariant.c_str(), num(ch.observed).c_str(),
                        num(ch.tolerance).c_str(), ch.pass ? "" : "FAIL");
            if (!ch.pass) {
                std::fprintf(stderr, "failed: %s / %s = %s (tol %s) at %s\n", r.name.c_str(), ch.invariant.c_str(),
                             num(ch.observed).c_str(), num(ch.tolerance).c_str(), ch.instance.c_str());
            }
        }
        if (!r.error.empty()) std::fprintf(stderr, "failed: %s raised: %s\n", r.name.c_str(), r.error.c_str());
        if (r.seconds > r.time_limit) {
            std::fprintf(stderr, "failed: %s took %.1fs, limit %.0fs\n", r.name.c_str(), r.seconds, r.time_limit);
        }
        out["suites"].push_back(std::move(js));
    }
    out["pass"] = all;
    write_file(ctx.file("verify", ".csv"), csv.str());
    write_file(ctx.file("verify", ".json"), out.dump(2) + "\n");
    return all ? ok : verify_failed;
}

int cmd_sweep(const Context& ctx, const std::string& part_name)
{
    const io::RunConfig& c = ctx.cfg;
    const TheoremPart part = parse_part(part_name);
    SweepConfig sc;
    sc.ells = c.sweep_ell;
    sc.s = c.s;
    sc.point = c.z;
    sc.epsilon = c.epsilon;
    sc.y0 = c.y0;
    sc.omega = c.omega;
    sc.count_grid = c.count_grid;
    sc.de_h = c.de_h;
    sc.with_de = c.with_de;
    sc.radius_safety = c.radius_safety;
    sc.cross_tolerance = c.cross_tolerance;
    sc.allow_incomplete = c.allow_incomplete;
    sc.enumeration = ctx.enumeration();
    spdlog::info("sweep part {} over {} lengths and {} s values", part_name, sc.ells.size(), sc.s.size());
    SweepResult res = sweep_main_theorem(part, sc);
    res.config_hash = ctx.hash;

    auto join_counts = [](const std::vector<std::size_t>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
        return s;
    };
    io::CsvWriter csv({"config_hash", "part", "ell", "s", "value_re", "value_im", "tail_bound", "T0", "n_terms",
                       "complete", "flag", "raw_re", "raw_im", "f_normalized_re", "f_normalized_im", "g", "counts",
                       "shift_identity", "sl2_term", "de_residual"});
    json out = ctx.header("sweep " + part_name);
    out["quantity"] = res.quantity;
    out["limit_quantity"] = res.limit_quantity;
    out["tracking"] = tracked_point_tag();
    out["count_grid"] = res.count_grid;
    out["rows"] = json::array();
    bool flagged = false;
    for (const SweepRow& r : res.rows) {
        flagged = flagged || !r.flag.empty();
        const bool iii = part == TheoremPart::III;
        csv.row({ctx.hash, part_name, num(r.ell), io::format_complex(r.s), num(r.value.real()), num(r.value.imag()),
                 num(r.tail_bound), num(r.T0), std::to_string(r.n_terms), r.complete ? "true" : "false", r.flag,
                 iii ? num(r.raw.real()) : "", iii ? num(r.raw.imag()) : "", iii ? num(r.f_normalized.real()) : "",
                 iii ? num(r.f_normalized.imag()) : "", iii ? num(r.g) : "", join_counts(r.counts),
                 iii ? (r.shift_identity ? "true" : "false") : "", iii ? num(r.sl2_term) : "",
                 iii ? num(r.de_residual) : ""});
        json row{{"ell", r.ell},       {"s", pair(r.s)},         {"value", pair(r.value)}, {"tail_bound", r.tail_bound},
                 {"T0", r.T0},         {"n_terms", r.n_terms},   {"complete", r.complete}, {"flag", r.flag},
                 {"r", r.r}};
        if (iii) {
            row["raw"] = pair(r.raw);
            row["f_normalized"] = pair(r.f_normalized);
            row["g"] = r.g;
            row["counts"] = r.counts;
            row["shift_identity"] = r.shift_identity;
            row["sl2_term"] = r.sl2_term;
            row["de_residual"] = r.de_residual;
        }
        out["rows"].push_back(std::move(row));
    }
    out["limits"] = json::array();
    for (const SweepLimit& l : res.limits) {
        json j{{"s", pair(l.s)}, {"value", pair(l.value)}, {"tail_bound", l.tail_bound}};
        if (!l.counts.empty()) j["counts"] = l.counts;
        out["limits"].push_back(std::move(j));
    }
    out["trends"] = json::array();
    for (const SweepTrend& t : res.trends) {
        out["trends"].push_back({{"s", pair(t.s)},
                                 {"differences", t.differences},
                                 {"monotone_after_first", t.monotone_after_first},
                                 {"last_difference", t.last_difference},
                                 {"last_tails", t.last_tails},
                                 {"late_variation", t.late_variation},
                                 {"late_tails", t.late_tails},
                                 {"cross_relative", t.cross_relative},
                                 {"cross_tolerance", c.cross_tolerance},
                                 {"tracking_limited", t.cross_relative > c.cross_tolerance},
                                 {"sl2_slope", t.sl2_slope}});
    }

    // Plot data: ell, log ell, then one column per s.
    std::vector<double> ells;
    for (const SweepRow& r : res.rows) {
        if (r.s == c.s.front()) ells.push_back(r.ell);
    }
    std::string dat = "# ell log_ell";
    std::string diff = "# ell log_ell";
    for (cplx s : c.s) {
        dat += " Re[" + res.quantity + "](s=" + io::format_complex(s) + ")";
        diff += " |diff|(s=" + io::format_complex(s) + ")";
    }
    dat += "\n";
    diff += "\n";
    for (std::size_t k = 0; k < ells.size(); ++k) {
        dat += num(ells[k]) + " " + num(std::log(ells[k]));
        if (k > 0) diff += num(ells[k]) + " " + num(std::log(ells[k]));
        for (std::size_t j = 0; j < c.s.size(); ++j) {
            dat += " " + num(res.rows[j * ells.size() + k].value.real());
            if (k > 0) diff += " " + num(res.trends[j].differences[k - 1]);
        }
        dat += "\n";
        if (k > 0) diff += "\n";
    }

    std::printf("%s -> %s\n", res.quantity.c_str(), res.limit_quantity.c_str());
    for (const SweepTrend& t : res.trends) {
        std::printf("s=%s  limit %s\n", io::format_complex(t.s).c_str(),
                    io::format_complex(res.limits[&t - res.trends.data()].value).c_str());
        for (std::size_t k = 0; k < ells.size(); ++k) {
            const SweepRow& r = res.rows[(&t - res.trends.data()) * ells.size() + k];
            std::printf("  ell=%-12s value=%-44s tail<=%-10.3g diff=%-10.3g %s\n", num(r.ell).c_str(),
                        io::format_complex(r.value).c_str(), r.tail_bound, k ? t.differences[k - 1] : 0.0,
                        r.flag.c_str());
        }
        std::printf("  monotone after first: %s  last diff %.3g vs 10x tails %.3g  late variation %.3g  cross %.3g%s\n",
                    t.monotone_after_first ? "yes" : "no", t.last_difference, 10 * t.last_tails, t.late_variation,
                    t.cross_relative, t.cross_relative > c.cross_tolerance ? " (tracking-limited)" : "");
    }

    const std::string stem = "sweep_" + part_name;
    write_file(ctx.file(stem, ".csv"), csv.str());
    write_file(ctx.file(stem, ".json"), out.dump(2) + "\n");
    write_file(ctx.file(stem, ".dat"), dat);
    write_file(ctx.file(stem + "_diff", ".dat"), diff);
    if (flagged) {
        spdlog::warn("some sweep rows are uncertified; see the flag column");
        if (!c.allow_incomplete) return numeric_failed;
    }
    return ok;
}

}  // namespace

int main(int argc, char** argv)
{
    auto log = spdlog::stderr_color_st("eisen");
    log->set_pattern("[%l] %v");
    spdlog::set_default_logger(log);

    CLI::App app{"Eisenstein series on Fuchsian groups and their degenerations"};
    app.require_subcommand(1);
    Globals gl;
    app.add_option("--config", gl.config_path, "INI run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", gl.out_dir, "output directory");
    app.add_option("--seed", gl.seed, "seed for randomized suites (overrides run.seed)");
    app.add_option("--threads", gl.threads, "enumeration threads")->check(CLI::PositiveNumber);
    app.add_flag("--allow-incomplete", gl.allow_incomplete, "keep results whose enumeration hit the depth cap");
    app.add_flag("-q,--quiet", gl.quiet, "log warnings only");

    std::string eval_kind, count_kind, sweep_part;
    std::vector<std::string> suites;
    auto* eval = app.add_subcommand("eval", "evaluate E_par or E_hyp over the s grid");
    eval->add_option("kind", eval_kind)->required()->check(CLI::IsMember({"par", "hyp"}));
    auto* count = app.add_subcommand("count", "counting functions over the T grid");
    count->add_option("kind", count_kind)->required()->check(CLI::IsMember({"hyp", "par", "boundary", "lattice"}));
    auto* verify = app.add_subcommand("verify", "run property suites (all by default)");
    verify->add_option("suite", suites);
    verify->add_flag("--corrupt-bound-fixture", gl.corrupt_bound, "negative control: replace the counting bound")
        ->group("");
    auto* sweep = app.add_subcommand("sweep", "degeneration sweep: i non-pinching element, ii original cusp, iii pinching element");
    sweep->add_option("part", sweep_part)->required()->check(CLI::IsMember({"i", "ii", "iii"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_failed;
    }
    if (gl.quiet) spdlog::set_level(spdlog::level::warn);

    try {
        Context ctx;
        if (!gl.config_path.empty()) {
            std::ifstream in(gl.config_path);
            ctx.cfg = io::parse_config(in);
        }
        if (gl.seed) ctx.cfg.seed = *gl.seed;
        if (gl.allow_incomplete) ctx.cfg.allow_incomplete = true;
        ctx.hash = io::config_hash(ctx.cfg);
        ctx.threads = gl.threads;
        ctx.out = gl.out_dir;
        fs::create_directories(ctx.out);
        spdlog::info("config hash {}", ctx.hash);
        write_file(ctx.file("config", ".ini"), io::canonical(ctx.cfg));

        if (*eval) return cmd_eval(ctx, eval_kind);
        if (*count) return cmd_count(ctx, count_kind);
        if (*verify) return cmd_verify(ctx, suites, gl.corrupt_bound);
        return cmd_sweep(ctx, sweep_part);
    } catch (const io::config_error& e) {
        spdlog::error("config: {}", e.what());
        return config_failed;
    } catch (const domain_error& e) {
        spdlog::error("invalid input: {}", e.what());
        return config_failed;
    } catch (const classification_error& e) {
        spdlog::error("invalid input: {}", e.what());
        return config_failed;
    } catch (const precondition_violation& e) {
        spdlog::error("precondition: {}", e.what());
        return config_failed;
    } catch (const incomplete_spectrum& e) {
        spdlog::error("uncertified: {}", e.what());
        return numeric_failed;
    } catch (const numeric_degeneracy& e) {
        spdlog::error("numeric degeneracy: {}", e.what());
        return numeric_failed;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return numeric_failed;
    }
}
