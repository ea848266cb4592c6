#pragma once

// Collar geometry, the regularizers g and f, and sweeps of the pinched
// punctured torus toward the level-2 group.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eisen/counting.hpp"
#include "eisen/eisenstein.hpp"
#include "eisen/errors.hpp"
#include "eisen/fuchsian.hpp"
#include "eisen/hyperbolic.hpp"
#include "eisen/orbit.hpp"
#include "eisen/word.hpp"

namespace eisen {

// Length of each boundary curve of the collar of volume epsilon.
inline double boundary_length(double ell, double epsilon)
{
    if (!(ell > 0.0) || !(epsilon > 0.0)) throw domain_error("boundary_length needs ell, epsilon > 0");
    return std::sqrt(ell * ell + epsilon * epsilon / 4.0);
}

inline double boundary_distance(double ell, double eps0, double eps1)
{
    if (!(ell > 0.0) || !(eps0 > 0.0) || !(eps1 >= eps0)) {
        std::ostringstream msg;
        msg << "boundary_distance needs 0 < eps0 <= eps1 and ell > 0, got eps0 = " << eps0
            << ", eps1 = " << eps1;
        throw domain_error(msg.str());
    }
    const double a = eps1 + std::sqrt(eps1 * eps1 + 4.0 * ell * ell);
    const double b = eps0 + std::sqrt(eps0 * eps0 + 4.0 * ell * ell);
    return std::log(a / b);
}

// g(y0, ell) = log(q + sqrt(q^2 + 1)), q = omega / (y0 ell).
inline double collar_half_width(double y0, double ell, double omega)
{
    if (!(y0 > 0.0) || !(ell > 0.0) || !(omega > 0.0)) {
        throw domain_error("collar_half_width needs positive y0, ell, omega");
    }
    return std::asinh(omega / (y0 * ell));
}

struct HorocycleEpsilon {
    double epsilon;
    bool embeds;  // epsilon < 1/2
};

inline HorocycleEpsilon horocycle_area_relation(double omega, double y0)
{
    if (!(omega > 0.0) || !(y0 > 0.0)) throw domain_error("horocycle_area_relation needs positive input");
    const double eps = 2.0 * omega / y0;
    return {eps, eps < 0.5};
}

struct CylinderModel {
    double ell;
    double epsilon;
    double omega;
    double y0;

    static CylinderModel from_horocycle(double ell, double omega, double y0)
    {
        if (!(ell > 0.0)) throw domain_error("cylinder needs ell > 0");
        return {ell, horocycle_area_relation(omega, y0).epsilon, omega, y0};
    }

    bool embeds() const noexcept { return epsilon < 0.5; }
    // Angle of the collar boundary from the real axis, cot = epsilon / (2 ell).
    double boundary_angle() const noexcept { return std::atan2(2.0 * ell, epsilon); }
    double half_width() const { return collar_boundary_height(ell, epsilon); }
    double boundary_length() const { return eisen::boundary_length(ell, epsilon); }
};

// f(s, ell) = (y0 / 2)^s e^{s g}, and f (ell / omega)^s computed without
// cancellation as ((1 + sqrt(1 + t)) / 2)^s, t = 1 / q^2.
struct FFactor {
    cplx value;
    cplx ratio;
};

inline FFactor f_factor(cplx s, double ell, double omega, double y0)
{
    if (!(ell > 0.0)) throw domain_error("f_factor needs ell > 0");
    const double g = collar_half_width(y0, ell, omega);
    const double q = omega / (y0 * ell);
    const double t = 1.0 / (q * q);
    FFactor f;
    f.value = std::exp(s * (std::log(y0 / 2.0) + g));
    f.ratio = std::exp(s * std::log1p(t / (2.0 * (1.0 + std::sqrt(1.0 + t)))));
    return f;
}

// |2^-s e^{rs} cosh(x + r)^-s - e^{-sx}| = |e^{-sx}| |(1 + e^{-2(x+r)})^-s - 1|.
inline double limit21_error(cplx s, double r, double x)
{
    const double q = std::exp(-2.0 * (x + r));
    return std::exp(-s.real() * x) * std::abs(std::exp(-s * std::log1p(q)) - 1.0);
}

struct Limit21Row {
    double r;
    double max_error;
    double argmax_x;
};

inline std::vector<Limit21Row> limit21_check(cplx s, const std::vector<double>& r_grid,
                                             const std::vector<double>& x_grid)
{
    if (x_grid.empty()) throw domain_error("limit21_check needs x values");
    std::vector<Limit21Row> out;
    for (double r : r_grid) {
        Limit21Row row{r, -1.0, 0.0};
        for (double x : x_grid) {
            if (!(x >= 0.0)) throw domain_error("limit21_check needs x >= 0");
            const double e = limit21_error(s, r, x);
            if (e > row.max_error) {
                row.max_error = e;
                row.argmax_x = x;
            }
        }
        out.push_back(row);
    }
    return out;
}

// Point used across the family, in the frame of punctured_torus_tracking_frame,
// where the family converges to the level-2 group.
inline UHPoint tracked_point() { return UHPoint(0.3, 1.1); }
inline const char* tracked_point_tag() { return "tracking-frame 0.3+1.1i"; }

struct ScaledSeries {
    EisensteinValue raw;   // E_hyp(s, z)
    cplx scaled;           // ell^-s E_hyp
    cplx f_normalized;     // f(s, ell) E_hyp / omega^s
    double scaled_tail;    // ell^-Re s * raw tail
};

// ell^-s E_hyp of the pinching element A at the tracked point, truncated so
// that the scaled tail is at most eps.
inline ScaledSeries scaled_hyp_series(double ell, cplx s, const UHPoint& z_track, double eps,
                                      double omega, double y0, const SeriesOptions& opts = {})
{
    const Frame pf = punctured_torus_tracking_frame(ell);
    const Word a = pf.group.word("A");
    const Frame af = axis_frame(pf.group, a);
    const UHPoint z = af.to_frame(z_track);
    const double r = series_radius(af.group, z, opts);
    const double T0 = std::max(tail_T0(eps * std::pow(ell, s.real()), s.real() - 1.0, r), r * 1.0001);
    SeriesOptions o = opts;
    o.radius = r;
    ScaledSeries out;
    out.raw = e_hyp(af.group, a, s, z, T0, o);
    out.scaled = std::exp(-s * std::log(ell)) * out.raw.value;
    out.f_normalized = f_factor(s, ell, omega, y0).value * out.raw.value / std::exp(s * std::log(omega));
    out.scaled_tail = std::pow(ell, -s.real()) * out.raw.tail_bound;
    return out;
}

// Residual of the scaled equation
//   Delta(l^-s E(s)) = s(1-s) l^-s E(s) + (s l)^2 l^{-s-2} E(s+2),
// together with the size of the last term.
struct DELimit {
    double residual;        // ell^-Re s times the unscaled residual
    double relative;
    double sl2_term;        // |(s l)^2 l^{-s-2} E(s+2)|
    double sl2_fraction;    // sl2_term / |s(1-s) l^-s E(s)|
};

inline DELimit de_limit_residual(double ell, cplx s, const UHPoint& z_track, double h, double T0,
                                 const SeriesOptions& opts = {})
{
    const Frame pf = punctured_torus_tracking_frame(ell);
    const Word a = pf.group.word("A");
    const Frame af = axis_frame(pf.group, a);
    const DEResidual d = de_residual_hyp(af.group, a, s, af.to_frame(z_track), h, T0, opts);
    const double scale = std::pow(ell, -s.real());
    DELimit out;
    out.residual = scale * d.residual;
    out.relative = d.relative;
    out.sl2_term = scale * std::abs(s * s * d.shifted);
    out.sl2_fraction = std::abs(s * s * d.shifted) / std::abs(s * (1.0 - s) * d.value);
    return out;
}

// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) throw domain_error("slope fit needs two or more points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

enum class TheoremPart { I, II, III };

inline const char* to_string(TheoremPart p) noexcept
{
    switch (p) {
    case TheoremPart::I: return "i";
    case TheoremPart::II: return "ii";
    case TheoremPart::III: return "iii";
    }
    return "?";
}

inline TheoremPart parse_part(const std::string& s)
{
    if (s == "i") return TheoremPart::I;
    if (s == "ii") return TheoremPart::II;
    if (s == "iii") return TheoremPart::III;
    throw domain_error("unknown theorem part '" + s + "' (expected i, ii or iii)");
}

inline std::vector<double> default_sweep_ells()
{
    std::vector<double> out;
    for (int k = 0; k <= 8; ++k) out.push_back(std::ldexp(0.5, -k));
    return out;
}

struct SweepConfig {
    std::vector<double> ells = default_sweep_ells();
    std::vector<cplx> s{cplx(3.0)};
    UHPoint point = tracked_point();  // tracking frame
    double epsilon = 1e-6;            // tail target for each reported value
    double y0 = 10.0;
    double omega = 2.0;               // width of the new cusps in the level-2 model
    std::vector<double> count_grid{1.0, 2.0, 3.0, 4.0, 5.0};
    double de_h = 1e-3;
    bool with_de = true;
    double radius_safety = 0.9;
    double cross_tolerance = 0.05;
    bool allow_incomplete = false;
    EnumerationOptions enumeration;
};

// Non-pinching hyperbolic element for part (i) and the torus cusp for (ii).
// In the tracking frame A B A b tends to the level-2 product A B and the
// commutator cusp tends to the cusp at 1.
inline const char* part_i_word() { return "ABAb"; }
inline const char* part_i_limit_word() { return "AB"; }
inline const char* part_ii_word() { return "baBA"; }
inline const char* part_ii_limit_word() { return "Ab"; }

struct SweepRow {
    double ell = 0.0;
    cplx s;
    std::string z_tag;
    cplx value;          // the swept quantity
    double tail_bound = 0.0;
    double T0 = 0.0;
    std::size_t n_terms = 0;
    bool complete = false;
    double r = 0.0;
    std::string flag;    // empty when nothing to report
    // part iii
    cplx raw;            // unscaled E_hyp
    cplx f_normalized;
    double g = 0.0;
    std::vector<std::size_t> counts;  // N_hyp(T + g) over the count grid
    bool shift_identity = true;        // N_hyp(T + g) = N_boundary(T) on the grid
    double sl2_term = 0.0;
    double de_residual = 0.0;
};

struct SweepLimit {
    cplx s;
    cplx value;
    double tail_bound = 0.0;
    std::vector<std::size_t> counts;  // part iii: N_par at both new cusps, summed
};

struct SweepTrend {
    cplx s;
    std::vector<double> differences;  // |v_k - v_{k-1}|
    bool monotone_after_first = false;
    double last_difference = 0.0;
    double last_tails = 0.0;          // tails of the two rows in the last difference
    double late_variation = 0.0;      // spread over the last three rows
    double late_tails = 0.0;
    double cross_relative = 0.0;      // |last row - limit| / |limit|
    double sl2_slope = 0.0;           // part iii only
};

struct SweepResult {
    TheoremPart part = TheoremPart::III;
    std::string family = "punctured-torus";
    std::string quantity;
    std::string limit_quantity;
    std::string config_hash;
    std::vector<SweepRow> rows;
    std::vector<SweepLimit> limits;
    std::vector<SweepTrend> trends;
    std::vector<double> count_grid;
};

namespace detail {

inline SeriesOptions series_options(const SweepConfig& cfg)
{
    SeriesOptions o;
    o.radius_safety = cfg.radius_safety;
    o.allow_incomplete = cfg.allow_incomplete;
    o.enumeration = cfg.enumeration;
    return o;
}

inline EisensteinValue hyp_at_tail(const FuchsianGroup& g, const Word& w, cplx s, const UHPoint& z,
                                   double eps, const SeriesOptions& opts)
{
    const double r = series_radius(g, z, opts);
    const double T0 = std::max(tail_T0(eps, s.real() - 1.0, r), r * 1.0001);
    SeriesOptions o = opts;
    o.radius = r;
    return e_hyp(g, w, s, z, T0, o);
}

inline EisensteinValue par_at_tail(const FuchsianGroup& g, const Word& w, cplx s, const UHPoint& z,
                                   double y0, double omega, double eps, const SeriesOptions& opts)
{
    const double r = series_radius(g, z, opts);
    const double scale = std::pow(y0 / omega, s.real());
    const double T0 = std::max(tail_T0(eps / scale, s.real() - 1.0, r), r * 1.0001);
    SeriesOptions o = opts;
    o.radius = r;
    return e_par(g, w, s, z, y0, T0, o);
}

inline void fill_trend(SweepResult& res, const SweepConfig& cfg)
{
    for (const SweepLimit& lim : res.limits) {
        SweepTrend t;
        t.s = lim.s;
        std::vector<const SweepRow*> rows;
        for (const auto& r : res.rows) {
            if (r.s == lim.s) rows.push_back(&r);
        }
        for (std::size_t k = 1; k < rows.size(); ++k) {
            t.differences.push_back(std::abs(rows[k]->value - rows[k - 1]->value));
        }
        // Differences d_k for k >= 2 are non-increasing.
        t.monotone_after_first = true;
        for (std::size_t k = 2; k < t.differences.size(); ++k) {
            if (t.differences[k] > t.differences[k - 1]) t.monotone_after_first = false;
        }
        if (!rows.empty()) {
            const std::size_t n = rows.size();
            if (n >= 2) {
                t.last_difference = t.differences.back();
                t.last_tails = rows[n - 1]->tail_bound + rows[n - 2]->tail_bound;
            }
            const std::size_t from = n >= 3 ? n - 3 : 0;
            double lo = infinity, hi = -infinity;
            for (std::size_t k = from; k < n; ++k) {
                lo = std::min(lo, rows[k]->value.real());
                hi = std::max(hi, rows[k]->value.real());
                t.late_tails += rows[k]->tail_bound;
            }
            // Spread of the complex values: the diameter of the last rows.
            double diam = 0.0;
            for (std::size_t k = from; k < n; ++k) {
                for (std::size_t j = from; j < k; ++j) {
                    diam = std::max(diam, std::abs(rows[k]->value - rows[j]->value));
                }
            }
            t.late_variation = diam;
            t.cross_relative = std::abs(rows[n - 1]->value - lim.value) / std::abs(lim.value);
        }
        if (res.part == TheoremPart::III && cfg.with_de) {
            std::vector<double> ls, ts;
            for (const SweepRow* r : rows) {
                if (r->sl2_term > 0.0) {
                    ls.push_back(r->ell);
                    ts.push_back(r->sl2_term);
                }
            }
            if (ls.size() >= 2) t.sl2_slope = loglog_slope(ls, ts);
        }
        res.trends.push_back(std::move(t));
    }
}

}  // namespace detail

inline SweepResult sweep_main_theorem(TheoremPart part, const SweepConfig& cfg)
{
    if (cfg.ells.empty() || cfg.s.empty()) throw domain_error("sweep needs ell and s values");
    for (cplx s : cfg.s) detail::require_convergent(s);
    const SeriesOptions opts = detail::series_options(cfg);
    SweepResult res;
    res.part = part;
    res.count_grid = cfg.count_grid;

    std::vector<double> ells = cfg.ells;
    std::sort(ells.begin(), ells.end(), std::greater<>());
    const FuchsianGroup gamma2 = thrice_punctured_sphere_group();

    switch (part) {
    case TheoremPart::I:
        res.quantity = std::string("E_hyp ") + part_i_word();
        res.limit_quantity = std::string("level-2 E_hyp ") + part_i_limit_word();
        break;
    case TheoremPart::II:
        res.quantity = std::string("E_par ") + part_ii_word();
        res.limit_quantity = std::string("level-2 E_par ") + part_ii_limit_word();
        break;
    case TheoremPart::III:
        res.quantity = "ell^-s E_hyp A";
        res.limit_quantity = "level-2 E_par A + E_par B";
        break;
    }

    // Limits on the level-2 group at the same point.
    for (cplx s : cfg.s) {
        SweepLimit lim;
        lim.s = s;
        if (part == TheoremPart::I) {
            const Word w = gamma2.word(part_i_limit_word());
            const Frame f = axis_frame(gamma2, w);
            const EisensteinValue v = detail::hyp_at_tail(f.group, w, s, f.to_frame(cfg.point), cfg.epsilon, opts);
            lim.value = v.value;
            lim.tail_bound = v.tail_bound;
        } else if (part == TheoremPart::II) {
            const Word w = gamma2.word(part_ii_limit_word());
            const Frame f = cusp_frame(gamma2, w, cfg.omega);
            const EisensteinValue v = detail::par_at_tail(f.group, w, s, f.to_frame(cfg.point), cfg.y0,
                                                          cfg.omega, cfg.epsilon, opts);
            lim.value = v.value;
            lim.tail_bound = v.tail_bound;
        } else {
            lim.counts.assign(cfg.count_grid.size(), 0);
            for (const char* name : {"A", "B"}) {
                const Word w = gamma2.word(name);
                const Frame f = cusp_frame(gamma2, w, cfg.omega);
                const UHPoint z = f.to_frame(cfg.point);
                const EisensteinValue v =
                    detail::par_at_tail(f.group, w, s, z, cfg.y0, cfg.omega, cfg.epsilon / 2.0, opts);
                lim.value += v.value;
                lim.tail_bound += v.tail_bound;
                if (s == cfg.s.front()) {
                    for (std::size_t i = 0; i < cfg.count_grid.size(); ++i) {
                        lim.counts[i] += n_par(f.group, w, z, cfg.y0, cfg.count_grid[i], cfg.enumeration);
                    }
                }
            }
        }
        res.limits.push_back(std::move(lim));
    }

    for (cplx s : cfg.s) {
        for (double ell : ells) {
            SweepRow row;
            row.ell = ell;
            row.s = s;
            row.z_tag = tracked_point_tag();
            const Frame pf = punctured_torus_tracking_frame(ell);
            try {
                if (part == TheoremPart::I) {
                    const Word w = pf.group.word(part_i_word());
                    const Frame f = axis_frame(pf.group, w);
                    const EisensteinValue v =
                        detail::hyp_at_tail(f.group, w, s, f.to_frame(cfg.point), cfg.epsilon, opts);
                    row.value = v.value;
                    row.tail_bound = v.tail_bound;
                    row.T0 = v.T0;
                    row.n_terms = v.n_terms;
                    row.complete = v.complete;
                    row.r = v.r;
                } else if (part == TheoremPart::II) {
                    const Word w = pf.group.word(part_ii_word());
                    const Frame f = cusp_frame(pf.group, w, cfg.omega);
                    const EisensteinValue v = detail::par_at_tail(
                        f.group, w, s, f.to_frame(cfg.point), cfg.y0, cfg.omega, cfg.epsilon, opts);
                    row.value = v.value;
                    row.tail_bound = v.tail_bound;
                    row.T0 = v.T0;
                    row.n_terms = v.n_terms;
                    row.complete = v.complete;
                    row.r = v.r;
                } else {
                    const Word a = pf.group.word("A");
                    const Frame af = axis_frame(pf.group, a);
                    const UHPoint z = af.to_frame(cfg.point);
                    const double r = series_radius(af.group, z, opts);
                    const double sigma = s.real();
                    const double T0 =
                        std::max(tail_T0(cfg.epsilon * std::pow(ell, sigma), sigma - 1.0, r), r * 1.0001);
                    row.g = collar_half_width(cfg.y0, ell, cfg.omega);
                    double top = T0;
                    for (double t : cfg.count_grid) top = std::max(top, t + row.g + 1e-9);
                    const DistanceSpectrum spec = orbit_distances_hyp(af.group, a, z, top, cfg.enumeration);
                    if (!spec.complete && !cfg.allow_incomplete) {
                        throw incomplete_spectrum("spectrum hit the depth cap at length " +
                                                  std::to_string(spec.search_depth));
                    }
                    const EisensteinValue v = e_hyp(spec, s, T0, r);
                    row.raw = v.value;
                    row.value = std::exp(-s * std::log(ell)) * v.value;
                    row.f_normalized = f_factor(s, ell, cfg.omega, cfg.y0).value * v.value /
                                       std::exp(s * std::log(cfg.omega));
                    row.tail_bound = std::pow(ell, -sigma) * v.tail_bound;
                    row.T0 = T0;
                    row.n_terms = v.n_terms;
                    row.complete = spec.complete;
                    row.r = r;
                    const CountingFunction N(spec, CountingKind::Hyp);
                    const double eps_collar = horocycle_area_relation(cfg.omega, cfg.y0).epsilon;
                    for (double t : cfg.count_grid) {
                        const std::size_t n = N(t + row.g);
                        row.counts.push_back(n);
                        std::size_t nb = 0;
                        for (std::size_t i = 0; i < spec.size(); ++i) {
                            if (dist_to_collar_boundary(spec.points[i], ell, eps_collar) < t - tie_tolerance) ++nb;
                        }
                        if (nb != n) row.shift_identity = false;
                    }
                    if (cfg.with_de) {
                        const DELimit d = de_limit_residual(ell, s, cfg.point, cfg.de_h, T0, opts);
                        row.sl2_term = d.sl2_term;
                        row.de_residual = d.residual;
                    }
                }
                if (!row.complete) row.flag = "incomplete";
            } catch (const incomplete_spectrum& e) {
                row.complete = false;
                row.flag = std::string("uncertified: ") + e.what();
            }
            res.rows.push_back(std::move(row));
        }
    }
    detail::fill_trend(res, cfg);
    return res;
}

}  // namespace eisen
