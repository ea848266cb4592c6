#pragma once

// Verification suites. Each suite checks one family of identities, bounds or
// trends and reports the worst observed value against its tolerance. The
// acceptance binary and `eisen verify` both run these.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "eisen/counting.hpp"
#include "eisen/degeneration.hpp"
#include "eisen/eisenstein.hpp"
#include "eisen/fuchsian.hpp"
#include "eisen/hyperbolic.hpp"
#include "eisen/orbit.hpp"

namespace eisen::verify {

struct Check {
    std::string invariant;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string instance;  // enough to replay the worst case
};

struct SuiteResult {
    std::string name;
    int criterion = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;
    double time_limit = 0.0;
    std::string error;  // set when the suite threw

    bool pass() const
    {
        if (!error.empty()) return false;
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return seconds <= time_limit;
    }
};

struct Options {
    std::uint64_t seed = 20240611;
    int threads = 1;
    // Injected for negative controls.
    BoundFormula bound = bound_rhs;
};

namespace detail {

inline std::string fmt_point(const UHPoint& z)
{
    std::ostringstream o;
    o.precision(17);
    o << z.x() << "+" << z.y() << "i";
    return o.str();
}

inline std::string fmt_s(cplx s)
{
    std::ostringstream o;
    o.precision(17);
    o << s.real() << (s.imag() < 0 ? "" : "+") << s.imag() << "j";
    return o.str();
}

// Keeps the worst (largest) observation of one invariant.
class Worst {
public:
    Worst(std::string invariant, double tolerance) : c_{std::move(invariant), -infinity, tolerance, true, ""} {}

    void observe(double v, const std::string& instance)
    {
        if (!(v <= c_.observed) || std::isnan(v)) {
            c_.observed = v;
            c_.instance = instance;
        }
    }
    Check done()
    {
        c_.pass = std::isfinite(c_.observed) && c_.observed <= c_.tolerance;
        return c_;
    }

private:
    Check c_;
};

inline Check flag(std::string invariant, bool ok, std::string instance = "")
{
    return {std::move(invariant), ok ? 0.0 : 1.0, 0.0, ok, std::move(instance)};
}

// Integral of 1/sin over [a, b] inside (0, pi), in the variable log(theta)
// so that small lower limits stay cheap.
inline double csc_integral(double a, double b)
{
    using boost::math::quadrature::gauss_kronrod;
    const auto f = [](double u) {
        const double t = std::exp(u);
        return t / std::sin(t);
    };
    return gauss_kronrod<double, 31>::integrate(f, std::log(a), std::log(b), 10, 1e-14);
}

template <class Body>
SuiteResult run_suite(std::string name, int criterion, std::string title, double limit, Body&& body)
{
    SuiteResult res;
    res.name = std::move(name);
    res.criterion = criterion;
    res.title = std::move(title);
    res.time_limit = limit;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(res.checks);
    } catch (const std::exception& e) {
        res.error = e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

struct AxisInstance {
    std::string tag;
    FuchsianGroup group;
    Word gamma;
    UHPoint z;
};

inline AxisInstance tracked_axis_instance(double ell)
{
    const Frame tf = punctured_torus_tracking_frame(ell);
    const Word a = tf.group.word("A");
    const Frame af = axis_frame(tf.group, a);
    std::ostringstream tag;
    tag << "torus ell=" << ell << " A tracked";
    return {tag.str(), af.group, a, af.to_frame(tracked_point())};
}

struct CuspInstance {
    std::string tag;
    FuchsianGroup group;
    Word parabolic;
    UHPoint z;
    double y0;
    double omega;
};

inline CuspInstance torus_cusp_instance(double ell, const UHPoint& z)
{
    const FuchsianGroup g = punctured_torus_group(ell);
    const Word w = g.word(part_ii_word());
    const Frame f = cusp_frame(g, w, 2.0);
    std::ostringstream tag;
    tag << "torus ell=" << ell << " cusp " << part_ii_word() << " z=" << fmt_point(z);
    return {tag.str(), f.group, w, f.to_frame(z), 10.0, 2.0};
}

inline CuspInstance level2_cusp_instance(const UHPoint& z)
{
    const FuchsianGroup g = thrice_punctured_sphere_group();
    return {"level-2 cusp A z=" + fmt_point(z), g, g.word("A"), z, 10.0, 2.0};
}

}  // namespace detail

// 1. sin(theta) cosh d(z, axis) = 1 and d(z, horocycle) = log(y0 / Im z).
inline SuiteResult geometry(const Options& opt)
{
    return detail::run_suite("geometry", 1, "geometric identities", 1.0, [&](std::vector<Check>& out) {
        std::mt19937_64 rng(opt.seed);
        std::uniform_real_distribution<double> th(1e-3, pi - 1e-3), rh(-3.0, 3.0);
        detail::Worst rel("|sin(theta) cosh(d) - 1|", 1e-12);
        detail::Worst horo("|d(z, L_y0) - log(y0 / Im z)|", 1e-12);
        for (int i = 0; i < 10000; ++i) {
            const AxisCoords c{rh(rng), th(rng)};
            const UHPoint z = from_axis_coords(c);
            const std::string tag = detail::fmt_point(z);
            rel.observe(std::abs(std::sin(c.theta) * std::cosh(dist_to_axis(z)) - 1.0), tag);
            // The nearest point of the horocycle lies straight above z.
            const double y0 = z.y() * std::exp(std::abs(rh(rng)) + 1e-3);
            const double direct = dist(z, UHPoint(z.x(), y0));
            horo.observe(std::abs(dist_to_horocycle(z, y0) - direct), tag + " y0=" + std::to_string(y0));
        }
        out.push_back(rel.done());
        out.push_back(horo.done());
    });
}

// 2. g, boundary length and boundary distance against quadrature.
inline SuiteResult collar(const Options&)
{
    return detail::run_suite("collar", 2, "collar formulas", 1.0, [&](std::vector<Check>& out) {
        detail::Worst gq("|g - quadrature|", 1e-10);
        detail::Worst gs("|sinh(g) y0 ell - omega|", 1e-12);
        detail::Worst len("|boundary length - ell / sin(theta_c)|", 1e-10);
        detail::Worst bd("|boundary distance - quadrature|", 1e-10);
        for (int i = 0; i < 10; ++i) {
            const double ell = 1e-3 * std::pow(2000.0, i / 9.0);
            for (int j = 0; j < 10; ++j) {
                const double eps = 0.01 * std::pow(40.0, j / 9.0);
                const double omega = 0.5 + 0.25 * j;
                const double y0 = 2.0 * omega / eps;
                std::ostringstream tag;
                tag << "ell=" << ell << " eps=" << eps << " omega=" << omega << " y0=" << y0;
                const double g = collar_half_width(y0, ell, omega);
                const double theta_c = std::atan2(2.0 * ell, eps);
                gq.observe(std::abs(g - detail::csc_integral(theta_c, pi / 2.0)), tag.str());
                gs.observe(std::abs(std::sinh(g) * y0 * ell - omega) / omega, tag.str());
                len.observe(std::abs(boundary_length(ell, eps) - ell / std::sin(theta_c)), tag.str());
                const double eps1 = 2.5 * eps;
                const double theta_1 = std::atan2(2.0 * ell, eps1);
                bd.observe(std::abs(boundary_distance(ell, eps, eps1) - detail::csc_integral(theta_1, theta_c)),
                           tag.str() + " eps1=" + std::to_string(eps1));
            }
        }
        out.push_back(gq.done());
        out.push_back(gs.done());
        out.push_back(len.done());
        out.push_back(bd.done());
    });
}

// 3. Packing bounds for hyperbolic and parabolic counts.
inline SuiteResult bounds(const Options& opt)
{
    return detail::run_suite("bounds", 3, "counting bounds", 60.0, [&](std::vector<Check>& out) {
        const std::vector<double> T0s{1.0, 1.5, 2.0, 3.0, 4.0};
        std::vector<double> us;
        for (double u = 1.25; u <= 9.0 + 1e-12; u += 0.25) us.push_back(u);
        EnumerationOptions eo;
        eo.threads = opt.threads;
        std::size_t violations = 0, checked = 0;
        std::string where;
        double worst = infinity;
        auto record = [&](const BoundReport& rep, const std::string& tag) {
            checked += rep.checked;
            violations += rep.violations.size();
            if (!rep.violations.empty() && where.empty()) {
                std::ostringstream o;
                o << tag << " T0=" << rep.violations.front().T0 << " u=" << rep.violations.front().u
                  << " N=" << rep.violations.front().count << " rhs=" << rep.violations.front().rhs;
                where = o.str();
            }
            worst = std::min(worst, rep.worst_margin);
        };
        const UHPoint z(0.3, 1.1);
        for (double ell : {1.0, 0.5}) {
            const FuchsianGroup g = punctured_torus_group(ell);
            BoundSetup hyp;
            hyp.stabilizer = g.word("A");
            hyp.enumeration = eo;
            record(verify_bound(g, z, T0s, us, hyp, opt.bound), "torus hyp ell=" + std::to_string(ell));
            const detail::CuspInstance c = detail::torus_cusp_instance(ell, z);
            BoundSetup par;
            par.kind = CountingKind::Par;
            par.stabilizer = c.parabolic;
            par.y0 = c.y0;
            par.enumeration = eo;
            record(verify_bound(c.group, c.z, T0s, us, par, opt.bound), c.tag);
        }
        {
            const detail::CuspInstance c = detail::level2_cusp_instance(z);
            BoundSetup par;
            par.kind = CountingKind::Par;
            par.stabilizer = c.parabolic;
            par.y0 = c.y0;
            par.enumeration = eo;
            record(verify_bound(c.group, c.z, T0s, us, par, opt.bound), c.tag);
            const FuchsianGroup g = thrice_punctured_sphere_group();
            const Word w = g.word(part_i_limit_word());
            const Frame f = axis_frame(g, w);
            BoundSetup hyp;
            hyp.stabilizer = w;
            hyp.enumeration = eo;
            record(verify_bound(f.group, f.to_frame(z), T0s, us, hyp, opt.bound), "level-2 hyp AB");
        }
        out.push_back({"bound violations", static_cast<double>(violations), 0.0, violations == 0, where});
        out.push_back(detail::flag("grid points checked > 0", checked > 0, std::to_string(checked)));
        out.push_back({"-(smallest relative slack)", -worst, 0.0, worst >= 0.0, ""});
    });
}

// 4. N_hyp(T + g) = N_boundary(T) on a grid avoiding spectrum values.
inline SuiteResult shift(const Options& opt)
{
    return detail::run_suite("shift", 4, "shift identity", 60.0, [&](std::vector<Check>& out) {
        std::size_t mismatches = 0, points = 0;
        std::string where;
        const double omega = 2.0, y0 = 10.0;
        const double eps = horocycle_area_relation(omega, y0).epsilon;
        for (double ell : {0.5, 0.25}) {
            for (const UHPoint z : {UHPoint(0.3, 1.1), UHPoint(-0.7, 0.45), UHPoint(2.1, 0.8)}) {
                const FuchsianGroup g = punctured_torus_group(ell);
                const Word a = g.word("A");
                const double gg = collar_half_width(y0, ell, omega);
                const double Tmax = 8.0;
                EnumerationOptions eo;
                eo.threads = opt.threads;
                const DistanceSpectrum spec = orbit_distances_hyp(g, a, z, Tmax + gg + 1.0, eo);
                const CountingFunction N(spec, CountingKind::Hyp);
                for (int k = 0; k < 50; ++k) {
                    double T = 0.1 + (Tmax - 0.1) * k / 49.0;
                    // Move off spectrum values.
                    for (int tries = 0; tries < 100; ++tries) {
                        bool near = false;
                        for (double d : spec.distances) near = near || std::abs(d - (T + gg)) < 1e-9;
                        if (!near) break;
                        T += 1e-7;
                    }
                    const std::size_t a1 = N(T + gg);
                    std::size_t a2 = 0;
                    for (const UHPoint& p : spec.points) {
                        if (dist_to_collar_boundary(p, ell, eps) < T - tie_tolerance) ++a2;
                    }
                    ++points;
                    if (a1 != a2) {
                        ++mismatches;
                        if (where.empty()) {
                            std::ostringstream o;
                            o << "ell=" << ell << " z=" << detail::fmt_point(z) << " T=" << T << " N_hyp=" << a1
                              << " N_boundary=" << a2;
                            where = o.str();
                        }
                    }
                }
            }
        }
        out.push_back({"integer mismatches", static_cast<double>(mismatches), 0.0, mismatches == 0, where});
        out.push_back(detail::flag("grid points >= 300", points >= 300, std::to_string(points)));
    });
}

// 5. Direct sums against Stieltjes forms.
inline SuiteResult oracle(const Options& opt)
{
    return detail::run_suite("oracle", 5, "direct vs Stieltjes", 60.0, [&](std::vector<Check>& out) {
        std::mt19937_64 rng(opt.seed + 5);
        std::uniform_real_distribution<double> ux(-0.8, 0.8), uy(0.6, 1.6), us(1.2, 4.0), ui(-3.0, 3.0);
        detail::Worst w("relative |direct - Stieltjes|", 1e-12);
        const FuchsianGroup torus = punctured_torus_group(1.0);
        const FuchsianGroup level2 = thrice_punctured_sphere_group();
        const double T0 = 9.0;
        for (int i = 0; i < 20; ++i) {
            const cplx s(us(rng), i % 3 == 0 ? 0.0 : ui(rng));
            const UHPoint z(ux(rng), uy(rng));
            const std::string tag = "s=" + detail::fmt_s(s) + " z=" + detail::fmt_point(z);
            if (i % 2 == 0) {
                const DistanceSpectrum spec = orbit_distances_hyp(torus, torus.word("A"), z, T0);
                const cplx a = hyp_direct_sum(spec, s, T0);
                const cplx b = hyp_stieltjes_sum(spec, s, T0);
                w.observe(std::abs(a - b) / std::abs(b), "torus ell=1 hyp A " + tag);
            } else {
                const double y0 = 10.0;
                const DistanceSpectrum spec = orbit_distances_par(level2, level2.word("A"), z, y0, T0);
                const cplx a = par_direct_sum(spec, s, 2.0, T0);
                const cplx b = par_stieltjes_sum(spec, s, y0, 2.0, T0);
                w.observe(std::abs(a - b) / std::abs(b), "level-2 par A " + tag);
            }
        }
        out.push_back(w.done());
    });
}

// 6. Truncation at T0 from the tail formula leaves at most eps.
inline SuiteResult tails(const Options& opt)
{
    return detail::run_suite("tails", 6, "certified tails", 600.0, [&](std::vector<Check>& out) {
        const double eps = 1e-6;
        const cplx s(2.0);  // delta = 1
        detail::Worst w("|E(T0 + 2) - E(T0)|", eps);
        std::size_t incomplete = 0;
        EnumerationOptions eo;
        eo.threads = opt.threads;
        auto run = [&](const std::string& tag, const FuchsianGroup& g, const OrbitTarget& t, const Word& stab,
                       const UHPoint& z, double prefactor) {
            const double r = injectivity_radius(g, z, eo).radius * 0.9;
            const double T0 = tail_T0(eps / prefactor, s.real() - 1.0, r);
            const PartialSums ps = partial_sums(g, t, stab, s, z, {T0, T0 + 2.0}, eo);
            if (!ps.complete) ++incomplete;
            std::ostringstream o;
            o << tag << " T0=" << T0 << " r=" << r << " terms=" << ps.n_terms[0] << "/" << ps.n_terms[1]
              << " nodes=" << ps.nodes_visited;
            w.observe(prefactor * std::abs(ps.values[1] - ps.values[0]), o.str());
        };
        const FuchsianGroup g1 = punctured_torus_group(1.0);
        run("torus ell=1 hyp A z=0.3+1.1i", g1, OrbitTarget::axis(), g1.word("A"), UHPoint(0.3, 1.1), 1.0);
        for (double ell : {0.5, 0.25}) {
            const detail::AxisInstance a = detail::tracked_axis_instance(ell);
            run(a.tag, a.group, OrbitTarget::axis(), a.gamma, a.z, 1.0);
        }
        const detail::CuspInstance c = detail::level2_cusp_instance(UHPoint(0.3, 1.1));
        run(c.tag, c.group, OrbitTarget::horocycle(c.y0), c.parabolic, c.z, std::pow(c.y0 / c.omega, s.real()));
        out.push_back(w.done());
        out.push_back({"incomplete enumerations", static_cast<double>(incomplete), 0.0, incomplete == 0, ""});
    });
}

// 7. Laplace equations by finite differences.
inline SuiteResult de(const Options& opt)
{
    return detail::run_suite("de", 7, "differential equations", 120.0, [&](std::vector<Check>& out) {
        const cplx s(3.0);
        const double h = 1e-3;
        SeriesOptions so;
        so.enumeration.threads = opt.threads;
        detail::Worst rel("relative residual at h", 1e-3);
        detail::Worst ratio("|residual(h) / residual(h/2) - 4|", 0.4);
        detail::Worst cyc("cyclic residual at h", 1e-5);
        auto record = [&](const std::string& tag, const DEResidual& a, const DEResidual& b) {
            rel.observe(a.relative, tag);
            ratio.observe(std::abs(a.residual / b.residual - 4.0), tag);
        };
        {
            const FuchsianGroup g = punctured_torus_group(1.0);
            const Word a = g.word("A");
            const UHPoint z(0.3, 1.1);
            const double r = series_radius(g, z, so);
            const double T0 = tail_T0(1e-9, s.real() - 1.0, r);
            const DEResidual r1 = de_residual_hyp(g, a, s, z, h, T0, so);
            const DEResidual r2 = de_residual_hyp(g, a, s, z, h / 2.0, T0, so);
            record("torus ell=1 hyp A z=0.3+1.1i T0=" + std::to_string(T0), r1, r2);
        }
        {
            const detail::CuspInstance c = detail::level2_cusp_instance(UHPoint(0.3, 1.1));
            const double r = series_radius(c.group, c.z, so);
            const double T0 = tail_T0(1e-9 / std::pow(c.y0 / c.omega, s.real()), s.real() - 1.0, r);
            const DEResidual r1 = de_residual_par(c.group, c.parabolic, s, c.z, c.y0, h, T0, so);
            const DEResidual r2 = de_residual_par(c.group, c.parabolic, s, c.z, c.y0, h / 2.0, T0, so);
            record(c.tag + " T0=" + std::to_string(T0), r1, r2);
        }
        {
            // One coset each: the residual is the stencil error alone.
            const FuchsianGroup cyc_h = cyclic_group(MoebiusTransform::diagonal(std::exp(0.5)));
            const UHPoint z = from_axis_coords({0.2, pi / 4.0});
            cyc.observe(de_residual_hyp(cyc_h, Word{0}, s, z, h, 1.0, so).residual, "cyclic hyp theta=pi/4");
            const FuchsianGroup cyc_p = cyclic_group(MoebiusTransform::translation(1.0));
            const UHPoint w(0.1, 2.0);
            cyc.observe(de_residual_par(cyc_p, Word{0}, s, w, 5.0, h, 1.0, so).residual, "cyclic par z=0.1+2i");
        }
        out.push_back(rel.done());
        out.push_back(ratio.done());
        out.push_back(cyc.done());
    });
}

// 8. 2^-s e^{rs} cosh(x + r)^-s -> e^{-sx}.
inline SuiteResult limit21(const Options&)
{
    return detail::run_suite("cosh-limit", 8, "cosh limit", 1.0, [&](std::vector<Check>& out) {
        std::vector<double> xs;
        for (int i = 0; i <= 200; ++i) xs.push_back(0.05 * i);
        const auto at10 = limit21_check(cplx(2.0), {10.0}, xs);
        out.push_back({"sup error at r=10, s=2", at10.front().max_error, 1e-8,
                       at10.front().max_error <= 1e-8, "x in [0, 10]"});
        const auto rows = limit21_check(cplx(2.0), {2.0, 4.0, 6.0, 8.0, 10.0, 12.0}, xs);
        bool mono = true;
        std::string where;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (!(rows[i].max_error < rows[i - 1].max_error)) {
                mono = false;
                where = "r=" + std::to_string(rows[i].r);
            }
        }
        out.push_back(detail::flag("sup error strictly decreasing in r", mono, where));
    });
}

// 9. f (ell / omega)^s -> 1 within the series bound.
inline SuiteResult f_asymptotic(const Options&)
{
    return detail::run_suite("f-asymptotic", 9, "f-asymptotic", 1.0, [&](std::vector<Check>& out) {
        detail::Worst w("|ratio - 1| / bound", 1.0);
        detail::Worst id("|f - (y0/2)^s e^{sg}| / |f|", 1e-12);
        for (const cplx s : {cplx(2.0), cplx(3.0), cplx(2.0, 1.0)}) {
            for (const auto& [omega, y0] : {std::pair{1.0, 1.0}, std::pair{2.0, 10.0}}) {
                for (int i = 0; i <= 60; ++i) {
                    const double ell = 1e-3 * std::pow(500.0, i / 60.0);
                    const FFactor f = f_factor(s, ell, omega, y0);
                    const double q = omega / (y0 * ell);
                    const double a = std::abs(s) / (4.0 * q * q);
                    const double bound = 2.0 * a * std::exp(a);
                    std::ostringstream tag;
                    tag << "s=" << detail::fmt_s(s) << " ell=" << ell << " omega=" << omega << " y0=" << y0;
                    w.observe(std::abs(f.ratio - 1.0) / bound, tag.str());
                    // Independent form of the same value.
                    const cplx direct = std::pow(cplx(y0 / 2.0), s) *
                                        std::pow(cplx(q + std::sqrt(q * q + 1.0)), s);
                    id.observe(std::abs(f.value - direct) / std::abs(direct), tag.str());
                }
            }
        }
        out.push_back(w.done());
        out.push_back(id.done());
    });
}

struct SweepRun {
    SweepResult iii;
    SweepResult i;
    SweepResult ii;
};

inline SweepConfig acceptance_sweep_config(const Options& opt)
{
    SweepConfig cfg;
    cfg.enumeration.threads = opt.threads;
    return cfg;
}

// 10. Part (iii) trend along the halving sweep.
inline SuiteResult theorem_iii(const Options& opt, SweepResult* keep = nullptr)
{
    return detail::run_suite("pinch-limit", 10, "pinching limit trend", 1800.0, [&](std::vector<Check>& out) {
        const SweepConfig cfg = acceptance_sweep_config(opt);
        SweepResult res = sweep_main_theorem(TheoremPart::III, cfg);
        const SweepTrend& t = res.trends.front();
        std::size_t flagged = 0;
        for (const auto& r : res.rows) flagged += r.flag.empty() ? 0 : 1;
        out.push_back({"last difference / (10 x summed tails)", t.last_difference / (10.0 * t.last_tails), 1.0,
                       t.last_difference <= 10.0 * t.last_tails, ""});
        out.push_back(detail::flag("differences non-increasing for k >= 2", t.monotone_after_first));
        out.push_back({"flagged rows", static_cast<double>(flagged), 0.0, flagged == 0, ""});
        out.push_back({"-(fitted exponent of (s l)^2 term) + 1.9", 1.9 - t.sl2_slope, 0.0, t.sl2_slope >= 1.9,
                       "slope=" + std::to_string(t.sl2_slope)});
        out.push_back({"relative distance to level-2 E_par(A) + E_par(B)", t.cross_relative, cfg.cross_tolerance,
                       t.cross_relative <= cfg.cross_tolerance, "tracking-limited"});
        bool shift_ok = true;
        for (const auto& r : res.rows) shift_ok = shift_ok && r.shift_identity;
        out.push_back(detail::flag("shift identity on every row", shift_ok));
        if (keep) *keep = std::move(res);
    });
}

// 11. Parts (i) and (ii): the values settle.
inline SuiteResult theorem_i_ii(const Options& opt)
{
    return detail::run_suite("pinch-stable", 11, "non-pinching stability", 1800.0, [&](std::vector<Check>& out) {
        const SweepConfig cfg = acceptance_sweep_config(opt);
        for (TheoremPart p : {TheoremPart::I, TheoremPart::II}) {
            const SweepResult res = sweep_main_theorem(p, cfg);
            const SweepTrend& t = res.trends.front();
            const std::string name = std::string("part ") + to_string(p);
            std::size_t flagged = 0;
            for (const auto& r : res.rows) flagged += r.flag.empty() ? 0 : 1;
            out.push_back({name + " late variation / (10 x summed tails)", t.late_variation / (10.0 * t.late_tails),
                           1.0, t.late_variation <= 10.0 * t.late_tails, res.quantity});
            out.push_back({name + " flagged rows", static_cast<double>(flagged), 0.0, flagged == 0, ""});
            out.push_back({name + " relative distance to level-2 limit (informational)", t.cross_relative,
                           cfg.cross_tolerance, t.cross_relative <= cfg.cross_tolerance, res.limit_quantity});
        }
    });
}

// 12. Stieltjes inequality on random monotone step functions.
inline SuiteResult stieltjes(const Options& opt)
{
    return detail::run_suite("stieltjes", 12, "Stieltjes inequality", 1.0, [&](std::vector<Check>& out) {
        std::mt19937_64 rng(opt.seed + 12);
        std::uniform_real_distribution<double> pos(0.0, 6.0), size(0.0, 3.0);
        std::uniform_int_distribution<int> count(0, 12);
        std::size_t failed = 0, bad_pre = 0;
        std::string where;
        const auto F = [](double u) { return std::pow(std::cosh(u), -2.0); };
        for (int i = 0; i < 1000; ++i) {
            const double a = 0.0;
            StepFunction g1;
            g1.initial = size(rng);
            std::vector<std::pair<double, double>> j1;
            for (int k = count(rng); k > 0; --k) j1.push_back({a + 1e-3 + pos(rng), size(rng)});
            std::sort(j1.begin(), j1.end());
            for (auto [x, h] : j1) {
                g1.jump_at.push_back(x);
                g1.jump_size.push_back(h);
            }
            // g2 = g1 + an independent non-decreasing step function.
            StepFunction extra;
            extra.initial = size(rng);
            std::vector<std::pair<double, double>> j2;
            for (int k = count(rng); k > 0; --k) j2.push_back({a + 1e-3 + pos(rng), size(rng)});
            std::vector<std::pair<double, double>> all = j1;
            all.insert(all.end(), j2.begin(), j2.end());
            std::sort(all.begin(), all.end());
            StepFunction g2;
            g2.initial = g1.initial + extra.initial;
            for (auto [x, h] : all) {
                g2.jump_at.push_back(x);
                g2.jump_size.push_back(h);
            }
            const StieltjesCheck c = stieltjes_inequality_check(F, g1, g2, a);
            if (!c.precondition_ok) ++bad_pre;
            if (!c.holds) {
                ++failed;
                if (where.empty()) where = "instance " + std::to_string(i) + ": " + c.problem;
            }
        }
        out.push_back({"failed instances of 1000", static_cast<double>(failed), 0.0, failed == 0, where});
        out.push_back({"precondition failures", static_cast<double>(bad_pre), 0.0, bad_pre == 0, ""});
    });
}

struct SuiteEntry {
    const char* name;
    std::function<SuiteResult(const Options&)> run;
};

inline std::vector<SuiteEntry> all_suites()
{
    return {
        {"geometry", geometry},
        {"collar", collar},
        {"bounds", bounds},
        {"shift", shift},
        {"oracle", oracle},
        {"tails", tails},
        {"de", de},
        {"cosh-limit", limit21},
        {"f-asymptotic", f_asymptotic},
        {"pinch-limit", [](const Options& o) { return theorem_iii(o); }},
        {"pinch-stable", theorem_i_ii},
        {"stieltjes", stieltjes},
    };
}

}  // namespace eisen::verify
