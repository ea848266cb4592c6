#pragma once

// Parabolic and hyperbolic Eisenstein series as truncated coset sums,
//   E_par(s, z) = omega^-s sum (Im eta z)^s      over <P>\Gamma,
//   E_hyp(s, z) = sum cosh(d(eta z, axis))^-s    over <gamma>\Gamma,
// with the tail past T0 bounded through the packing bound on the counting
// function:
//   tail <= e^{-delta T0} (2^delta e^r / (delta sinh^2(r/2)) + 2^delta sinh r / sinh^2(r/2)),
// delta = Re s - 1 and r a lower bound on the injectivity radius at z.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eisen/errors.hpp"
#include "eisen/fuchsian.hpp"
#include "eisen/hyperbolic.hpp"
#include "eisen/orbit.hpp"
#include "eisen/word.hpp"

namespace eisen {

using cplx = std::complex<double>;

enum class SeriesKind { Par, Hyp };

inline const char* to_string(SeriesKind k) noexcept { return k == SeriesKind::Par ? "par" : "hyp"; }

struct EisensteinValue {
    cplx value;
    cplx s;
    double T0 = 0.0;
    double tail_bound = 0.0;
    std::size_t n_terms = 0;
    SeriesKind kind = SeriesKind::Hyp;
    bool complete = false;
    double delta = 0.0;
    double r = 0.0;  // radius used in the tail bound
};

// Compensated summation (Neumaier), one accumulator per component.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class ComplexSum {
public:
    void add(cplx z) noexcept
    {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const noexcept { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_;
    CompensatedSum im_;
};

namespace detail {

inline void require_convergent(cplx s)
{
    if (!(s.real() > 1.0)) {
        std::ostringstream msg;
        msg << "Eisenstein series need Re s > 1, got s = " << s.real() << (s.imag() < 0 ? "" : "+")
            << s.imag() << "i";
        throw domain_error(msg.str());
    }
}

// log cosh d without overflow.
inline double log_cosh(double d) noexcept
{
    const double a = std::abs(d);
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

inline cplx hyp_term_from_distance(cplx s, double d) noexcept { return std::exp(-s * log_cosh(d)); }

// (sin theta)^s for a point in the axis frame.
inline cplx hyp_term_from_point(cplx s, const UHPoint& p) noexcept
{
    return std::exp(s * std::log(p.y() / std::hypot(p.x(), p.y())));
}

inline cplx par_term_from_point(cplx s, const UHPoint& p) noexcept { return std::exp(s * std::log(p.y())); }

}  // namespace detail

inline double tail_bound(double T0, double delta, double r)
{
    if (!(delta > 0.0) || !(r > 0.0) || !(T0 > r)) {
        std::ostringstream msg;
        msg << "tail_bound needs T0 > r > 0 and delta > 0, got T0 = " << T0 << ", r = " << r
            << ", delta = " << delta;
        throw domain_error(msg.str());
    }
    const double sh2 = std::sinh(r / 2.0) * std::sinh(r / 2.0);
    const double c = std::pow(2.0, delta) * (std::exp(r) / delta + std::sinh(r)) / sh2;
    return std::exp(-delta * T0) * c;
}

// Smallest T0 with tail_bound(T0, delta, r) <= eps.
inline double tail_T0(double eps, double delta, double r)
{
    if (!(eps > 0.0) || !(delta > 0.0) || !(r > 0.0)) {
        throw domain_error("tail_T0 needs eps, delta and r positive");
    }
    const double sh2 = std::sinh(r / 2.0) * std::sinh(r / 2.0);
    const double a = std::pow(2.0, delta) * std::exp(r) / (delta * sh2);
    const double b = std::pow(2.0, delta) * std::sinh(r) / sh2;
    return (-std::log(eps) + std::log(a + b)) / delta;
}

// Truncated sums over one spectrum. The direct forms read the orbit points,
// the Stieltjes forms integrate against the jumps of the counting function.

inline cplx hyp_direct_sum(const DistanceSpectrum& spec, cplx s, double T0)
{
    ComplexSum acc;
    for (std::size_t i = 0; i < spec.size() && spec.distances[i] < T0; ++i) {
        acc.add(detail::hyp_term_from_point(s, spec.points[i]));
    }
    return acc.value();
}

template <class Term>
cplx stieltjes_sum(const DistanceSpectrum& spec, double T0, Term&& F)
{
    ComplexSum acc;
    std::size_t i = 0;
    while (i < spec.size() && spec.distances[i] < T0) {
        std::size_t j = i;
        while (j < spec.size() && spec.distances[j] == spec.distances[i]) ++j;
        acc.add(static_cast<double>(j - i) * F(spec.distances[i]));
        i = j;
    }
    return acc.value();
}

inline cplx hyp_stieltjes_sum(const DistanceSpectrum& spec, cplx s, double T0)
{
    return stieltjes_sum(spec, T0, [s](double d) { return detail::hyp_term_from_distance(s, d); });
}

inline cplx par_direct_sum(const DistanceSpectrum& spec, cplx s, double omega, double T0)
{
    ComplexSum acc;
    for (std::size_t i = 0; i < spec.size() && spec.distances[i] < T0; ++i) {
        acc.add(detail::par_term_from_point(s, spec.points[i]));
    }
    return std::exp(-s * std::log(omega)) * acc.value();
}

inline cplx par_stieltjes_sum(const DistanceSpectrum& spec, cplx s, double y0, double omega,
                              double T0)
{
    const cplx sum = stieltjes_sum(spec, T0, [s](double d) { return std::exp(-s * d); });
    return std::exp(s * std::log(y0 / omega)) * sum;
}

struct SeriesOptions {
    // Applied to the enumerated injectivity radius before it enters the tail.
    double radius_safety = 0.9;
    // Overrides the enumerated radius (already a lower bound).
    std::optional<double> radius;
    bool allow_incomplete = false;
    EnumerationOptions enumeration;
};

inline double series_radius(const FuchsianGroup& group, const UHPoint& z, const SeriesOptions& opts)
{
    if (opts.radius) return *opts.radius;
    const InjectivityRadius inj = injectivity_radius(group, z, opts.enumeration);
    if (!inj.complete && !opts.allow_incomplete) {
        throw incomplete_spectrum("injectivity radius search hit the depth cap");
    }
    return inj.radius * opts.radius_safety;
}

// Translation length of the cusp stabilizer in a cusp frame.
inline double cusp_width(const FuchsianGroup& group, const Word& parabolic)
{
    const MoebiusTransform m = group.evaluate(parabolic);
    return std::abs(m.b() / m.a());
}

// Folds of an existing spectrum; the same spectrum serves a whole s grid.
inline EisensteinValue e_hyp(const DistanceSpectrum& spec, cplx s, double T0, double r)
{
    detail::require_convergent(s);
    if (T0 > spec.cutoff) throw incomplete_spectrum("T0 exceeds the spectrum cutoff");
    EisensteinValue v;
    v.kind = SeriesKind::Hyp;
    v.s = s;
    v.T0 = T0;
    v.r = r;
    v.delta = s.real() - 1.0;
    v.value = hyp_direct_sum(spec, s, T0);
    v.n_terms = spec.count_below(T0);
    v.tail_bound = spec.exhaustive ? 0.0 : tail_bound(T0, v.delta, r);
    v.complete = spec.complete;
    return v;
}

inline EisensteinValue e_par(const DistanceSpectrum& spec, cplx s, double y0, double omega,
                             double T0, double r)
{
    detail::require_convergent(s);
    if (T0 > spec.cutoff) throw incomplete_spectrum("T0 exceeds the spectrum cutoff");
    EisensteinValue v;
    v.kind = SeriesKind::Par;
    v.s = s;
    v.T0 = T0;
    v.r = r;
    v.delta = s.real() - 1.0;
    v.value = par_direct_sum(spec, s, omega, T0);
    v.n_terms = spec.count_below(T0);
    // e^{-sigma u} <= cosh(u)^{-sigma}, so the hyperbolic tail applies after
    // the prefactor (y0 / omega)^sigma.
    v.tail_bound = spec.exhaustive ? 0.0 : std::pow(y0 / omega, s.real()) * tail_bound(T0, v.delta, r);
    v.complete = spec.complete;
    return v;
}

inline EisensteinValue e_hyp(const FuchsianGroup& group, const Word& gamma, cplx s,
                             const UHPoint& z, double T0, const SeriesOptions& opts = {})
{
    detail::require_convergent(s);
    const DistanceSpectrum spec = orbit_distances_hyp(group, gamma, z, T0, opts.enumeration);
    if (!spec.complete && !opts.allow_incomplete) {
        throw incomplete_spectrum("hyperbolic spectrum hit the depth cap at length " +
                                  std::to_string(spec.search_depth));
    }
    return e_hyp(spec, s, T0, series_radius(group, z, opts));
}

inline EisensteinValue e_par(const FuchsianGroup& group, const Word& parabolic, cplx s,
                             const UHPoint& z, double y0, double T0,
                             const SeriesOptions& opts = {})
{
    detail::require_convergent(s);
    const DistanceSpectrum spec = orbit_distances_par(group, parabolic, z, y0, T0, opts.enumeration);
    if (!spec.complete && !opts.allow_incomplete) {
        throw incomplete_spectrum("parabolic spectrum hit the depth cap at length " +
                                  std::to_string(spec.search_depth));
    }
    return e_par(spec, s, y0, cusp_width(group, parabolic), T0, series_radius(group, z, opts));
}

// Truncations of one series at several heights, streamed so that large
// cutoffs need no stored spectrum. Values are unnormalized sums of
// cosh(d)^-s (Hyp) or e^{-s d} (Par).
struct PartialSums {
    std::vector<double> T0;
    std::vector<cplx> values;
    std::vector<std::size_t> n_terms;
    bool complete = false;
    std::size_t nodes_visited = 0;
};

inline PartialSums partial_sums(const FuchsianGroup& group, const OrbitTarget& target,
                                const Word& stabilizer, cplx s, const UHPoint& z,
                                std::vector<double> T0s, const EnumerationOptions& opts = {})
{
    detail::require_convergent(s);
    if (T0s.empty()) throw domain_error("partial_sums needs at least one height");
    std::sort(T0s.begin(), T0s.end());
    const DomainReduction red = group.reduce_to_domain(z);
    std::vector<ComplexSum> acc(T0s.size());
    std::vector<std::size_t> counts(T0s.size(), 0);
    const bool hyp = target.kind() == OrbitTarget::Kind::Axis;
    const EnumerationStats stats = for_each_orbit_point(
        group, target, red.point, T0s.back(), stabilizer, opts, [&](const OrbitHit& h) {
            const cplx t = hyp ? detail::hyp_term_from_distance(s, h.distance) : std::exp(-s * h.distance);
            for (std::size_t k = T0s.size(); k-- > 0;) {
                if (!(h.distance < T0s[k])) break;
                acc[k].add(t);
                ++counts[k];
            }
        });
    PartialSums out;
    out.T0 = T0s;
    out.n_terms = counts;
    out.complete = stats.complete;
    out.nodes_visited = stats.nodes_visited;
    for (const auto& a : acc) out.values.push_back(a.value());
    return out;
}

// Stieltjes inequality for F decreasing and g1 <= g2 non-decreasing step
// functions on [a, inf) with finitely many jumps:
//   int F dg1 + F(a) g1(a) <= int F dg2 + F(a) g2(a).
struct StepFunction {
    double initial = 0.0;            // value at a
    std::vector<double> jump_at;     // ascending, > a
    std::vector<double> jump_size;   // >= 0

    double operator()(double u) const noexcept
    {
        double v = initial;
        for (std::size_t i = 0; i < jump_at.size() && jump_at[i] <= u; ++i) v += jump_size[i];
        return v;
    }
};

struct StieltjesCheck {
    bool holds = false;
    bool precondition_ok = false;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string problem;
};

template <class F>
StieltjesCheck stieltjes_inequality_check(F&& f, const StepFunction& g1, const StepFunction& g2,
                                          double a)
{
    StieltjesCheck out;
    // Breakpoints of both functions; g1 <= g2 only needs checking there.
    std::vector<double> pts{a};
    pts.insert(pts.end(), g1.jump_at.begin(), g1.jump_at.end());
    pts.insert(pts.end(), g2.jump_at.begin(), g2.jump_at.end());
    std::sort(pts.begin(), pts.end());
    for (const StepFunction* g : {&g1, &g2}) {
        for (std::size_t i = 0; i < g->jump_at.size(); ++i) {
            if (g->jump_size[i] < 0.0 || g->jump_at[i] <= a ||
                (i > 0 && g->jump_at[i] < g->jump_at[i - 1])) {
                out.problem = "step functions must be non-decreasing with jumps after a";
                return out;
            }
        }
    }
    for (double u : pts) {
        if (g1(u) > g2(u)) {
            std::ostringstream msg;
            msg << "g1 > g2 at u = " << u;
            out.problem = msg.str();
            return out;
        }
    }
    double prev = f(a);
    for (double u : pts) {
        const double fu = f(u);
        if (fu > prev) {
            out.problem = "F is not decreasing";
            return out;
        }
        prev = fu;
    }
    out.precondition_ok = true;
    auto side = [&](const StepFunction& g) {
        CompensatedSum acc;
        acc.add(f(a) * g.initial);
        for (std::size_t i = 0; i < g.jump_at.size(); ++i) acc.add(f(g.jump_at[i]) * g.jump_size[i]);
        return acc.value();
    };
    out.lhs = side(g1);
    out.rhs = side(g2);
    out.holds = out.lhs <= out.rhs + 1e-12 * std::max(1.0, std::abs(out.rhs));
    return out;
}

// Finite-difference check of the Laplace equations. The coset set is fixed
// by the enumeration at the centre and every term is moved to the stencil
// points through its matrix, so the truncated sum satisfies the equation
// term by term and the residual measures the stencil alone.
struct DEResidual {
    double residual = 0.0;
    double relative = 0.0;     // residual / (|s(1-s) E(s)| + |second term|)
    cplx laplacian;            // Delta_h E(s, z)
    cplx value;                // E(s, z)
    cplx shifted;              // E(s + 2, z), zero for Par
    double h = 0.0;
    double T0 = 0.0;
    double tail_bound = 0.0;   // tail of E(s, z) at T0
    std::size_t n_terms = 0;
    bool exhaustive = false;   // every coset visited, tail exactly zero
};

namespace detail {

template <class Term>
DEResidual de_residual(const FuchsianGroup& group, const OrbitTarget& target, const Word& stabilizer,
                       cplx s, const UHPoint& z, double h, double T0, const SeriesOptions& opts,
                       bool hyp, double omega, Term&& term)
{
    require_convergent(s);
    if (!(h > 0.0)) throw domain_error("stencil step must be positive");
    const DomainReduction red = group.reduce_to_domain(z);
    const Mat2 to_base = red.reduction.matrix();
    const double k = h * z.y();
    const std::array<UHPoint, 5> stencil{z, UHPoint(z.x() + k, z.y()), UHPoint(z.x() - k, z.y()),
                                         UHPoint(z.x(), z.y() + k), UHPoint(z.x(), z.y() - k)};
    std::array<ComplexSum, 5> sums;
    ComplexSum shifted;
    std::size_t n = 0;
    const EnumerationStats stats =
        for_each_orbit_point(group, target, red.point, T0, stabilizer, opts.enumeration,
                             [&](const OrbitHit& hit) {
                                 const Mat2 m = hit.matrix * to_base;
                                 for (std::size_t i = 0; i < 5; ++i) {
                                     const UHPoint w = apply(m, stencil[i].x(), stencil[i].y());
                                     sums[i].add(term(s, w));
                                     if (i == 0 && hyp) shifted.add(term(s + 2.0, w));
                                 }
                                 ++n;
                             });
    if (!stats.complete && !opts.allow_incomplete) {
        throw incomplete_spectrum("stencil coset search hit the depth cap");
    }
    DEResidual out;
    const cplx scale = hyp ? cplx(1.0) : std::exp(-s * std::log(omega));
    const cplx e0 = scale * sums[0].value();
    cplx around = 0.0;
    for (std::size_t i = 1; i < 5; ++i) around += scale * sums[i].value();
    // -y^2 (f_xx + f_yy) with step k = h y.
    out.laplacian = -(around - 4.0 * e0) / (h * h);
    out.value = e0;
    out.shifted = hyp ? shifted.value() : cplx(0.0);
    const cplx a = s * (1.0 - s) * e0;
    const cplx b = hyp ? s * s * out.shifted : cplx(0.0);
    out.residual = std::abs(out.laplacian - a - b);
    out.relative = out.residual / (std::abs(a) + std::abs(b));
    out.h = h;
    out.T0 = T0;
    out.n_terms = n;
    out.exhaustive = stats.complete && stats.nodes_pruned == 0;
    return out;
}

}  // namespace detail

// | Delta_h E_hyp(s) - s(1-s) E_hyp(s) - s^2 E_hyp(s+2) | at z.
inline DEResidual de_residual_hyp(const FuchsianGroup& group, const Word& gamma, cplx s,
                                  const UHPoint& z, double h, double T0,
                                  const SeriesOptions& opts = {})
{
    detail::require_axis_frame(group, gamma);
    DEResidual out = detail::de_residual(group, OrbitTarget::axis(), gamma, s, z, h, T0, opts, true,
                                         1.0, detail::hyp_term_from_point);
    if (!out.exhaustive) out.tail_bound = tail_bound(T0, s.real() - 1.0, series_radius(group, z, opts));
    return out;
}

// | Delta_h E_par(s) - s(1-s) E_par(s) | at z.
inline DEResidual de_residual_par(const FuchsianGroup& group, const Word& parabolic, cplx s,
                                  const UHPoint& z, double y0, double h, double T0,
                                  const SeriesOptions& opts = {})
{
    detail::require_cusp_frame(group, parabolic);
    const double omega = cusp_width(group, parabolic);
    DEResidual out = detail::de_residual(group, OrbitTarget::horocycle(y0), parabolic, s, z, h, T0,
                                         opts, false, omega, detail::par_term_from_point);
    if (!out.exhaustive) {
        out.tail_bound =
            std::pow(y0 / omega, s.real()) * tail_bound(T0, s.real() - 1.0, series_radius(group, z, opts));
    }
    return out;
}

}  // namespace eisen
