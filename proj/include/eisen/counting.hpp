#pragma once

// Counting functions over a distance spectrum and the volume-packing upper
// bound N(u) <= N(T0) + (sinh^2((u+r)/2) - sinh^2((T0-r)/2)) / sinh^2(r/2).

#include <cmath>
#include <cstddef>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eisen/errors.hpp"
#include "eisen/fuchsian.hpp"
#include "eisen/hyperbolic.hpp"
#include "eisen/orbit.hpp"
#include "eisen/word.hpp"

namespace eisen {

enum class CountingKind { Hyp, Par, Boundary };

inline const char* to_string(CountingKind k) noexcept
{
    switch (k) {
    case CountingKind::Hyp: return "hyp";
    case CountingKind::Par: return "par";
    case CountingKind::Boundary: return "boundary";
    }
    return "?";
}

// Entries closer than this to T count as ties and are excluded.
inline constexpr double tie_tolerance = 1e-12;

// T -> #{d_k - shift < T}. The boundary count uses shift = g, the collar
// half-width; the other kinds have shift 0.
class CountingFunction {
public:
    CountingFunction(DistanceSpectrum spectrum, CountingKind kind, double shift = 0.0)
        : spectrum_(std::move(spectrum)), kind_(kind), shift_(shift)
    {
    }

    const DistanceSpectrum& spectrum() const noexcept { return spectrum_; }
    CountingKind kind() const noexcept { return kind_; }
    double shift() const noexcept { return shift_; }

    // Largest T at which the value is certified.
    double certified_until() const noexcept
    {
        return spectrum_.complete ? spectrum_.cutoff - shift_ : -infinity;
    }

    std::size_t operator()(double T) const
    {
        if (!spectrum_.complete) {
            throw incomplete_spectrum("spectrum hit the depth cap at length " +
                                      std::to_string(spectrum_.search_depth));
        }
        if (T > certified_until()) {
            std::ostringstream msg;
            msg << to_string(kind_) << " count requested at T = " << T
                << " beyond the certified range " << certified_until();
            throw incomplete_spectrum(msg.str());
        }
        return spectrum_.count_below(T + shift_ - tie_tolerance);
    }

private:
    DistanceSpectrum spectrum_;
    CountingKind kind_;
    double shift_;
};

namespace detail {

inline void require_complete(const DistanceSpectrum& s, const char* what)
{
    if (!s.complete) {
        throw incomplete_spectrum(std::string(what) + ": enumeration hit the depth cap at length " +
                                  std::to_string(s.search_depth));
    }
}

}  // namespace detail

// card{eta in <gamma>\Gamma : d(eta z, axis) < T}; group in an axis frame of gamma.
inline std::size_t n_hyp(const FuchsianGroup& group, const Word& gamma, const UHPoint& z, double T,
                         const EnumerationOptions& opts = {})
{
    if (!(T > 0.0)) return 0;
    return CountingFunction(orbit_distances_hyp(group, gamma, z, T, opts), CountingKind::Hyp)(T);
}

// card{eta in <P>\Gamma : log(y0 / Im eta z) < T}; group in a cusp frame of P.
inline std::size_t n_par(const FuchsianGroup& group, const Word& parabolic, const UHPoint& z,
                         double y0, double T, const EnumerationOptions& opts = {})
{
    if (!(T > 0.0)) return 0;
    return CountingFunction(orbit_distances_par(group, parabolic, z, y0, T, opts),
                            CountingKind::Par)(T);
}

// Distance from the core geodesic to the boundary of the collar of volume
// epsilon around a closed geodesic of length ell: asinh(epsilon / (2 ell)).
inline double collar_boundary_height(double ell, double epsilon)
{
    if (!(ell > 0.0) || !(epsilon > 0.0)) throw domain_error("collar needs ell > 0 and epsilon > 0");
    return std::asinh(epsilon / (2.0 * ell));
}

// Signed distance from z to the collar boundary on its side of the axis
// {Re = 0}, measured along the ray of constant rho. Equals d(z, axis) - g.
inline double dist_to_collar_boundary(const UHPoint& z, double ell, double epsilon)
{
    const double theta_c = std::atan2(2.0 * ell, epsilon);  // cot theta_c = epsilon / (2 ell)
    const double theta = std::atan2(z.y(), z.x());
    const double t = std::min(theta, pi - theta);
    return std::log(std::tan(theta_c / 2.0) / std::tan(t / 2.0));
}

// card{eta in <gamma>\Gamma : d(eta z, boundary of the collar half) < T},
// counting points inside the collar as well. The group is in an axis frame of gamma.
inline std::size_t n_boundary(const FuchsianGroup& group, const Word& gamma, const UHPoint& z,
                              double epsilon, double T, const EnumerationOptions& opts = {})
{
    const double ell = translation_length(group.evaluate(gamma));
    const double g = collar_boundary_height(ell, epsilon);
    if (!(T > -g)) return 0;
    const DistanceSpectrum spec = orbit_distances_hyp(group, gamma, z, T + g, opts);
    detail::require_complete(spec, "n_boundary");
    std::size_t n = 0;
    for (const UHPoint& p : spec.points) {
        if (dist_to_collar_boundary(p, ell, epsilon) < T - tie_tolerance) ++n;
    }
    return n;
}

// Right side of the packing bound.
inline double bound_rhs(double n_at_T0, double T0, double u, double r)
{
    if (!(r > 0.0 && T0 > r && u > T0)) {
        std::ostringstream msg;
        msg << "bound_rhs needs u > T0 > r > 0, got u = " << u << ", T0 = " << T0 << ", r = " << r;
        throw domain_error(msg.str());
    }
    const double sr = std::sinh(r / 2.0);
    const double hi = std::sinh((u + r) / 2.0);
    const double lo = std::sinh((T0 - r) / 2.0);
    return n_at_T0 + (hi * hi - lo * lo) / (sr * sr);
}

using BoundFormula = std::function<double(double n_at_T0, double T0, double u, double r)>;

struct BoundViolation {
    double T0;
    double u;
    std::size_t count;
    double rhs;
};

struct BoundReport {
    CountingKind kind = CountingKind::Hyp;
    double r = 0.0;
    std::size_t checked = 0;
    // min over the grid of (rhs - N(u)) / rhs
    double worst_margin = infinity;
    std::vector<BoundViolation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

// Checks N(u) <= rhs(N(T0), T0, u, r) over every (T0, u) pair with u > T0.
inline BoundReport verify_bound(const CountingFunction& N, const std::vector<double>& T0_grid,
                                const std::vector<double>& u_grid, double r,
                                const BoundFormula& rhs = bound_rhs)
{
    BoundReport rep;
    rep.kind = N.kind();
    rep.r = r;
    for (double T0 : T0_grid) {
        if (!(T0 > r)) {
            std::ostringstream msg;
            msg << "bound check needs T0 > r, got T0 = " << T0 << ", r = " << r;
            throw domain_error(msg.str());
        }
        const double n0 = static_cast<double>(N(T0));
        for (double u : u_grid) {
            if (!(u > T0)) continue;
            const std::size_t n = N(u);
            const double b = rhs(n0, T0, u, r);
            ++rep.checked;
            rep.worst_margin = std::min(rep.worst_margin, (b - static_cast<double>(n)) / b);
            if (static_cast<double>(n) > b) rep.violations.push_back({T0, u, n, b});
        }
    }
    return rep;
}

struct BoundSetup {
    CountingKind kind = CountingKind::Hyp;
    Word stabilizer;
    double y0 = 0.0;  // Par only
    // The enumerated radius is an exact minimum when complete; the factor
    // keeps the bound on the safe side of rounding.
    double radius_safety = 0.9;
    EnumerationOptions enumeration;
};

// Builds the spectrum up to max(u_grid), takes r from the injectivity radius
// at z, and checks the bound.
inline BoundReport verify_bound(const FuchsianGroup& group, const UHPoint& z,
                                const std::vector<double>& T0_grid,
                                const std::vector<double>& u_grid, const BoundSetup& setup,
                                const BoundFormula& rhs = bound_rhs)
{
    if (u_grid.empty()) throw domain_error("bound check needs a nonempty u grid");
    double top = 0.0;
    for (double u : u_grid) top = std::max(top, u);
    const double cutoff = top + 1e-9;
    DistanceSpectrum spec;
    switch (setup.kind) {
    case CountingKind::Hyp:
        spec = orbit_distances_hyp(group, setup.stabilizer, z, cutoff, setup.enumeration);
        break;
    case CountingKind::Par:
        spec = orbit_distances_par(group, setup.stabilizer, z, setup.y0, cutoff, setup.enumeration);
        break;
    case CountingKind::Boundary:
        throw domain_error("the packing bound is stated for hyp and par counts");
    }
    const InjectivityRadius inj = injectivity_radius(group, z, setup.enumeration);
    if (!inj.complete) throw incomplete_spectrum("injectivity radius search hit the depth cap");
    const CountingFunction N(std::move(spec), setup.kind);
    return verify_bound(N, T0_grid, u_grid, inj.radius * setup.radius_safety, rhs);
}

}  // namespace eisen
