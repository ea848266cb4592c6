#pragma once

// Geometry of the hyperbolic upper half-plane: points, PSL(2,R) actions,
// distances to points, geodesics and horocycles, and polar coordinates
// (rho, theta) adapted to the imaginary-axis geodesic.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "eisen/errors.hpp"

namespace eisen {

inline constexpr double pi = std::numbers::pi;
inline constexpr double infinity = std::numeric_limits<double>::infinity();

// |tr| is compared against 2 with this tolerance when classifying elements.
inline constexpr double trace_tolerance = 1e-10;

class UHPoint {
public:
    UHPoint(double x, double y) : x_(x), y_(y)
    {
        if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
            std::ostringstream msg;
            msg << "UHPoint requires finite x and y > 0, got (" << x << ", " << y << ")";
            throw domain_error(msg.str());
        }
    }

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }

    friend bool operator==(const UHPoint&, const UHPoint&) = default;

    friend std::ostream& operator<<(std::ostream& os, const UHPoint& z)
    {
        return os << "(" << z.x_ << ", " << z.y_ << ")";
    }

private:
    double x_;
    double y_;
};

// Plain 2x2 matrix without normalization. Used in hot loops where products of
// unit-determinant matrices are accumulated.
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    constexpr double det() const noexcept { return a * d - b * c; }
    constexpr double trace() const noexcept { return a + d; }

    friend constexpr Mat2 operator*(const Mat2& l, const Mat2& r) noexcept
    {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
};

// A point of the boundary R u {inf} in homogeneous coordinates u / v.
struct ProjPoint {
    double u = 0.0;
    double v = 1.0;

    static constexpr ProjPoint at_infinity() noexcept { return {1.0, 0.0}; }
    static constexpr ProjPoint real(double t) noexcept { return {t, 1.0}; }

    bool is_infinite() const noexcept { return v == 0.0 || !std::isfinite(u / v); }
    double value() const noexcept { return v == 0.0 ? infinity : u / v; }
};

inline ProjPoint transform(const Mat2& m, const ProjPoint& p) noexcept
{
    return {m.a * p.u + m.b * p.v, m.c * p.u + m.d * p.v};
}

// Element of PSL(2,R). The determinant is normalized to 1 on construction and
// the sign representative with a > 0 (or a == 0 and b > 0) is stored, so that
// m and -m compare equal.
class MoebiusTransform {
public:
    MoebiusTransform() = default;

    MoebiusTransform(double a, double b, double c, double d)
    {
        const double det = a * d - b * c;
        if (!(det > 0.0) || !std::isfinite(det)) {
            std::ostringstream msg;
            msg << "MoebiusTransform requires positive finite determinant, got " << det;
            throw domain_error(msg.str());
        }
        const double s = std::sqrt(det);
        m_ = {a / s, b / s, c / s, d / s};
        if (m_.a < 0.0 || (m_.a == 0.0 && m_.b < 0.0)) {
            m_ = {-m_.a, -m_.b, -m_.c, -m_.d};
        }
    }

    explicit MoebiusTransform(const Mat2& m) : MoebiusTransform(m.a, m.b, m.c, m.d) {}

    static MoebiusTransform identity() { return {}; }
    static MoebiusTransform diagonal(double lambda) { return {lambda, 0.0, 0.0, 1.0 / lambda}; }
    static MoebiusTransform translation(double t) { return {1.0, t, 0.0, 1.0}; }

    double a() const noexcept { return m_.a; }
    double b() const noexcept { return m_.b; }
    double c() const noexcept { return m_.c; }
    double d() const noexcept { return m_.d; }
    const Mat2& matrix() const noexcept { return m_; }

    double trace() const noexcept { return m_.trace(); }

    MoebiusTransform inverse() const { return {m_.d, -m_.b, -m_.c, m_.a}; }

    friend MoebiusTransform operator*(const MoebiusTransform& l, const MoebiusTransform& r)
    {
        return MoebiusTransform(l.m_ * r.m_);
    }

    friend bool operator==(const MoebiusTransform& l, const MoebiusTransform& r) noexcept
    {
        return l.m_.a == r.m_.a && l.m_.b == r.m_.b && l.m_.c == r.m_.c && l.m_.d == r.m_.d;
    }

    // Entrywise comparison modulo sign.
    bool approx_equal(const MoebiusTransform& o, double tol) const noexcept
    {
        auto close = [&](double s) {
            return std::abs(m_.a - s * o.m_.a) <= tol && std::abs(m_.b - s * o.m_.b) <= tol &&
                   std::abs(m_.c - s * o.m_.c) <= tol && std::abs(m_.d - s * o.m_.d) <= tol;
        };
        return close(1.0) || close(-1.0);
    }

    friend std::ostream& operator<<(std::ostream& os, const MoebiusTransform& m)
    {
        return os << "[[" << m.m_.a << ", " << m.m_.b << "], [" << m.m_.c << ", " << m.m_.d
                  << "]]";
    }

private:
    Mat2 m_{};
};

inline MoebiusTransform conjugate(const MoebiusTransform& by, const MoebiusTransform& m)
{
    return by * m * by.inverse();
}

inline UHPoint apply(const Mat2& m, double x, double y)
{
    // Im((az+b)/(cz+d)) = y det / |cz+d|^2; the real part is expanded the same way.
    const double re = m.c * x + m.d;
    const double im = m.c * y;
    const double n = re * re + im * im;
    const double nx = (m.a * x + m.b) * re + m.a * m.c * y * y;
    const double ny = y * m.det();
    const double rx = nx / n;
    const double ry = ny / n;
    if (!(ry > 0.0) || !std::isfinite(rx) || !std::isfinite(ry)) {
        std::ostringstream msg;
        msg << "Moebius action degenerated: image of (" << x << ", " << y << ") is (" << rx
            << ", " << ry << ")";
        throw numeric_degeneracy(msg.str());
    }
    return {rx, ry};
}

inline UHPoint apply(const MoebiusTransform& m, const UHPoint& z)
{
    return apply(m.matrix(), z.x(), z.y());
}

// Hyperbolic distance, arccosh(1 + |z-w|^2 / (2 Im z Im w)), in the
// cancellation-free form 2 asinh(|z-w| / (2 sqrt(Im z Im w))).
inline double dist(const UHPoint& z, const UHPoint& w) noexcept
{
    const double e = std::hypot(z.x() - w.x(), z.y() - w.y());
    return 2.0 * std::asinh(e / (2.0 * std::sqrt(z.y() * w.y())));
}

struct AxisCoords {
    double rho;
    double theta;
};

inline AxisCoords axis_coords(const UHPoint& z) noexcept
{
    return {std::log(std::hypot(z.x(), z.y())), std::atan2(z.y(), z.x())};
}

inline UHPoint from_axis_coords(const AxisCoords& c)
{
    if (!(c.theta > 0.0 && c.theta < pi)) {
        throw domain_error("axis coordinates require theta in (0, pi)");
    }
    const double r = std::exp(c.rho);
    return {r * std::cos(c.theta), r * std::sin(c.theta)};
}

// Distance to the geodesic {Re z = 0}. sinh d = |x| / y, equivalently
// d = |log(csc theta + cot theta)| and sin(theta) cosh(d) = 1.
inline double dist_to_axis(double x, double y) noexcept { return std::asinh(std::abs(x) / y); }
inline double dist_to_axis(const UHPoint& z) noexcept { return dist_to_axis(z.x(), z.y()); }

// Distance from z to the horocycle {Im = y0}, for z on or below it.
inline double dist_to_horocycle(const UHPoint& z, double y0)
{
    if (!(z.y() <= y0)) {
        std::ostringstream msg;
        msg << "point " << z << " lies above the horocycle Im = " << y0;
        throw domain_error(msg.str());
    }
    return std::log(y0 / z.y());
}

enum class ElementClass { Identity, Elliptic, Parabolic, Hyperbolic };

inline const char* to_string(ElementClass k) noexcept
{
    switch (k) {
    case ElementClass::Identity: return "identity";
    case ElementClass::Elliptic: return "elliptic";
    case ElementClass::Parabolic: return "parabolic";
    case ElementClass::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

inline ElementClass classify(const MoebiusTransform& m) noexcept
{
    const double t = std::abs(m.trace());
    if (std::abs(t - 2.0) <= trace_tolerance) {
        const bool scalar = std::abs(m.b()) <= trace_tolerance && std::abs(m.c()) <= trace_tolerance;
        return scalar ? ElementClass::Identity : ElementClass::Parabolic;
    }
    return t < 2.0 ? ElementClass::Elliptic : ElementClass::Hyperbolic;
}

inline double translation_length(const MoebiusTransform& m)
{
    if (classify(m) != ElementClass::Hyperbolic) {
        throw classification_error(std::string("translation_length needs a hyperbolic element, got ") +
                                   to_string(classify(m)));
    }
    return 2.0 * std::acosh(std::abs(m.trace()) / 2.0);
}

namespace detail {

// Eigenvector of m for eigenvalue mu as a boundary point, choosing the better
// conditioned of the two rows of (m - mu).
inline ProjPoint eigen_point(const Mat2& m, double mu) noexcept
{
    const ProjPoint first{m.b, mu - m.a};
    const ProjPoint second{mu - m.d, m.c};
    const double n1 = std::abs(first.u) + std::abs(first.v);
    const double n2 = std::abs(second.u) + std::abs(second.v);
    return n1 >= n2 ? first : second;
}

// Matrix sending p to 0 and q to infinity with positive determinant.
inline Mat2 zero_infinity_map(const ProjPoint& p, const ProjPoint& q)
{
    Mat2 m{p.v, -p.u, q.v, -q.u};
    if (m.det() < 0.0) {
        m.a = -m.a;
        m.b = -m.b;
    }
    if (!(m.det() > 0.0)) {
        throw numeric_degeneracy("zero_infinity_map: coincident boundary points");
    }
    return m;
}

}  // namespace detail

struct FixedPoints {
    ProjPoint attracting;
    ProjPoint repelling;
};

inline FixedPoints fixed_points(const MoebiusTransform& m)
{
    if (classify(m) != ElementClass::Hyperbolic) {
        throw classification_error("fixed_points needs a hyperbolic element");
    }
    const Mat2& x = m.matrix();
    const double tr = x.trace();
    const double disc = std::sqrt(tr * tr - 4.0);
    const double big = (tr + std::copysign(disc, tr)) / 2.0;
    const double small = 1.0 / big;
    return {detail::eigen_point(x, big), detail::eigen_point(x, small)};
}

inline ProjPoint parabolic_fixed_point(const MoebiusTransform& m)
{
    if (classify(m) != ElementClass::Parabolic) {
        throw classification_error("parabolic_fixed_point needs a parabolic element");
    }
    return detail::eigen_point(m.matrix(), m.trace() / 2.0);
}

// Conjugator C with C m C^-1 = diag(e^{l/2}, e^{-l/2}): the attracting fixed
// point goes to infinity and the repelling one to 0.
inline MoebiusTransform diagonalize(const MoebiusTransform& m)
{
    const FixedPoints f = fixed_points(m);
    return MoebiusTransform(detail::zero_infinity_map(f.repelling, f.attracting));
}

// Conjugator C with C m C^-1 = [[1, +-width], [0, 1]] for parabolic m with
// fixed point p.
inline MoebiusTransform cusp_to_infinity(const MoebiusTransform& m, double width, const ProjPoint& p)
{
    if (!(width > 0.0)) throw domain_error("cusp width must be positive");
    const double n = p.u * p.u + p.v * p.v;
    const MoebiusTransform c(-p.u / n, -p.v / n, p.v, -p.u);
    const MoebiusTransform t = conjugate(c, m);
    const double current = std::abs(t.b() / t.a());
    const MoebiusTransform scale = MoebiusTransform::diagonal(std::sqrt(width / current));
    return scale * c;
}

inline MoebiusTransform cusp_to_infinity(const MoebiusTransform& m, double width)
{
    return cusp_to_infinity(m, width, parabolic_fixed_point(m));
}

// Orientation-preserving Moebius map sending src[i] to dst[i].
inline MoebiusTransform moebius_from_points(const std::array<ProjPoint, 3>& src,
                                            const std::array<ProjPoint, 3>& dst)
{
    // Sends p1 -> 0, p2 -> 1, p3 -> infinity.
    auto normal_form = [](const std::array<ProjPoint, 3>& p) {
        const double k1 = p[2].v * p[1].u - p[2].u * p[1].v;
        const double k3 = p[0].v * p[1].u - p[0].u * p[1].v;
        return Mat2{k1 * p[0].v, -k1 * p[0].u, k3 * p[2].v, -k3 * p[2].u};
    };
    const Mat2 s = normal_form(src);
    const Mat2 t = normal_form(dst);
    const Mat2 t_inv{t.d, -t.b, -t.c, t.a};
    const Mat2 m = t_inv * s;
    if (!(m.det() > 0.0)) {
        throw domain_error("boundary triples have opposite orientation; no PSL(2,R) map exists");
    }
    return MoebiusTransform(m);
}

// Volume of a hyperbolic disc of radius r.
inline double ball_volume(double r)
{
    if (!(r >= 0.0)) throw domain_error("ball_volume requires r >= 0");
    const double s = std::sinh(r / 2.0);
    return 4.0 * pi * s * s;
}

// Geodesic from `from` to `to`, oriented. The half-plane it bounds on the
// left (travelling from -> to) is the one referred to by the region
// functions below.
struct OrientedGeodesic {
    ProjPoint from;
    ProjPoint to;

    OrientedGeodesic reversed() const noexcept { return {to, from}; }

    // Finite endpoints with from > to: the left side is the interior of the semicircle.
    bool bounds_disk() const noexcept
    {
        return !from.is_infinite() && !to.is_infinite() && from.value() > to.value();
    }
};

inline OrientedGeodesic transform(const Mat2& m, const OrientedGeodesic& g) noexcept
{
    return {transform(m, g.from), transform(m, g.to)};
}

inline bool left_of(const OrientedGeodesic& g, double x, double y) noexcept
{
    if (g.from.is_infinite()) return x > g.to.value();
    if (g.to.is_infinite()) return x < g.from.value();
    const double p = g.from.value();
    const double q = g.to.value();
    const double c = 0.5 * (p + q);
    const double r = 0.5 * (q - p);
    const double out = (x - c) * (x - c) + y * y - r * r;
    return p < q ? out > 0.0 : out < 0.0;
}

inline bool left_of(const OrientedGeodesic& g, const UHPoint& z) noexcept
{
    return left_of(g, z.x(), z.y());
}

inline double dist_to_geodesic(const OrientedGeodesic& g, double x, double y) noexcept
{
    if (g.from.is_infinite()) return std::asinh(std::abs(x - g.to.value()) / y);
    if (g.to.is_infinite()) return std::asinh(std::abs(x - g.from.value()) / y);
    const double p = g.from.value();
    const double q = g.to.value();
    const double c = 0.5 * (p + q);
    const double r = 0.5 * std::abs(q - p);
    const double out = (x - c) * (x - c) + y * y - r * r;
    return std::asinh(std::abs(out) / (2.0 * r * y));
}

// Infimum of the distance from {Re z = 0} to the left half-plane of g.
inline double axis_to_halfplane(const OrientedGeodesic& g) noexcept
{
    if (!g.bounds_disk()) return 0.0;
    const double p = g.from.value();
    const double q = g.to.value();
    if (!(p * q > 0.0)) return 0.0;
    const double ap = std::abs(p);
    const double aq = std::abs(q);
    const double gap = std::abs(ap - aq);
    if (gap == 0.0) return 0.0;
    return std::acosh((ap + aq) / gap);
}

// Supremum of Im over the left half-plane of g (infinite unless it is a disk).
inline double halfplane_sup_im(const OrientedGeodesic& g) noexcept
{
    if (!g.bounds_disk()) return infinity;
    return 0.5 * std::abs(g.from.value() - g.to.value());
}

// Infimum of the distance from (x, y) to the left half-plane of g.
inline double point_to_halfplane(const OrientedGeodesic& g, double x, double y) noexcept
{
    return left_of(g, x, y) ? 0.0 : dist_to_geodesic(g, x, y);
}

}  // namespace eisen
