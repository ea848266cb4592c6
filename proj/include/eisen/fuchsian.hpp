#pragma once

// Free Fuchsian groups given by generator matrices, optionally with a
// ping-pong fundamental domain: for each letter g a half-plane H(g) such that
// g maps the complement of H(g^-1) onto the closure of H(g). The domain F is
// the complement of all H(g). For a reduced word w = g1...gn the tile wF and
// every tile wvF below it in the word tree lie in w(complement of H(gn^-1)),
// which is what makes certified pruning of orbit searches possible.

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "eisen/errors.hpp"
#include "eisen/hyperbolic.hpp"
#include "eisen/word.hpp"

namespace eisen {

// A cusp of the group: a parabolic word and its fixed point, kept in closed
// form because the fixed point of a numerically evaluated long parabolic word
// is poorly conditioned.
struct Cusp {
    Word stabilizer;
    ProjPoint fixed_point;
};

struct PingPongDomain {
    // Indexed by letter code; H(letter) is the left side of sides[letter].
    std::vector<OrientedGeodesic> sides;
};

// Word w applied to a base point equals reduction * original point.
struct DomainReduction {
    UHPoint point;
    MoebiusTransform reduction;
    Word word;
};

class FuchsianGroup {
public:
    FuchsianGroup(std::string family, std::vector<MoebiusTransform> generators,
                  std::optional<PingPongDomain> domain = std::nullopt,
                  std::optional<double> ell = std::nullopt, std::vector<Cusp> cusps = {})
        : family_(std::move(family)), ell_(ell), domain_(std::move(domain)), cusps_(std::move(cusps))
    {
        if (generators.empty() || generators.size() > static_cast<std::size_t>(max_rank)) {
            throw domain_error("group rank out of range");
        }
        for (const auto& g : generators) {
            images_.push_back(g);
            images_.push_back(g.inverse());
        }
        if (domain_ && domain_->sides.size() != images_.size()) {
            throw domain_error("ping-pong domain needs one side per letter");
        }
    }

    const std::string& family() const noexcept { return family_; }
    int rank() const noexcept { return static_cast<int>(images_.size() / 2); }
    std::optional<double> ell() const noexcept { return ell_; }

    const MoebiusTransform& image(Letter l) const { return images_.at(l); }
    const std::vector<MoebiusTransform>& images() const noexcept { return images_; }
    const std::optional<PingPongDomain>& domain() const noexcept { return domain_; }
    const std::vector<Cusp>& cusps() const noexcept { return cusps_; }

    // Fixed point of a parabolic word, from the cusp table when listed.
    ProjPoint cusp_point(const Word& stabilizer) const
    {
        for (const auto& c : cusps_) {
            if (c.stabilizer == stabilizer || c.stabilizer == stabilizer.inverse()) {
                return c.fixed_point;
            }
        }
        return parabolic_fixed_point(evaluate(stabilizer));
    }

    Word word(std::string_view text) const { return Word::parse(text, rank()); }

    MoebiusTransform evaluate(const Word& w) const
    {
        Mat2 m;
        for (Letter l : w.letters()) m = m * images_.at(l).matrix();
        return MoebiusTransform(m);
    }

    FuchsianGroup conjugated(const MoebiusTransform& by) const
    {
        std::vector<MoebiusTransform> gens;
        for (int i = 0; i < rank(); ++i) gens.push_back(conjugate(by, images_[2 * i]));
        std::optional<PingPongDomain> dom;
        if (domain_) {
            dom.emplace();
            for (const auto& s : domain_->sides) dom->sides.push_back(transform(by.matrix(), s));
        }
        std::vector<Cusp> cusps;
        for (const auto& c : cusps_) cusps.push_back({c.stabilizer, transform(by.matrix(), c.fixed_point)});
        return FuchsianGroup(family_, std::move(gens), std::move(dom), ell_, std::move(cusps));
    }

    // Closure of F: not strictly inside any H(g).
    bool in_domain(const UHPoint& z) const
    {
        if (!domain_) return false;
        for (const auto& s : domain_->sides) {
            if (left_of(s, z)) return false;
        }
        return true;
    }

    // Moves z into the closure of F. Each step strips one letter of the word
    // of the tile containing z, so the loop is finite; the cap guards
    // against points numerically on the limit set.
    DomainReduction reduce_to_domain(const UHPoint& z, std::size_t max_steps = 1u << 20) const
    {
        if (!domain_) throw domain_error("group '" + family_ + "' has no fundamental domain");
        Mat2 acc;
        double x = z.x();
        double y = z.y();
        Word path;
        for (std::size_t step = 0; step < max_steps; ++step) {
            bool moved = false;
            for (std::size_t l = 0; l < domain_->sides.size(); ++l) {
                if (left_of(domain_->sides[l], x, y)) {
                    const Letter back = inverse(static_cast<Letter>(l));
                    const UHPoint p = apply(images_[back].matrix(), x, y);
                    x = p.x();
                    y = p.y();
                    acc = images_[back].matrix() * acc;
                    path = Word{back} * path;
                    moved = true;
                    break;
                }
            }
            if (!moved) return {UHPoint(x, y), MoebiusTransform(acc), path};
        }
        throw numeric_degeneracy("reduce_to_domain did not terminate for " +
                                 [&] { std::ostringstream s; s << z; return s.str(); }());
    }

    // Checks image(g) maps side(g^-1) onto side(g) with matching sides, to tol.
    void validate_domain(double tol = 1e-9) const
    {
        if (!domain_) return;
        for (std::size_t l = 0; l < images_.size(); ++l) {
            const Letter g = static_cast<Letter>(l);
            const OrientedGeodesic src = domain_->sides[inverse(g)];
            const OrientedGeodesic img = transform(images_[g].matrix(), src);
            const OrientedGeodesic& dst = domain_->sides[g];
            // g maps the outside of H(g^-1) onto H(g), so the image of the
            // side of H(g^-1) is the side of H(g) with reversed orientation.
            if (!same_point(img.from, dst.to, tol) || !same_point(img.to, dst.from, tol)) {
                throw domain_error("ping-pong sides of '" + family_ + "' are inconsistent at " +
                                   std::string(1, letter_char(g)));
            }
        }
    }

private:
    static bool same_point(const ProjPoint& p, const ProjPoint& q, double tol)
    {
        const double cross = p.u * q.v - p.v * q.u;
        const double scale = std::hypot(p.u, p.v) * std::hypot(q.u, q.v);
        return std::abs(cross) <= tol * scale;
    }

    std::string family_;
    std::optional<double> ell_;
    std::vector<MoebiusTransform> images_;
    std::optional<PingPongDomain> domain_;
    std::vector<Cusp> cusps_;
};

// A group conjugated by `conjugator`; points map along with it.
struct Frame {
    FuchsianGroup group;
    MoebiusTransform conjugator;

    UHPoint to_frame(const UHPoint& z) const { return apply(conjugator, z); }
};

// Conjugates so that the hyperbolic element `stabilizer` becomes
// diag(e^{l/2}, e^{-l/2}) with axis {Re z = 0}.
inline Frame axis_frame(const FuchsianGroup& group, const Word& stabilizer)
{
    const MoebiusTransform c = diagonalize(group.evaluate(stabilizer));
    return {group.conjugated(c), c};
}

// Conjugates so that the parabolic `stabilizer` fixes infinity with width omega.
inline Frame cusp_frame(const FuchsianGroup& group, const Word& stabilizer, double omega)
{
    const MoebiusTransform c =
        cusp_to_infinity(group.evaluate(stabilizer), omega, group.cusp_point(stabilizer));
    return {group.conjugated(c), c};
}

// Oriented side from a -> b whose left side does not contain `inside`.
inline OrientedGeodesic side_facing_away(ProjPoint a, ProjPoint b, const UHPoint& inside)
{
    OrientedGeodesic g{a, b};
    if (left_of(g, inside)) g = g.reversed();
    return g;
}

// Cyclic group on a hyperbolic or parabolic generator. The domain is built in
// the normal form (z -> lambda^2 z, or z -> z + t) and carried back.
inline FuchsianGroup cyclic_group(const MoebiusTransform& generator, std::string family = "cyclic")
{
    const ElementClass k = classify(generator);
    PingPongDomain dom;
    dom.sides.resize(2);
    std::optional<double> ell;
    MoebiusTransform c;
    if (k == ElementClass::Hyperbolic) {
        ell = translation_length(generator);
        c = diagonalize(generator);
        const double lambda = std::exp(*ell / 2.0);
        dom.sides[0] = {ProjPoint::real(-lambda), ProjPoint::real(lambda)};
        dom.sides[1] = {ProjPoint::real(1.0 / lambda), ProjPoint::real(-1.0 / lambda)};
    } else if (k == ElementClass::Parabolic) {
        c = cusp_to_infinity(generator, 1.0);
        const double t = conjugate(c, generator).b() / conjugate(c, generator).a();
        const double h = std::abs(t) / 2.0;
        const OrientedGeodesic right{ProjPoint::at_infinity(), ProjPoint::real(h)};
        const OrientedGeodesic left{ProjPoint::real(-h), ProjPoint::at_infinity()};
        dom.sides[0] = t > 0.0 ? right : left;
        dom.sides[1] = t > 0.0 ? left : right;
    } else {
        throw domain_error(std::string("cyclic_group needs a hyperbolic or parabolic generator, got ") +
                           to_string(k));
    }
    const Mat2 back = c.inverse().matrix();
    for (auto& s : dom.sides) s = transform(back, s);
    FuchsianGroup g(std::move(family), {generator}, std::move(dom), ell);
    g.validate_domain();
    return g;
}

struct TorusOptions {
    // Below this the trace of B (about 4 / ell) costs too many digits.
    double min_ell = 1e-3;
};

// Once-punctured torus group <A, B> with A = diag(e^{l/2}, e^{-l/2}) and
// tr B = tr AB = x / sqrt(x - 2), x = tr A, the symmetric solution of the
// Markov equation x^2 + y^2 + z^2 = xyz, so that tr [A, B] = -2.
namespace detail {

inline void check_torus_ell(double ell, const TorusOptions& opts)
{
    if (!(ell > 0.0)) throw domain_error("punctured_torus_group requires ell > 0");
    if (ell < opts.min_ell) {
        std::ostringstream msg;
        msg << "ell = " << ell << " is below the precision floor " << opts.min_ell;
        throw domain_error(msg.str());
    }
}

}  // namespace detail

inline FuchsianGroup punctured_torus_group(double ell, const TorusOptions& opts = {})
{
    detail::check_torus_ell(ell, opts);
    const double lambda = std::exp(ell / 2.0);
    const double x = 2.0 * std::cosh(ell / 2.0);
    const double y = x / (2.0 * std::sinh(ell / 4.0));  // sqrt(x - 2) = 2 sinh(ell / 4)
    const double p = y / (lambda + 1.0);
    const double s = y * lambda / (lambda + 1.0);
    const double q = 1.0;
    const double r = p * s - 1.0;
    const MoebiusTransform a = MoebiusTransform::diagonal(lambda);
    const MoebiusTransform b(p, q, r, s);

    // Ideal quadrilateral with vertex X1 the fixed point of B^-1 A^-1 B A and
    // X0 = B X1, X2 = A X1, X3 = AB X1. A pairs [X0, X1] with [X3, X2] and
    // B pairs [X1, X2] with [X0, X3]. X1 is the double root of
    // p r l^2 x^2 + r (1 + l^2) x + s = 0, which is A^-1 B A x = B x.
    const double l2 = lambda * lambda;
    const double l2m1 = std::expm1(ell);
    const ProjPoint x1 = ProjPoint::real(-(1.0 + l2) / (2.0 * p * l2));
    const ProjPoint x0 = ProjPoint::real(p * l2m1 / (p * s * l2m1 + 1.0 + l2));
    const ProjPoint x2 = ProjPoint::real(l2 * x1.value());
    const ProjPoint x3 = ProjPoint::real(l2 * x0.value());

    // A point of F on the axis of A: above [X1, X0] and below [X2, X3].
    const double inner = std::sqrt(std::abs(x1.value() * x0.value()));
    const double outer = std::sqrt(std::abs(x2.value() * x3.value()));
    const UHPoint inside(0.0, std::sqrt(inner * outer));

    PingPongDomain dom;
    dom.sides.resize(4);
    dom.sides[generator_letter(0)] = side_facing_away(x3, x2, inside);
    dom.sides[inverse(generator_letter(0))] = side_facing_away(x0, x1, inside);
    dom.sides[generator_letter(1)] = side_facing_away(x0, x3, inside);
    dom.sides[inverse(generator_letter(1))] = side_facing_away(x1, x2, inside);

    std::vector<Cusp> cusps{{Word::parse("baBA", 2), x1}};
    FuchsianGroup g("punctured-torus", {a, b}, std::move(dom), ell, std::move(cusps));
    g.validate_domain(1e-7);
    return g;
}

// The same torus group conjugated by M(z) = alpha z + beta, beta = -1 / sinh(l/2),
// alpha = -beta s, which fixes infinity, sends 0 to beta and B(0) to 0. In
// this frame A' = [[lambda, 2], [0, 1/lambda]] and B A^-1 B^-1 tends to
// [[1, 0], [-2, 1]], so the group converges to the level-2 group below as
// l -> 0 and points can be compared across the family. Entries and domain
// vertices are written in closed form; conjugating numerically would cost
// about 1/l^2 in relative accuracy.
inline Frame punctured_torus_pants_frame(double ell, const TorusOptions& opts = {})
{
    detail::check_torus_ell(ell, opts);
    const double lambda = std::exp(ell / 2.0);
    const double l2 = lambda * lambda;
    const double l2m1 = std::expm1(ell);
    const double x = 2.0 * std::cosh(ell / 2.0);
    const double y = x / (2.0 * std::sinh(ell / 4.0));
    const double p = y / (lambda + 1.0);
    const double s = y * lambda / (lambda + 1.0);
    const double r = p * s - 1.0;
    const double sh = std::sinh(ell / 2.0);
    const double beta = -1.0 / sh;
    const double alpha = -beta * s;

    const MoebiusTransform a(lambda, 2.0, 0.0, 1.0 / lambda);
    const MoebiusTransform b(1.0 / s, 1.0 / (s * sh), r * sh / s, s + r / s);

    const double v1 = -1.0 / std::tanh(ell / 4.0);
    const double v0 = -(1.0 + l2) / (sh * (p * s * l2m1 + 1.0 + l2));
    const double v2 = l2 * v1 + 2.0 * lambda;
    const double v3 = l2 * v0 + 2.0 * lambda;
    const ProjPoint x0 = ProjPoint::real(v0);
    const ProjPoint x1 = ProjPoint::real(v1);
    const ProjPoint x2 = ProjPoint::real(v2);
    const ProjPoint x3 = ProjPoint::real(v3);

    // Boundary order v2 < v1 < v0 < v3; F lies inside [v2, v3] and above
    // the other three sides. Take a point over the middle of [v0, v3].
    const double mid = 0.5 * (v0 + v3);
    const double low = 0.5 * (v3 - v0);
    const double high = std::sqrt((mid - v2) * (v3 - mid));
    const UHPoint inside(mid, std::sqrt(low * high));

    PingPongDomain dom;
    dom.sides.resize(4);
    dom.sides[generator_letter(0)] = side_facing_away(x3, x2, inside);
    dom.sides[inverse(generator_letter(0))] = side_facing_away(x0, x1, inside);
    dom.sides[generator_letter(1)] = side_facing_away(x0, x3, inside);
    dom.sides[inverse(generator_letter(1))] = side_facing_away(x1, x2, inside);

    std::vector<Cusp> cusps{{Word::parse("baBA", 2), x1}};
    FuchsianGroup g("punctured-torus", {a, b}, std::move(dom), ell, std::move(cusps));
    g.validate_domain(1e-7);
    return {std::move(g), MoebiusTransform(alpha, beta, 0.0, 1.0)};
}

// The pants frame rotated about i by ell/4. The pants frame generators
// differ from their level-2 limits by ell/2 diag(1, -1) and -ell/2 diag(1, -1)
// at first order; this rotation cancels both, so A' and B A^-1 B^-1 converge
// at rate ell^2 and values at a fixed point converge at the same rate.
inline Frame punctured_torus_tracking_frame(double ell, const TorusOptions& opts = {})
{
    const Frame pf = punctured_torus_pants_frame(ell, opts);
    const double c = std::cos(ell / 4.0);
    const double s = std::sin(ell / 4.0);
    const MoebiusTransform rot(c, -s, s, c);
    FuchsianGroup g = pf.group.conjugated(rot);
    g.validate_domain(1e-7);
    return {std::move(g), rot * pf.conjugator};
}

// Principal congruence subgroup of level 2 (mod +-1), free on
// A = [[1, 2], [0, 1]] and B = [[1, 0], [2, 1]]; a thrice-punctured sphere
// with cusps at infinity (A), 0 (B) and 1 (A B^-1).
inline FuchsianGroup thrice_punctured_sphere_group()
{
    const MoebiusTransform a(1.0, 2.0, 0.0, 1.0);
    const MoebiusTransform b(1.0, 0.0, 2.0, 1.0);
    const UHPoint inside(0.0, 2.0);
    PingPongDomain dom;
    dom.sides.resize(4);
    const auto inf = ProjPoint::at_infinity();
    dom.sides[generator_letter(0)] = side_facing_away(inf, ProjPoint::real(1.0), inside);
    dom.sides[inverse(generator_letter(0))] = side_facing_away(ProjPoint::real(-1.0), inf, inside);
    dom.sides[generator_letter(1)] =
        side_facing_away(ProjPoint::real(1.0), ProjPoint::real(0.0), inside);
    dom.sides[inverse(generator_letter(1))] =
        side_facing_away(ProjPoint::real(0.0), ProjPoint::real(-1.0), inside);
    std::vector<Cusp> cusps{{Word::parse("A", 2), ProjPoint::at_infinity()},
                            {Word::parse("B", 2), ProjPoint::real(0.0)},
                            {Word::parse("Ab", 2), ProjPoint::real(1.0)}};
    FuchsianGroup g("thrice-punctured-sphere", {a, b}, std::move(dom), std::nullopt,
                    std::move(cusps));
    g.validate_domain();
    return g;
}

}  // namespace eisen
