#pragma once

// Orbit enumeration over coset representatives. The search walks the reduced
// word tree depth first. A node v = v'g owns the region M_{v'} H(g), which
// contains v p and the orbit points of all descendants whenever p lies in the
// closure of the ping-pong domain. A lower bound on the distance from that
// region to the target prunes the subtree, so a search that never hits the
// depth cap has found every orbit point below the cutoff.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "eisen/errors.hpp"
#include "eisen/fuchsian.hpp"
#include "eisen/hyperbolic.hpp"
#include "eisen/word.hpp"

namespace eisen {

class OrbitTarget {
public:
    enum class Kind { Axis, Horocycle, Point };

    // The geodesic {Re z = 0}.
    static OrbitTarget axis() { return OrbitTarget(Kind::Axis, 0.0, UHPoint(0.0, 1.0)); }

    // The horocycle {Im z = y0}; orbit points must stay below it.
    static OrbitTarget horocycle(double y0)
    {
        if (!(y0 > 0.0)) throw domain_error("horocycle height must be positive");
        return OrbitTarget(Kind::Horocycle, y0, UHPoint(0.0, 1.0));
    }

    static OrbitTarget point(const UHPoint& w) { return OrbitTarget(Kind::Point, 0.0, w); }

    Kind kind() const noexcept { return kind_; }
    double y0() const noexcept { return y0_; }
    const UHPoint& target_point() const noexcept { return point_; }

    double distance(const UHPoint& z) const
    {
        switch (kind_) {
        case Kind::Axis: return dist_to_axis(z);
        case Kind::Horocycle: return std::log(y0_ / z.y());
        case Kind::Point: return dist(z, point_);
        }
        return infinity;
    }

    // Lower bound on the distance from the target to the left side of g.
    double lower_bound(const OrientedGeodesic& g) const noexcept
    {
        switch (kind_) {
        case Kind::Axis: return axis_to_halfplane(g);
        case Kind::Horocycle: {
            const double top = halfplane_sup_im(g);
            return std::isfinite(top) ? std::log(y0_ / top) : -infinity;
        }
        case Kind::Point: return point_to_halfplane(g, point_.x(), point_.y());
        }
        return -infinity;
    }

private:
    OrbitTarget(Kind k, double y0, UHPoint p) : kind_(k), y0_(y0), point_(p) {}

    Kind kind_;
    double y0_;
    UHPoint point_;
};

struct EnumerationOptions {
    // Word-length cap; hitting it clears the completeness certificate.
    std::size_t max_depth = std::size_t{1} << 20;
    bool keep_words = true;
    int threads = 1;
    // Tolerance added to the cutoff before a region is discarded.
    double prune_slack = 1e-9;
};

struct EnumerationStats {
    bool complete = true;
    std::size_t search_depth = 0;
    std::size_t nodes_visited = 0;
    std::size_t nodes_pruned = 0;
};

// One orbit point below the cutoff. `letters` is the word relative to the
// reduced base point; prepend it to `base_word` to get the word acting on
// the original point.
struct OrbitHit {
    double distance;
    UHPoint point;
    std::span<const Letter> letters;
    Mat2 matrix;  // image of the word, acting on the reduced base point
};

namespace detail {

// Orbit points never enter a small enough horoball at a cusp. When a region
// of the word tree has a cusp vertex at one end of its boundary, removing the
// horoball there turns the bound for the long parabolic runs around that cusp
// from logarithmic into the actual growth of the orbit distances.
class CuspGuard {
public:
    CuspGuard(const FuchsianGroup& group, const UHPoint& base)
    {
        const auto& sides = group.domain()->sides;
        for (const auto& s : sides) {
            add_vertex(s.from);
            add_vertex(s.to);
        }
        incident_.assign(vertices_.size(), {});
        for (std::size_t l = 0; l < sides.size(); ++l) {
            incident_[find(sides[l].from)].push_back(static_cast<Letter>(l));
            incident_[find(sides[l].to)].push_back(static_cast<Letter>(l));
        }
        frames_.resize(vertices_.size());
        heights_.assign(vertices_.size(), infinity);
        for (std::size_t v = 0; v < vertices_.size(); ++v) {
            frames_[v] = to_infinity(vertices_[v]);
            if (incident_[v].size() == 2) heights_[v] = strip_height(group, base, v);
        }
        ends_.resize(sides.size());
        for (std::size_t l = 0; l < sides.size(); ++l) {
            for (int k = 0; k < 2; ++k) {
                const std::size_t v = find(k == 0 ? sides[l].from : sides[l].to);
                // The shared endpoint goes to infinity only up to rounding,
                // so read the edge off the other endpoint.
                const ProjPoint other = k == 0 ? sides[l].to : sides[l].from;
                const ProjPoint far = transform(frames_[v], other);
                End e;
                e.vertex = v;
                e.active = std::isfinite(heights_[v]) && !far.is_infinite();
                e.edge = e.active ? far.value() : 0.0;
                e.sign = k == 0 ? 1.0 : -1.0;
                ends_[l][k] = e;
            }
        }
    }

    // Lower bound on the distance from the target to the orbit points in
    // parent * H(l). Returns -inf when no cusp end applies.
    double bound(const OrbitTarget& target, const Mat2& parent, Letter l) const
    {
        const Mat2 inv{parent.d, -parent.b, -parent.c, parent.a};
        double best = -infinity;
        for (const End& e : ends_[l]) {
            if (!e.active) continue;
            const Mat2 n = frames_[e.vertex] * inv;
            best = std::max(best, end_bound(target, n, e));
        }
        return best;
    }

private:
    struct End {
        std::size_t vertex = 0;
        bool active = false;
        double edge = 0.0;  // the region is sign * (x - edge) > 0 in the vertex frame
        double sign = 1.0;
    };

    static bool same(const ProjPoint& p, const ProjPoint& q)
    {
        const double cross = p.u * q.v - p.v * q.u;
        return std::abs(cross) <= 1e-9 * std::hypot(p.u, p.v) * std::hypot(q.u, q.v);
    }

    void add_vertex(const ProjPoint& p)
    {
        for (const auto& v : vertices_) {
            if (same(v, p)) return;
        }
        vertices_.push_back(p);
    }

    std::size_t find(const ProjPoint& p) const
    {
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (same(vertices_[i], p)) return i;
        }
        return vertices_.size();
    }

    // Sends (u : v) to infinity; stays well conditioned when v is tiny.
    static Mat2 to_infinity(const ProjPoint& p)
    {
        const double n = std::hypot(p.u, p.v);
        const double u = p.u / n;
        const double v = p.v / n;
        return Mat2{-u, -v, v, -u};
    }

    // Walks the tiles around vertex v (one period of the cusp) and returns a
    // height in the vertex frame that no orbit point of `base` exceeds: the
    // orbit points in those tiles, and the tops of their sides away from the
    // vertex, under which every other tile lies.
    double strip_height(const FuchsianGroup& group, const UHPoint& base, std::size_t v0) const
    {
        const auto& sides = group.domain()->sides;
        const Mat2 c = frames_[v0];
        Mat2 w;
        std::size_t v = v0;
        Letter g = incident_[v0][0];
        double top = 0.0;
        for (int step = 0; step < 64; ++step) {
            const Mat2 cw = c * w;
            top = std::max(top, apply(cw, base.x(), base.y()).y());
            for (std::size_t l = 0; l < sides.size(); ++l) {
                if (l == incident_[v][0] || l == incident_[v][1]) continue;
                const OrientedGeodesic s = transform(cw, sides[l]);
                if (s.from.is_infinite() || s.to.is_infinite()) return infinity;
                top = std::max(top, 0.5 * std::abs(s.from.value() - s.to.value()));
            }
            w = w * group.image(g).matrix();
            const std::size_t next = find(transform(group.image(inverse(g)).matrix(), vertices_[v]));
            if (next >= vertices_.size() || incident_[next].size() != 2) return infinity;
            const Letter back = inverse(g);
            g = incident_[next][0] == back ? incident_[next][1] : incident_[next][0];
            v = next;
            if (v == v0) return top;
        }
        return infinity;
    }

    // Distance bound from the target, mapped by n into the vertex frame,
    // to S = {sign * (x - edge) > 0, y <= h}.
    double end_bound(const OrbitTarget& target, const Mat2& n, const End& e) const
    {
        const double h = heights_[e.vertex];
        auto local = [&](double x) { return e.sign * (x - e.edge); };
        switch (target.kind()) {
        case OrbitTarget::Kind::Axis: {
            const ProjPoint a = transform(n, ProjPoint::real(0.0));
            const ProjPoint b = transform(n, ProjPoint::at_infinity());
            if (a.is_infinite() || b.is_infinite()) {
                const double m = local((a.is_infinite() ? b : a).value());
                return m >= 0.0 ? 0.0 : std::asinh(-m / h);
            }
            const double p = local(a.value());
            const double q = local(b.value());
            if (p >= 0.0 || q >= 0.0) return 0.0;
            // Both ends left of the strip: sinh d = (K + y^2) / (2 rho y) on x = 0.
            const double k = p * q;
            const double rho = 0.5 * std::abs(p - q);
            const double y = std::min(std::sqrt(k), h);
            return std::asinh((k + y * y) / (2.0 * rho * y));
        }
        case OrbitTarget::Kind::Horocycle: {
            // Target height of q is Im q / |c' q + d'|^2 with (c', d') the bottom row of n^-1.
            const double cc = -n.c;
            const double dd = n.a;
            double sup;
            if (cc == 0.0) {
                sup = h / (dd * dd);
            } else {
                const double x0 = local(-dd / cc);
                if (x0 >= 0.0) return -infinity;
                const double delta = -x0;
                const double y = std::min(delta, h);
                sup = y / ((delta * delta + y * y) * cc * cc);
            }
            return std::log(target.y0() / sup);
        }
        case OrbitTarget::Kind::Point: {
            const UHPoint w = target.target_point();
            const UHPoint q = apply(n, w.x(), w.y());
            const double u = local(q.x());
            const double v = q.y();
            if (u > 0.0 && v <= h) return 0.0;
            auto d = [&](double x, double y) {
                return 2.0 * std::asinh(std::hypot(u - x, v - y) / (2.0 * std::sqrt(v * y)));
            };
            const double side = d(0.0, std::min(std::hypot(u, v), h));
            const double roof = d(std::max(u, 0.0), h);
            return std::min(side, roof);
        }
        }
        return -infinity;
    }

    std::vector<ProjPoint> vertices_;
    std::vector<std::vector<Letter>> incident_;
    std::vector<Mat2> frames_;
    std::vector<double> heights_;
    std::vector<std::array<End, 2>> ends_;
};

class OrbitSearch {
public:
    OrbitSearch(const FuchsianGroup& group, const OrbitTarget& target, const UHPoint& base,
                double cutoff, const std::optional<Word>& stabilizer, const EnumerationOptions& opts)
        : group_(group), target_(target), base_(base), cutoff_(cutoff), opts_(opts)
    {
        if (!group.domain()) {
            throw domain_error("orbit enumeration for '" + group.family() +
                               "' needs a ping-pong domain");
        }
        if (stabilizer) rule_.emplace(*stabilizer);
        guard_.emplace(group, base);
    }

    // Runs the subtree below `first` (or the root alone when first is empty).
    // Passing first = nullopt and whole = true searches everything.
    template <class Visit>
    EnumerationStats run(Visit&& visit, std::optional<Letter> first, bool whole)
    {
        EnumerationStats stats;
        const auto& sides = group_.domain()->sides;
        const auto& images = group_.images();
        const int alphabet = static_cast<int>(images.size());
        const double limit = cutoff_ + opts_.prune_slack;

        std::vector<Letter> path;
        struct Node {
            Mat2 m;
            int last;
            int next;
        };
        std::vector<Node> stack;

        if (!first || whole) {
            ++stats.nodes_visited;
            const double d = distance_checked(base_, path);
            if (d < cutoff_) visit(OrbitHit{d, base_, std::span<const Letter>(path), Mat2{}});
        }
        if (whole) {
            stack.push_back({Mat2{}, -1, 0});
        } else if (first) {
            stack.push_back({Mat2{}, -1, static_cast<int>(*first)});
        }

        while (!stack.empty()) {
            Node& top = stack.back();
            const bool single = !whole && stack.size() == 1;
            if (top.next >= alphabet || (single && top.next > static_cast<int>(*first))) {
                stack.pop_back();
                if (!path.empty()) path.pop_back();
                continue;
            }
            const Letter l = static_cast<Letter>(top.next++);
            if (top.last >= 0 && l == inverse(static_cast<Letter>(top.last))) continue;

            ++stats.nodes_visited;
            const Mat2 parent = top.m;
            const OrientedGeodesic region = transform(parent, sides[l]);
            if (target_.lower_bound(region) > limit || guard_->bound(target_, parent, l) > limit) {
                ++stats.nodes_pruned;
                continue;
            }
            path.push_back(l);
            if (rule_ && path.size() == rule_->stabilizer().size() && rule_->excluded_prefix(path)) {
                path.pop_back();
                continue;
            }
            const Mat2 m = parent * images[l].matrix();
            const UHPoint q = apply(m, base_.x(), base_.y());
            stats.search_depth = std::max(stats.search_depth, path.size());
            const double d = distance_checked(q, path);
            if (d < cutoff_ && (!rule_ || rule_->is_representative(path))) {
                visit(OrbitHit{d, q, std::span<const Letter>(path), m});
            }
            if (path.size() >= opts_.max_depth) {
                stats.complete = false;
                path.pop_back();
                continue;
            }
            stack.push_back({m, static_cast<int>(l), 0});
        }
        return stats;
    }

private:
    double distance_checked(const UHPoint& q, std::span<const Letter> path) const
    {
        if (target_.kind() == OrbitTarget::Kind::Horocycle && !(q.y() < target_.y0()) &&
            (!rule_ || rule_->is_representative(path))) {
            std::ostringstream msg;
            msg << "orbit point " << q << " of word " << Word(path).to_string()
                << " is not below the horocycle Im = " << target_.y0();
            throw precondition_violation(msg.str());
        }
        return target_.distance(q);
    }

    const FuchsianGroup& group_;
    OrbitTarget target_;
    UHPoint base_;
    double cutoff_;
    EnumerationOptions opts_;
    std::optional<CosetRule> rule_;
    std::optional<CuspGuard> guard_;
};

inline void merge_stats(EnumerationStats& into, const EnumerationStats& s)
{
    into.complete = into.complete && s.complete;
    into.search_depth = std::max(into.search_depth, s.search_depth);
    into.nodes_visited += s.nodes_visited;
    into.nodes_pruned += s.nodes_pruned;
}

}  // namespace detail

// Streams every orbit point of z within `cutoff` of the target, one per
// coset of <stabilizer> when a stabilizer is given. Single-threaded; the
// visiting order is deterministic.
template <class Visit>
EnumerationStats for_each_orbit_point(const FuchsianGroup& group, const OrbitTarget& target,
                                      const UHPoint& base, double cutoff,
                                      const std::optional<Word>& stabilizer,
                                      const EnumerationOptions& opts, Visit&& visit)
{
    detail::OrbitSearch search(group, target, base, cutoff, stabilizer, opts);
    return search.run(std::forward<Visit>(visit), std::nullopt, true);
}

struct DistanceSpectrum {
    double cutoff = 0.0;
    std::vector<double> distances;  // ascending
    std::vector<UHPoint> points;    // orbit points, matching distances
    std::vector<Word> words;        // coset representatives acting on the original point
    bool complete = false;
    // Nothing was pruned: the coset space is finite and fully listed, so no
    // orbit point lies beyond the cutoff either.
    bool exhaustive = false;
    std::size_t search_depth = 0;
    std::size_t nodes_visited = 0;
    Word base_word;  // base_word applied to the original point lands in the domain

    std::size_t size() const noexcept { return distances.size(); }

    // Number of entries strictly below t (the caller checks t <= cutoff).
    std::size_t count_below(double t) const noexcept
    {
        return static_cast<std::size_t>(
            std::lower_bound(distances.begin(), distances.end(), t) - distances.begin());
    }
};

// Shared gather for the spectrum front ends. Results are sorted by distance,
// with ties kept in word-tree order, so they do not depend on the thread count.
inline DistanceSpectrum orbit_spectrum(const FuchsianGroup& group, const OrbitTarget& target,
                                       const UHPoint& z, double cutoff,
                                       const std::optional<Word>& stabilizer,
                                       const EnumerationOptions& opts = {})
{
    if (!(cutoff > 0.0)) throw domain_error("spectrum cutoff must be positive");
    const DomainReduction red = group.reduce_to_domain(z);
    std::optional<CosetRule> rule;
    if (stabilizer) rule.emplace(*stabilizer);

    struct Entry {
        double d;
        UHPoint p;
        Word w;
    };
    auto collect = [&](std::vector<Entry>& out) {
        return [&out, &opts, &red, &rule](const OrbitHit& h) {
            Word w;
            if (opts.keep_words) {
                w = Word(h.letters) * red.word;
                if (rule) w = rule->normalize(std::move(w));
            }
            out.push_back({h.distance, h.point, std::move(w)});
        };
    };

    detail::OrbitSearch search(group, target, red.point, cutoff, stabilizer, opts);
    std::vector<Entry> entries;
    EnumerationStats stats;
    const int alphabet = static_cast<int>(group.images().size());
    if (opts.threads <= 1) {
        stats = search.run(collect(entries), std::nullopt, true);
    } else {
        // Root, then one task per first letter, concatenated in letter order.
        std::vector<std::vector<Entry>> parts(static_cast<std::size_t>(alphabet) + 1);
        std::vector<EnumerationStats> part_stats(parts.size());
        part_stats[0] = search.run(collect(parts[0]), std::nullopt, false);
        std::vector<std::thread> pool;
        int next = 0;
        auto worker = [&](int task) {
            detail::OrbitSearch local(group, target, red.point, cutoff, stabilizer, opts);
            part_stats[task + 1] =
                local.run(collect(parts[task + 1]), static_cast<Letter>(task), false);
        };
        while (next < alphabet) {
            pool.clear();
            for (int t = 0; t < opts.threads && next < alphabet; ++t) pool.emplace_back(worker, next++);
            for (auto& th : pool) th.join();
        }
        for (std::size_t i = 0; i < parts.size(); ++i) {
            detail::merge_stats(stats, part_stats[i]);
            for (auto& e : parts[i]) entries.push_back(std::move(e));
        }
    }

    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.d < b.d; });
    DistanceSpectrum spec;
    spec.cutoff = cutoff;
    spec.complete = stats.complete;
    spec.exhaustive = stats.complete && stats.nodes_pruned == 0;
    spec.search_depth = stats.search_depth;
    spec.nodes_visited = stats.nodes_visited;
    spec.base_word = red.word;
    spec.distances.reserve(entries.size());
    spec.points.reserve(entries.size());
    for (auto& e : entries) {
        spec.distances.push_back(e.d);
        spec.points.push_back(e.p);
        if (opts.keep_words) spec.words.push_back(std::move(e.w));
    }
    return spec;
}

namespace detail {

inline void require_axis_frame(const FuchsianGroup& group, const Word& stabilizer)
{
    const MoebiusTransform m = group.evaluate(stabilizer);
    const double scale = std::abs(m.a()) + std::abs(m.d());
    if (std::abs(m.b()) > 1e-9 * scale || std::abs(m.c()) > 1e-9 * scale ||
        classify(m) != ElementClass::Hyperbolic) {
        throw precondition_violation("stabilizer " + stabilizer.to_string() +
                                     " is not diagonal hyperbolic in this frame; use axis_frame");
    }
}

inline void require_cusp_frame(const FuchsianGroup& group, const Word& stabilizer)
{
    // Loose tolerance: long parabolic words lose digits at small pinching length.
    const MoebiusTransform m = group.evaluate(stabilizer);
    if (std::abs(m.c()) > 1e-6 || std::abs(m.a() - 1.0) > 1e-6 || std::abs(m.d() - 1.0) > 1e-6) {
        throw precondition_violation("stabilizer " + stabilizer.to_string() +
                                     " does not fix infinity in this frame; use cusp_frame");
    }
}

}  // namespace detail

// Distances d(eta z, {Re = 0}) < T over <gamma>\Gamma.
inline DistanceSpectrum orbit_distances_hyp(const FuchsianGroup& group, const Word& gamma,
                                            const UHPoint& z, double T,
                                            const EnumerationOptions& opts = {})
{
    detail::require_axis_frame(group, gamma);
    return orbit_spectrum(group, OrbitTarget::axis(), z, T, gamma, opts);
}

inline DistanceSpectrum orbit_distances_hyp(const FuchsianGroup& group, Letter gamma,
                                            const UHPoint& z, double T,
                                            const EnumerationOptions& opts = {})
{
    return orbit_distances_hyp(group, Word{gamma}, z, T, opts);
}

// Distances log(y0 / Im eta z) < T over <P>\Gamma.
inline DistanceSpectrum orbit_distances_par(const FuchsianGroup& group, const Word& parabolic,
                                            const UHPoint& z, double y0, double T,
                                            const EnumerationOptions& opts = {})
{
    detail::require_cusp_frame(group, parabolic);
    return orbit_spectrum(group, OrbitTarget::horocycle(y0), z, T, parabolic, opts);
}

inline DistanceSpectrum orbit_distances_par(const FuchsianGroup& group, Letter parabolic,
                                            const UHPoint& z, double y0, double T,
                                            const EnumerationOptions& opts = {})
{
    return orbit_distances_par(group, Word{parabolic}, z, y0, T, opts);
}

struct InjectivityRadius {
    double radius;
    Word word;  // word achieving the minimal displacement of the original point
    bool complete;
};

// Half the minimal displacement of z over nontrivial elements.
inline InjectivityRadius injectivity_radius(const FuchsianGroup& group, const UHPoint& z,
                                            const EnumerationOptions& opts = {})
{
    const DomainReduction red = group.reduce_to_domain(z);
    const UHPoint p = red.point;
    double best = infinity;
    Word best_word;
    for (std::size_t l = 0; l < group.images().size(); ++l) {
        const double d = dist(p, apply(group.images()[l], p));
        if (d < best) {
            best = d;
            best_word = Word{static_cast<Letter>(l)};
        }
    }
    std::vector<Letter> found;
    EnumerationOptions o = opts;
    o.keep_words = false;
    const EnumerationStats stats = for_each_orbit_point(
        group, OrbitTarget::point(p), p, best * (1.0 + 1e-12) + 1e-12, std::nullopt, o,
        [&](const OrbitHit& h) {
            if (!h.letters.empty() && h.distance < best) {
                best = h.distance;
                found.assign(h.letters.begin(), h.letters.end());
            }
        });
    if (!found.empty()) best_word = Word(std::span<const Letter>(found));
    // Displacement of p by v equals displacement of z by u^-1 v u.
    const Word w = red.word.inverse() * best_word * red.word;
    return {best / 2.0, w, stats.complete};
}

struct LatticeCount {
    std::size_t count;
    bool complete;
};

// card{eta in Gamma : d(eta z, w) < T}.
inline LatticeCount lattice_count(const FuchsianGroup& group, const UHPoint& z, const UHPoint& w,
                                  double T, const EnumerationOptions& opts = {})
{
    if (!(T > 0.0)) throw domain_error("lattice_count requires T > 0");
    const DomainReduction red = group.reduce_to_domain(z);
    std::size_t n = 0;
    const EnumerationStats stats =
        for_each_orbit_point(group, OrbitTarget::point(w), red.point, T, std::nullopt, opts,
                             [&](const OrbitHit&) { ++n; });
    return {n, stats.complete};
}

}  // namespace eisen
