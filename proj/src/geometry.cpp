#include "pdef/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace pdef {

double wrap_angle(double radians) {
    double a = std::fmod(radians, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    // fmod of a tiny negative value can round up to exactly 2pi
    if (a >= kTwoPi) a = 0.0;
    return a;
}

Territory::Territory(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) {
        throw std::invalid_argument(
            fmt::format("territory needs at least 3 vertices, got {}", n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (distance(vertices_[i], vertices_[(i + 1) % n]) <= 1e-12) {
            throw std::invalid_argument(
                fmt::format("territory has duplicate consecutive vertices at index {}", i));
        }
    }

    int left_turns = 0;
    int right_turns = 0;
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = edge_vector(i);
        const Vec2 e1 = edge_vector((i + 1) % n);
        const double c = cross(e0, e1);
        if (c > 0.0) ++left_turns;
        if (c < 0.0) ++right_turns;
        turning += std::atan2(c, dot(e0, e1));
    }
    if (right_turns == static_cast<int>(n)) {
        throw std::invalid_argument("territory vertices must be counter-clockwise");
    }
    if (left_turns != static_cast<int>(n)) {
        throw std::invalid_argument("territory polygon is not strictly convex");
    }
    if (std::abs(turning - kTwoPi) > 1e-6) {
        throw std::invalid_argument("territory polygon is self-intersecting");
    }

    cumulative_.resize(n + 1, 0.0);
    double twice_area = 0.0;
    Vec2 weighted{};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = vertices_[i];
        const Vec2 b = vertices_[(i + 1) % n];
        cumulative_[i + 1] = cumulative_[i] + distance(a, b);
        const double c = cross(a, b);
        twice_area += c;
        weighted = weighted + c * (a + b);
    }
    perimeter_ = cumulative_[n];
    centroid_ = (1.0 / (3.0 * twice_area)) * weighted;
    for (const Vec2& v : vertices_) max_radius_ = std::max(max_radius_, distance(v, centroid_));
}

Territory Territory::regular_polygon(Vec2 center, double circumradius, int sides, double phase) {
    if (sides < 3 || !(circumradius > 0.0)) {
        throw std::invalid_argument("regular polygon needs >= 3 sides and positive radius");
    }
    std::vector<Vec2> v;
    v.reserve(static_cast<std::size_t>(sides));
    for (int k = 0; k < sides; ++k) {
        const double a = phase + kTwoPi * k / sides;
        v.push_back(center + circumradius * unit_vector(a));
    }
    return Territory(std::move(v));
}

Vec2 Territory::edge_vector(std::size_t i) const {
    return vertices_[(i + 1) % vertices_.size()] - vertices_[i];
}

bool Territory::contains(Vec2 p) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Vec2 e = edge_vector(i);
        // signed distance to the edge line, positive on the interior side
        if (cross(e, p - vertices_[i]) / norm(e) < -kBoundaryTolerance) return false;
    }
    return true;
}

PerimeterPoint Territory::point_on_edge(std::size_t edge, double fraction) const {
    const double len = cumulative_[edge + 1] - cumulative_[edge];
    PerimeterPoint out;
    out.position = vertices_[edge] + fraction * edge_vector(edge);
    out.arclength = cumulative_[edge] + fraction * len;
    if (out.arclength >= perimeter_) out.arclength = 0.0;
    const PolarCoord polar = to_polar(out.position);
    out.angle = polar.angle;
    out.radius = polar.radius;
    return out;
}

std::optional<PerimeterPoint> Territory::ray_boundary_intersection(Vec2 origin,
                                                                   double heading) const {
    if (contains(origin)) {
        throw std::invalid_argument(
            fmt::format("ray origin ({}, {}) is not outside the territory", origin.x, origin.y));
    }
    const Vec2 d = unit_vector(heading);
    double best_t = std::numeric_limits<double>::infinity();
    std::size_t best_edge = 0;
    double best_fraction = 0.0;

    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Vec2 a = vertices_[i];
        const Vec2 e = edge_vector(i);
        const double len = norm(e);
        const Vec2 w = a - origin;
        const double denom = cross(d, e);

        if (std::abs(denom) <= 1e-12 * len) {
            // Parallel. A collinear edge grazes the ray; take its nearer endpoint.
            if (std::abs(cross(w, d)) > kBoundaryTolerance) continue;
            const double ta = dot(w, d);
            const double tb = dot(w + e, d);
            if (ta >= 0.0 && ta <= tb && ta < best_t) {
                best_t = ta;
                best_edge = i;
                best_fraction = 0.0;
            } else if (tb >= 0.0 && tb < ta && tb < best_t) {
                best_t = tb;
                best_edge = i;
                best_fraction = 1.0;
            }
            continue;
        }

        const double t = cross(w, e) / denom;
        const double u = cross(w, d) / denom;
        if (t < 0.0) continue;
        if (u * len < -kBoundaryTolerance || u * len > len + kBoundaryTolerance) continue;
        if (t < best_t) {
            best_t = t;
            best_edge = i;
            best_fraction = std::clamp(u, 0.0, 1.0);
        }
    }

    if (!std::isfinite(best_t)) return std::nullopt;
    return point_on_edge(best_edge, best_fraction);
}

PolarCoord Territory::to_polar(Vec2 p) const {
    const Vec2 r = p - centroid_;
    const double radius = norm(r);
    if (radius <= 1e-12) {
        throw std::invalid_argument("polar angle is undefined at the territory centroid");
    }
    return {radius, wrap_angle(std::atan2(r.y, r.x))};
}

PerimeterPoint Territory::perimeter_point_from_arclength(double s) const {
    if (!(s >= 0.0 && s < perimeter_)) {
        throw std::out_of_range(
            fmt::format("arc-length {} outside [0, {})", s, perimeter_));
    }
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
    const auto edge = static_cast<std::size_t>(std::distance(cumulative_.begin(), it) - 1);
    const double len = cumulative_[edge + 1] - cumulative_[edge];
    PerimeterPoint out = point_on_edge(edge, (s - cumulative_[edge]) / len);
    out.arclength = s;
    return out;
}

namespace {

struct Projection {
    double distance;
    double fraction;
};

Projection project_onto_segment(Vec2 p, Vec2 a, Vec2 e) {
    const double l2 = dot(e, e);
    const double f = std::clamp(dot(p - a, e) / l2, 0.0, 1.0);
    return {distance(p, a + f * e), f};
}

}  // namespace

double Territory::arclength_of(Vec2 p) const {
    double best = std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Projection proj = project_onto_segment(p, vertices_[i], edge_vector(i));
        if (proj.distance < best) {
            best = proj.distance;
            s = cumulative_[i] + proj.fraction * (cumulative_[i + 1] - cumulative_[i]);
        }
    }
    return s >= perimeter_ ? s - perimeter_ : s;
}

double Territory::distance_to_boundary(Vec2 p) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        best = std::min(best, project_onto_segment(p, vertices_[i], edge_vector(i)).distance);
    }
    return best;
}

Vec2 Territory::clip_segment(Vec2 from, Vec2 to) const {
    if (contains(to)) return to;
    double t_exit = 1.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Vec2 e = edge_vector(i);
        const double len = norm(e);
        const double d_from = cross(e, from - vertices_[i]) / len;
        const double d_to = cross(e, to - vertices_[i]) / len;
        if (d_to >= 0.0) continue;
        const double t = d_from <= 0.0 ? 0.0 : d_from / (d_from - d_to);
        t_exit = std::min(t_exit, t);
    }
    return from + t_exit * (to - from);
}

}  // namespace pdef
