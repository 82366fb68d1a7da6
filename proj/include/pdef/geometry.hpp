#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

namespace pdef {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Distance tolerance used for boundary membership and edge hits, in meters.
inline constexpr double kBoundaryTolerance = 1e-9;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    friend constexpr Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 unit_vector(double heading) { return {std::cos(heading), std::sin(heading)}; }

// Wraps an angle into [0, 2pi).
double wrap_angle(double radians);

struct PolarCoord {
    double radius = 0.0;
    double angle = 0.0;  // [0, 2pi), from +x about the centroid
};

// A point on the territory boundary, carrying both its arc-length and its
// polar coordinates about the centroid.
struct PerimeterPoint {
    Vec2 position;
    double arclength = 0.0;  // [0, L), counter-clockwise from vertex 0
    double angle = 0.0;
    double radius = 0.0;
};

// Convex polygonal territory with counter-clockwise vertices. Arc-length is
// measured from vertex 0. Construction throws std::invalid_argument when the
// polygon is not a simple, strictly convex, counter-clockwise ring.
class Territory {
public:
    explicit Territory(std::vector<Vec2> vertices);

    // Regular polygon approximation of a circle, vertex 0 at `phase`.
    static Territory regular_polygon(Vec2 center, double circumradius, int sides,
                                     double phase = 0.0);

    const std::vector<Vec2>& vertices() const { return vertices_; }
    Vec2 centroid() const { return centroid_; }
    double perimeter_length() const { return perimeter_; }
    // Largest vertex distance from the centroid.
    double max_radius() const { return max_radius_; }

    // Boundary points count as inside.
    bool contains(Vec2 p) const;

    // First hit of the ray (origin, heading) with the boundary, or nullopt when
    // the ray misses. Throws std::invalid_argument if origin is inside.
    std::optional<PerimeterPoint> ray_boundary_intersection(Vec2 origin,
                                                            double heading) const;

    // Throws std::invalid_argument when p coincides with the centroid.
    PolarCoord to_polar(Vec2 p) const;

    // Throws std::out_of_range unless 0 <= s < L.
    PerimeterPoint perimeter_point_from_arclength(double s) const;

    // Arc-length of the boundary point closest to p.
    double arclength_of(Vec2 p) const;

    // Distance from p to the nearest edge segment.
    double distance_to_boundary(Vec2 p) const;

    // Truncates the motion from -> to at the boundary exit point, so the
    // result stays inside. `from` must be inside (within tolerance).
    Vec2 clip_segment(Vec2 from, Vec2 to) const;

private:
    PerimeterPoint point_on_edge(std::size_t edge, double fraction) const;
    Vec2 edge_vector(std::size_t i) const;

    std::vector<Vec2> vertices_;
    std::vector<double> cumulative_;  // arc-length at each vertex, size n+1
    Vec2 centroid_;
    double perimeter_ = 0.0;
    double max_radius_ = 0.0;
};

}  // namespace pdef
