#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "symplab/errors.hpp"

namespace symplab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }

/// Wrap a coordinate difference to the nearest representative in
/// [-1/2, 1/2); distances on the unit torus are measured through it.
inline double wrap_diff(double d) {
    d -= std::floor(d + 0.5);
    return d;
}

/// Torus distance between two points given in unit-square coordinates.
inline double torus_dist(Vec2 a, Vec2 b) {
    const double dx = wrap_diff(a.x - b.x);
    const double dy = wrap_diff(a.y - b.y);
    return std::sqrt(dx * dx + dy * dy);
}

/// Uniform periodic grid on the unit torus [0,1)^2. Nodes sit at
/// (i/n_x, j/n_y); storage is row-major with x fastest:
/// index(i, j) = j*n_x + i.
struct GridSpec {
    int nx = 0;
    int ny = 0;

    GridSpec() = default;
    GridSpec(int nx_, int ny_) : nx(nx_), ny(ny_) {
        if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0)
            throw ConfigError("grid sizes must be even and at least 8");
    }

    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j) * nx + i;
    }
    double x(int i) const { return static_cast<double>(i) / nx; }
    double y(int j) const { return static_cast<double>(j) / ny; }

    bool operator==(const GridSpec&) const = default;
};

struct ScalarField {
    GridSpec grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g, double fill = 0.0)
        : grid(g), v(g.size(), fill) {}

    double& at(int i, int j) { return v[grid.idx(i, j)]; }
    double at(int i, int j) const { return v[grid.idx(i, j)]; }
};

/// 1-form with components theta = cx dx + cy dy sampled at nodes.
struct OneForm {
    GridSpec grid;
    std::vector<double> cx, cy;

    OneForm() = default;
    explicit OneForm(const GridSpec& g)
        : grid(g), cx(g.size(), 0.0), cy(g.size(), 0.0) {}
};

/// Tangent field with components (vx, vy) sampled at nodes.
struct VectorField {
    GridSpec grid;
    std::vector<double> vx, vy;

    VectorField() = default;
    explicit VectorField(const GridSpec& g)
        : grid(g), vx(g.size(), 0.0), vy(g.size(), 0.0) {}
};

/// Uniformly sampled path of grid objects on [0, 1]; sample k sits at
/// time k/(n_t - 1).
template <class T>
struct TimeSeries {
    std::vector<T> samples;

    TimeSeries() = default;
    explicit TimeSeries(std::vector<T> s) : samples(std::move(s)) {}

    int nt() const { return static_cast<int>(samples.size()); }
    double dt() const { return 1.0 / (nt() - 1); }
    double time(int k) const { return static_cast<double>(k) / (nt() - 1); }
    T& operator[](int k) { return samples[static_cast<std::size_t>(k)]; }
    const T& operator[](int k) const { return samples[static_cast<std::size_t>(k)]; }
};

inline ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    ScalarField r(a.grid);
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i] + b.v[i];
    return r;
}

inline ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    ScalarField r(a.grid);
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] = a.v[i] - b.v[i];
    return r;
}

inline ScalarField operator*(double c, const ScalarField& a) {
    ScalarField r(a.grid);
    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] = c * a.v[i];
    return r;
}

inline OneForm operator+(const OneForm& a, const OneForm& b) {
    OneForm r(a.grid);
    for (std::size_t i = 0; i < r.cx.size(); ++i) {
        r.cx[i] = a.cx[i] + b.cx[i];
        r.cy[i] = a.cy[i] + b.cy[i];
    }
    return r;
}

inline OneForm operator-(const OneForm& a, const OneForm& b) {
    OneForm r(a.grid);
    for (std::size_t i = 0; i < r.cx.size(); ++i) {
        r.cx[i] = a.cx[i] - b.cx[i];
        r.cy[i] = a.cy[i] - b.cy[i];
    }
    return r;
}

inline OneForm operator*(double c, const OneForm& a) {
    OneForm r(a.grid);
    for (std::size_t i = 0; i < r.cx.size(); ++i) {
        r.cx[i] = c * a.cx[i];
        r.cy[i] = c * a.cy[i];
    }
    return r;
}

inline VectorField operator+(const VectorField& a, const VectorField& b) {
    VectorField r(a.grid);
    for (std::size_t i = 0; i < r.vx.size(); ++i) {
        r.vx[i] = a.vx[i] + b.vx[i];
        r.vy[i] = a.vy[i] + b.vy[i];
    }
    return r;
}

inline VectorField operator-(const VectorField& a, const VectorField& b) {
    VectorField r(a.grid);
    for (std::size_t i = 0; i < r.vx.size(); ++i) {
        r.vx[i] = a.vx[i] - b.vx[i];
        r.vy[i] = a.vy[i] - b.vy[i];
    }
    return r;
}

inline VectorField operator*(double c, const VectorField& a) {
    VectorField r(a.grid);
    for (std::size_t i = 0; i < r.vx.size(); ++i) {
        r.vx[i] = c * a.vx[i];
        r.vy[i] = c * a.vy[i];
    }
    return r;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs(const ScalarField& f) { return max_abs(f.v); }

inline double max_abs(const OneForm& f) {
    return std::max(max_abs(f.cx), max_abs(f.cy));
}

inline double max_abs(const VectorField& f) {
    return std::max(max_abs(f.vx), max_abs(f.vy));
}

} // namespace symplab
