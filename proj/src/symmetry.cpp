#include "sqglab/symmetry.hpp"

#include <array>
#include <cfloat>
#include <stdexcept>

#include "sqglab/interp.hpp"

namespace sqg {

SymmetryGroup SymmetryGroup::rotation(int m) {
    if (m < 2) throw std::invalid_argument("SymmetryGroup: m must be >= 2");
    return SymmetryGroup{Kind::rotation, m};
}

SymmetryGroup SymmetryGroup::rotation_reflection(int m) {
    if (m < 2) throw std::invalid_argument("SymmetryGroup: m must be >= 2");
    return SymmetryGroup{Kind::rotation_reflection, m};
}

SymmetryGroup SymmetryGroup::radial() { return SymmetryGroup{Kind::radial, 2}; }

std::vector<GroupElement> SymmetryGroup::generators() const {
    std::vector<GroupElement> gen;
    if (kind == Kind::radial) {
        // no single generator; probe a few incommensurate angles
        gen.push_back({2.0 * M_PI / 64.0, false});
        gen.push_back({2.0 * M_PI * 5.0 / 64.0, false});
    } else {
        gen.push_back({base_angle(), false});
        if (has_reflection()) gen.push_back({0.0, true});
    }
    return gen;
}

std::vector<GroupElement> SymmetryGroup::averaging_list() const {
    std::vector<GroupElement> list;
    if (kind == Kind::radial) {
        for (int k = 0; k < 64; ++k) list.push_back({2.0 * M_PI * k / 64.0, false});
        return list;
    }
    for (int k = 0; k < m; ++k) {
        list.push_back({base_angle() * k, false});
        if (has_reflection()) list.push_back({base_angle() * k, true});
    }
    return list;
}

namespace {

// Multiple of pi/2 (within rounding)? Those rotations permute grid nodes.
bool quarter_turns(double angle, int& quarters) {
    double q = angle / (M_PI / 2.0);
    double r = std::round(q);
    if (std::abs(q - r) < 1e-12) {
        quarters = ((static_cast<int>(r) % 4) + 4) % 4;
        return true;
    }
    return false;
}

// Node index of the rotated point for exact quarter turns. Node set is
// closed under (i,j) -> (n-i, n-j) and (i,j) -> (j, n-i) with wraparound.
inline std::pair<int, int> rotate_index(int quarters, int i, int j, int n) {
    switch (quarters) {
        case 0: return {i, j};
        case 1: return {j, (n - i) % n};            // R_{-pi/2} applied to x
        case 2: return {(n - i) % n, (n - j) % n};  // R_pi
        default: return {(n - j) % n, i};           // R_{+pi/2}
    }
}

} // namespace

// Convention: the element {angle, reflect} is g = S o R_angle (rotate, then
// reflect across the x-axis), so g^{-1} x = R_{-angle}(S x).

RealField act(const GroupElement& g, const RealField& f) {
    const Grid& grid = f.grid();
    const int n = grid.n;
    const double det = g.reflect ? -1.0 : 1.0;

    RealField out(grid);
    int q = 0;
    if (quarter_turns(g.angle, q)) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                int js = g.reflect ? (n - j) % n : j;
                auto [ri, rj] = rotate_index(q, i, js, n);
                out(i, j) = det * f(ri, rj);
            }
        }
        return out;
    }

    const double c = std::cos(g.angle), s = std::sin(g.angle);
    for (int i = 0; i < n; ++i) {
        const double x = grid.x(i);
        for (int j = 0; j < n; ++j) {
            double y = grid.x(j);
            double yy = g.reflect ? -y : y;
            double px = c * x + s * yy;
            double py = -s * x + c * yy;
            out(i, j) = det * interp_bicubic(f, px, py);
        }
    }
    return out;
}

VectorField act(const GroupElement& g, const VectorField& v) {
    const Grid& grid = v.grid();
    const int n = grid.n;
    const double det = g.reflect ? -1.0 : 1.0;
    const double c = std::cos(g.angle), s = std::sin(g.angle);

    VectorField out(grid);
    int q = 0;
    const bool exact = quarter_turns(g.angle, q);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double a, b; // v(g^{-1} x)
            if (exact) {
                int js = g.reflect ? (n - j) % n : j;
                auto [ri, rj] = rotate_index(q, i, js, n);
                a = v.v1(ri, rj);
                b = v.v2(ri, rj);
            } else {
                double x = grid.x(i), y = grid.x(j);
                double yy = g.reflect ? -y : y;
                double px = c * x + s * yy;
                double py = -s * x + c * yy;
                a = interp_bicubic(v.v1, px, py);
                b = interp_bicubic(v.v2, px, py);
            }
            // g w = S(R_angle w), then the det sign
            double ra = c * a - s * b;
            double rb = s * a + c * b;
            if (g.reflect) rb = -rb;
            out.v1(i, j) = det * ra;
            out.v2(i, j) = det * rb;
        }
    }
    return out;
}

RealField project_symmetric(const RealField& f, const SymmetryGroup& G) {
    auto list = G.averaging_list();
    const Grid& g = f.grid();
    RealField acc(g);
    for (const auto& el : list) {
        RealField t = act(el, f);
        auto& a = acc.values();
        const auto& tv = t.values();
        for (size_t i = 0; i < a.size(); ++i) a[i] += tv[i];
    }
    const double inv = 1.0 / static_cast<double>(list.size());
    for (auto& x : acc.values()) x *= inv;
    return acc;
}

double asymmetry(const RealField& f, const SymmetryGroup& G, double window_radius) {
    const Grid& g = f.grid();
    const double scale = std::max(f.max_abs(), DBL_EPSILON);
    const bool windowed = window_radius > 0.0;
    const double w2 = window_radius * window_radius;
    double worst = 0.0;
    for (const auto& gel : G.generators()) {
        RealField t = act(gel, f);
        double d = 0.0;
        for (int i = 0; i < g.n; ++i) {
            double x = g.x(i);
            for (int j = 0; j < g.n; ++j) {
                if (windowed && x * x + g.x(j) * g.x(j) > w2) continue;
                d = std::max(d, std::abs(f(i, j) - t(i, j)));
            }
        }
        worst = std::max(worst, d);
    }
    return worst / scale;
}

std::vector<std::array<double, 2>> mean_drift(const VectorField& v,
                                              const std::vector<double>& radii) {
    const Grid& g = v.grid();
    for (double r : radii)
        if (r > 0.9 * g.l)
            throw std::invalid_argument("mean_drift: radius exceeds 0.9*l");

    std::vector<std::array<double, 2>> out;
    out.reserve(radii.size());
    for (double r : radii) {
        const double r2 = r * r;
        double s1 = 0.0, s2 = 0.0;
        long count = 0;
        for (int i = 0; i < g.n; ++i) {
            double x = g.x(i);
            for (int j = 0; j < g.n; ++j) {
                double y = g.x(j);
                if (x * x + y * y <= r2) {
                    s1 += v.v1(i, j);
                    s2 += v.v2(i, j);
                    ++count;
                }
            }
        }
        out.push_back({s1 / count, s2 / count});
    }
    return out;
}

} // namespace sqg
