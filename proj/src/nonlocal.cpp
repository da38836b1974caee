#include "sqglab/nonlocal.hpp"

#include <cmath>
#include <stdexcept>

namespace sqg {

namespace {
// c2 of the kernel K(y) = c2 y/|y|^3. R = grad (-Delta)^{-1/2} convolves
// against grad(1/(2 pi |x|)) = -x/(2 pi |x|^3), so c2 is negative; the value
// is pinned by cross-validation against the Fourier symbol (see tests).
constexpr double kRieszConstant = -1.0 / (2.0 * M_PI);
}

SpectralField fractional_laplacian(const SpectralField& F, double s) {
    if (!(s > 0.0 && s <= 2.0))
        throw std::invalid_argument("fractional_laplacian: s must lie in (0, 2]");
    const Grid& g = F.grid();
    SpectralField out(g);
    for (int i = 0; i < g.n; ++i) {
        double k1 = g.kappa(i);
        for (int j = 0; j < g.n; ++j) {
            double k2 = g.kappa(j);
            double mag = std::hypot(k1, k2);
            out.at(i, j) = (mag == 0.0) ? 0.0 : std::pow(mag, s) * F.at(i, j);
        }
    }
    return out;
}

void riesz_perp_spectral(const SpectralField& F, SpectralField& V1, SpectralField& V2) {
    const Grid& g = F.grid();
    const int nyq = g.n / 2;
    V1 = SpectralField(g);
    V2 = SpectralField(g);
    for (int i = 0; i < g.n; ++i) {
        double k1 = g.kappa(i);
        for (int j = 0; j < g.n; ++j) {
            double k2 = g.kappa(j);
            double mag = std::hypot(k1, k2);
            if (mag == 0.0 || i == nyq || j == nyq) continue; // gauge + odd-multiplier Nyquist
            std::complex<double> z = F.at(i, j);
            V1.at(i, j) = std::complex<double>(0.0, -k2 / mag) * z;
            V2.at(i, j) = std::complex<double>(0.0, k1 / mag) * z;
        }
    }
}

VectorField riesz_perp(const SpectralField& F) {
    SpectralField V1, V2;
    riesz_perp_spectral(F, V1, V2);
    VectorField out;
    out.v1 = to_real(V1);
    out.v2 = to_real(V2);
    return out;
}

SpectralField poisson_semigroup(const SpectralField& F, double t) {
    if (t < 0.0) throw std::invalid_argument("poisson_semigroup: t must be >= 0");
    const Grid& g = F.grid();
    SpectralField out(g);
    for (int i = 0; i < g.n; ++i) {
        double k1 = g.kappa(i);
        for (int j = 0; j < g.n; ++j) {
            double k2 = g.kappa(j);
            out.at(i, j) = std::exp(-t * std::hypot(k1, k2)) * F.at(i, j);
        }
    }
    return out;
}

namespace {

// Quadrature of
//   Rf(x) = pv int_{|y-x|<=rs} K(x-y) f dy
//         - int_{|y|>1, |y-x|<=rs} K(0,y) f dy
//         + int_{rs<|y-x|<=2^J} [K(x-y) - K(0,y)] f dy
// on polar meshes centered at x. The singular piece is handled by angular
// pairing (phi, phi+pi): the antisymmetric leading term of K cancels exactly
// in each pair and the paired integrand has a finite r -> 0 limit. Keeping
// the counterterm on the same truncation radius preserves the O(|x|/|y|^2)
// decay of the kernel difference, so the neglected tail is O(|x| 2^-J).
std::array<double, 2> modified_riesz_impl(const std::function<double(double, double)>& f,
                                          double x1, double x2,
                                          const ModifiedRieszConfig& cfg) {
    const double c2 = kRieszConstant;
    const double xnorm = std::hypot(x1, x2);
    const double r_split = 2.0 * (1.0 + xnorm);
    const double r_max = std::ldexp(1.0, cfg.truncation_exponent);
    if (r_split >= r_max)
        throw std::invalid_argument("modified_riesz: truncation radius too small for |x|");

    const int nphi = cfg.angular_points;
    if (nphi % 2 != 0) throw std::invalid_argument("modified_riesz: angular_points must be even");
    const double dphi = 2.0 * M_PI / nphi;
    const double h_near = cfg.near_step * (1.0 + xnorm);

    double acc1 = 0.0, acc2 = 0.0;

    // near region: paired singular kernel
    const int ncell = std::max(8, static_cast<int>(std::ceil(r_split / h_near)));
    const double h = r_split / ncell;
    for (int a = 0; a < nphi / 2; ++a) {
        const double phi = dphi * (a + 0.5);
        const double e1 = std::cos(phi), e2 = std::sin(phi);
        double s = 0.0;
        for (int m = 0; m < ncell; ++m) {
            double r = (m + 0.5) * h;
            double d = f(x1 + r * e1, x2 + r * e2) - f(x1 - r * e1, x2 - r * e2);
            s += d / r;
        }
        const double w = -c2 * h * dphi;
        acc1 += w * e1 * s;
        acc2 += w * e2 * s;
    }

    // near counterterm: -K(0,y) over {|y| > 1} with radial cells split at the
    // exact unit-circle crossings, so the indicator never cuts a cell
    for (int a = 0; a < nphi; ++a) {
        const double phi = dphi * (a + 0.5);
        const double e1 = std::cos(phi), e2 = std::sin(phi);
        const double b = x1 * e1 + x2 * e2;
        const double disc = b * b + 1.0 - xnorm * xnorm;

        // sub-intervals of (0, r_split] on which |x + r e| > 1
        double segs[2][2];
        int nseg = 0;
        if (xnorm < 1.0) {
            double rp = -b + std::sqrt(disc); // single positive crossing
            if (rp < r_split) { segs[nseg][0] = rp; segs[nseg][1] = r_split; ++nseg; }
        } else if (disc > 0.0) {
            double rm = -b - std::sqrt(disc), rp = -b + std::sqrt(disc);
            if (rm > 0.0) {
                segs[nseg][0] = 0.0; segs[nseg][1] = std::min(rm, r_split); ++nseg;
                if (rp < r_split) { segs[nseg][0] = rp; segs[nseg][1] = r_split; ++nseg; }
            } else {
                segs[nseg][0] = std::max(rp, 0.0); segs[nseg][1] = r_split;
                if (segs[nseg][0] < segs[nseg][1]) ++nseg;
            }
        } else {
            segs[nseg][0] = 0.0; segs[nseg][1] = r_split; ++nseg;
        }

        for (int si = 0; si < nseg; ++si) {
            double lo = segs[si][0], hi = segs[si][1];
            if (hi <= lo) continue;
            int cells = std::max(4, static_cast<int>(std::ceil((hi - lo) / h_near)));
            double hh = (hi - lo) / cells;
            for (int m = 0; m < cells; ++m) {
                double r = lo + (m + 0.5) * hh;
                double y1 = x1 + r * e1, y2 = x2 + r * e2;
                double yn = std::hypot(y1, y2);
                double fac = c2 * f(y1, y2) * r / (yn * yn * yn) * hh * dphi;
                acc1 += fac * y1;
                acc2 += fac * y2;
            }
        }
    }

    // far region: the combined difference kernel on a geometric radial mesh
    const double q = cfg.geometric_ratio;
    for (int a = 0; a < nphi; ++a) {
        const double phi = dphi * (a + 0.5);
        const double e1 = std::cos(phi), e2 = std::sin(phi);
        double r0 = r_split;
        while (r0 < r_max) {
            double r1 = std::min(r0 * q, r_max);
            double r = std::sqrt(r0 * r1);
            double y1 = x1 + r * e1, y2 = x2 + r * e2;
            double yn = std::hypot(y1, y2);
            double fv = f(y1, y2);
            double w = (r1 - r0) * dphi * c2 * fv;
            acc1 += w * (-e1 / r + y1 * r / (yn * yn * yn));
            acc2 += w * (-e2 / r + y2 * r / (yn * yn * yn));
            r0 = r1;
        }
    }

    return {acc1, acc2};
}

} // namespace

std::array<double, 2> modified_riesz(const std::function<double(double, double)>& f,
                                     double x1, double x2,
                                     const ModifiedRieszConfig& cfg) {
    return modified_riesz_impl(f, x1, x2, cfg);
}

std::array<double, 2> modified_riesz(const HomogeneousProfile& f,
                                     double x1, double x2,
                                     const ModifiedRieszConfig& cfg) {
    auto fn = [&f](double a, double b) {
        return (a == 0.0 && b == 0.0) ? 0.0 : f.eval(a, b);
    };
    return modified_riesz_impl(fn, x1, x2, cfg);
}

std::array<HomogeneousProfile, 2> modified_riesz_profile(const HomogeneousProfile& f,
                                                         int eval_count,
                                                         double radius,
                                                         const ModifiedRieszConfig& cfg) {
    std::vector<double> r1(eval_count), r2(eval_count);
    for (int k = 0; k < eval_count; ++k) {
        double phi = 2.0 * M_PI * k / eval_count;
        auto v = modified_riesz(f, radius * std::cos(phi), radius * std::sin(phi), cfg);
        r1[k] = v[0];
        r2[k] = v[1];
    }
    return {HomogeneousProfile(std::move(r1)), HomogeneousProfile(std::move(r2))};
}

DyadicDecomposition dyadic_blocks(const RealField& f, int J) {
    if (J < 1) throw std::invalid_argument("dyadic_blocks: J must be >= 1");
    const Grid& g = f.grid();

    DyadicDecomposition out;
    out.core = RealField(g);
    for (int j = 2; j <= J; ++j) out.blocks.emplace_back(j, RealField(g));

    for (int i = 0; i < g.n; ++i) {
        double x = g.x(i);
        for (int jj = 0; jj < g.n; ++jj) {
            double r = std::hypot(x, g.x(jj));
            if (r <= 2.0) {
                out.core(i, jj) = f(i, jj);
                continue;
            }
            for (auto& [j, block] : out.blocks) {
                if (r <= std::ldexp(1.0, j) && r > std::ldexp(1.0, j - 1)) {
                    block(i, jj) = f(i, jj);
                    break;
                }
            }
        }
    }
    return out;
}

RealField ju_gap(const RealField& theta_in, double q) {
    if (q < 2.0) throw std::invalid_argument("ju_gap: q must be >= 2");
    const Grid& g = theta_in.grid();

    // work on the dealiased representation (the solver state) so both sides
    // of the inequality see the same band-limited field
    SpectralField Th = to_spectral(theta_in);
    dealias_inplace(Th);
    RealField theta = to_real(Th);
    RealField Ltheta = to_real(fractional_laplacian(Th, 1.0));

    RealField w(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            w(i, j) = std::pow(std::abs(theta(i, j)), q / 2.0);
    SpectralField Wh = to_spectral(w);
    dealias_inplace(Wh);
    RealField wf = to_real(Wh);
    RealField Lw = to_real(fractional_laplacian(Wh, 1.0));

    RealField gap(g);
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) {
            double th = theta(i, j);
            double lhs = q * std::pow(std::abs(th), q - 2.0) * th * Ltheta(i, j);
            double rhs = 2.0 * wf(i, j) * Lw(i, j);
            gap(i, j) = lhs - rhs;
        }
    }
    return gap;
}

} // namespace sqg
