#include "sqglab/datasets.hpp"

#include <random>

namespace sqg {

namespace {

// C-infinity bump: exp(1 - 1/(1 - u^2)) for |u| < 1, else 0; peak value 1.
double smooth_bump(double u) {
    double u2 = u * u;
    if (u2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u2));
}

} // namespace

RealField compact_bump(const Grid& g, double cx, double cy, double radius, double amplitude) {
    return RealField::from_function(g, [=](double x, double y) {
        return amplitude * smooth_bump(std::hypot(x - cx, y - cy) / radius);
    });
}

RealField ring_bump(const Grid& g, double r0, double width, double amplitude) {
    // Gaussian crest at r0 with a narrower Gaussian moat; Gaussian radial
    // shape keeps the spectrum resolved to machine precision at desk grids,
    // and the moat coefficient removes the total mass int w(r) r dr
    auto crest = [=](double r) { return std::exp(-((r - r0) / width) * ((r - r0) / width)); };
    auto moat = [=](double r) {
        double u = (r - r0) / (0.55 * width);
        return std::exp(-u * u);
    };

    double m_crest = 0.0, m_moat = 0.0;
    const int nq = 8000;
    const double rmax = r0 + 10.0 * width;
    for (int i = 0; i < nq; ++i) {
        double r = (i + 0.5) * rmax / nq;
        m_crest += crest(r) * r;
        m_moat += moat(r) * r;
    }
    const double lam = m_crest / m_moat;

    return RealField::from_function(g, [=](double x, double y) {
        double r = std::hypot(x, y);
        return amplitude * (crest(r) - lam * moat(r));
    });
}

RealField random_symmetric_field(const Grid& g, const SymmetryGroup& G,
                                 std::uint64_t seed, double amplitude,
                                 double support_radius) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uamp(0.3, 1.0);
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> usig(0.30, 0.42);

    // Gaussian envelopes: (r/sigma)^(mk) exp(-(r/sigma)^2) harmonics are
    // entire in (x, y), so all samples are exact values of a G-symmetric
    // smooth function and the spectrum is resolved at desk grids
    struct Term {
        int angular;
        double amp, phase, sigma;
    };
    std::vector<Term> terms;
    double radial_amp = 0.0, radial_sigma = support_radius * usig(rng);

    if (G.kind == SymmetryGroup::Kind::radial) {
        radial_amp = uamp(rng);
        double a2 = uamp(rng), s2 = 0.5 * radial_sigma;
        RealField out = RealField::from_function(g, [&](double x, double y) {
            double r2 = x * x + y * y;
            return radial_amp * std::exp(-r2 / (radial_sigma * radial_sigma)) -
                   a2 * std::exp(-r2 / (s2 * s2));
        });
        double m = out.max_abs();
        if (m > 0.0)
            for (auto& v : out.values()) v *= amplitude / m;
        return out;
    }

    const bool reflect = G.has_reflection();
    // cap envelopes so values have decayed below ~1e-9 by radius 0.586*l:
    // beyond that, rotated sample points wrap through the periodic boundary
    // into live regions and the sampled field stops being G-symmetric
    const double sigma_cap = 0.106 * g.l;
    for (int k = 1; k <= 2; ++k) {
        Term t;
        t.angular = G.m * k;
        t.amp = uamp(rng) / (k * k);
        t.phase = reflect ? 0.0 : uphase(rng); // sine terms are reflection-odd
        t.sigma = std::min(support_radius * usig(rng), sigma_cap);
        terms.push_back(t);
    }
    if (!reflect) radial_amp = 0.5 * uamp(rng);
    radial_sigma = std::min(radial_sigma, 2.0 * sigma_cap);

    RealField out = RealField::from_function(g, [&](double x, double y) {
        double r = std::hypot(x, y);
        double phi = std::atan2(y, x);
        double v = radial_amp * std::exp(-(r / radial_sigma) * (r / radial_sigma));
        for (const auto& t : terms) {
            double u = r / t.sigma;
            v += t.amp * std::pow(u, t.angular) * std::exp(-u * u) *
                 std::sin(t.angular * phi + t.phase);
        }
        return v;
    });
    double m = out.max_abs();
    if (m > 0.0)
        for (auto& v : out.values()) v *= amplitude / m;
    return out;
}

RealField random_smooth_field(const Grid& g, std::uint64_t seed, double amplitude,
                              int kmax) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uamp(-1.0, 1.0);
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * M_PI);

    struct Mode {
        double k1, k2, a, ph;
    };
    std::vector<Mode> modes;
    for (int k1 = 0; k1 <= kmax; ++k1)
        for (int k2 = -kmax; k2 <= kmax; ++k2) {
            if (k1 == 0 && k2 <= 0) continue;
            double decay = 1.0 / (1.0 + k1 * k1 + k2 * k2);
            modes.push_back({M_PI * k1 / g.l, M_PI * k2 / g.l, uamp(rng) * decay, uphase(rng)});
        }

    RealField out = RealField::from_function(g, [&](double x, double y) {
        double v = 0.0;
        for (const auto& m : modes) v += m.a * std::cos(m.k1 * x + m.k2 * y + m.ph);
        return v;
    });
    double m = out.max_abs();
    if (m > 0.0)
        for (auto& v : out.values()) v *= amplitude / m;
    return out;
}

RealField gauge_check_field(const Grid& g, const SymmetryGroup& G, std::uint64_t seed) {
    if (G.kind == SymmetryGroup::Kind::radial || G.m == 2 || G.m % 4 == 0)
        return random_symmetric_field(g, G, seed, 1.0, 0.35 * g.l);

    // Odd m: the lattice of periodic images cancels every multipole of the
    // image velocity except the one fed by int w(r) r^(m+1) dr; build the
    // radial weight from two Gaussians so that moment vanishes. Gaussian
    // envelopes keep the sampled spectrum resolved, so dealiasing does not
    // disturb the cancellation, and the decay puts the drift-ladder balls
    // effectively outside the data.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * M_PI);
    const int m = G.m;
    const double phase = G.has_reflection() ? 0.0 : uphase(rng);
    const double R1 = 0.0667 * g.l, R2 = 0.0417 * g.l;

    auto w1 = [&](double r) { return std::pow(r / R1, m) * std::exp(-(r / R1) * (r / R1)); };
    auto w2 = [&](double r) { return std::pow(r / R2, m) * std::exp(-(r / R2) * (r / R2)); };

    double m1 = 0.0, m2 = 0.0;
    const int nq = 20000;
    const double rq = 10.0 * R1;
    for (int i = 0; i < nq; ++i) {
        double r = (i + 0.5) * rq / nq;
        double wgt = std::pow(r, m + 1) * (rq / nq);
        m1 += w1(r) * wgt;
        m2 += w2(r) * wgt;
    }
    const double beta = m1 / m2;

    return RealField::from_function(g, [&](double x, double y) {
        double r = std::hypot(x, y);
        double phi = std::atan2(y, x);
        return (w1(r) - beta * w2(r)) * std::sin(m * phi + phase);
    });
}

HomogeneousProfile random_symmetric_profile(const SymmetryGroup& G, std::uint64_t seed,
                                            double amplitude, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uamp(0.2, 1.0);
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * M_PI);

    const bool reflect = G.has_reflection();
    const int m = G.kind == SymmetryGroup::Kind::radial ? 0 : G.m;

    std::vector<std::pair<double, double>> terms; // (amp, phase) for k = 1..3
    for (int k = 1; k <= 3; ++k)
        terms.emplace_back(uamp(rng) / k, reflect ? 0.0 : uphase(rng));

    std::vector<double> s(count);
    for (int i = 0; i < count; ++i) {
        double phi = 2.0 * M_PI * i / count;
        double v = 0.0;
        if (m == 0) {
            v = 1.0; // radial profile: constant on the circle
        } else {
            for (int k = 1; k <= 3; ++k)
                v += terms[k - 1].first * std::sin(m * k * phi + terms[k - 1].second);
        }
        s[i] = v;
    }
    double mx = 0.0;
    for (double v : s) mx = std::max(mx, std::abs(v));
    if (mx > 0.0)
        for (double& v : s) v *= amplitude / mx;
    return HomogeneousProfile(std::move(s));
}

} // namespace sqg
