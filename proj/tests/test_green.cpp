#include <catch2/catch_amalgamated.hpp>

#include "nlsb/fit.hpp"
#include "nlsb/green.hpp"

using namespace nlsb;

namespace {
RadialGrid make_grid() { return RadialGrid::hybrid(1024, 2048, 3000.0); }
}

TEST_CASE("fundamental solutions solve L_pm") {
    auto g = make_grid();
    std::vector<double> tm(g.size()), tp(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        tm[i] = Theta_fs(Sign::Minus, g[i]);
        tp[i] = Theta_fs(Sign::Plus, g[i]);
    }
    auto rm = apply_Lpm_grid(Sign::Minus, g, tm);
    auto rp = apply_Lpm_grid(Sign::Plus, g, tp);
    // normalize by the size of the equation terms: near the 1/R pole of Theta
    // the absolute residual is roundoff-limited
    auto d2m = g.derivative(tm, 2);
    auto d2p = g.derivative(tp, 2);
    double em = 0, ep = 0;
    for (std::size_t i = 4; i + 4 < g.size(); ++i) {
        if (g[i] < 0.05) continue;
        if (g[i] > g.r_max() / 2) break;
        em = std::max(em, std::abs(rm[i]) / (1.0 + std::abs(d2m[i])));
        ep = std::max(ep, std::abs(rp[i]) / (1.0 + std::abs(d2p[i])));
    }
    CHECK(em < 1e-8);
    CHECK(ep < 1e-8);
}

TEST_CASE("Wronskian normalization R^2 w = -2") {
    auto g = make_grid();
    for (Sign s : {Sign::Minus, Sign::Plus}) {
        double dev = 0;
        for (double R : g.nodes()) {
            const double w = Phi_fs(s, R) * Theta_fs_prime(s, R) - Phi_fs_prime(s, R) * Theta_fs(s, R);
            dev = std::max(dev, std::abs(R * R * w + 2.0));
        }
        CHECK(dev < 1e-8);
    }
}

TEST_CASE("Theta asymptotics") {
    // Theta ~ const != 0 at infinity, ~ 1/R at zero
    CHECK(std::abs(Theta_fs(Sign::Minus, 1e5) + 2.0 / std::sqrt(3.0)) < 1e-4);
    CHECK(std::abs(Theta_fs(Sign::Plus, 1e5) - 4.0 * std::sqrt(3.0) / 3.0) < 1e-3);
    for (Sign s : {Sign::Minus, Sign::Plus})
        CHECK(Theta_fs(s, 1e-6) * 1e-6 == Catch::Approx(s == Sign::Minus ? 2.0 : 4.0).epsilon(1e-5));
}

TEST_CASE("Theta+ * W^-3 rational structure") {
    // R * (Theta+ W^-3) fits an even polynomial of degree 2 in R^2 exactly
    std::vector<double> xs;
    std::vector<cplx> data;
    for (double R = 0.5; R < 40.0; R += 0.7) {
        xs.push_back(R);
        const double q = Theta_fs(Sign::Plus, R) / std::pow(W(R), 3);
        data.push_back(R * q);
    }
    std::vector<std::function<cplx(double)>> basis = {
        [](double) { return cplx(1.0, 0.0); },
        [](double R) { return cplx(R * R, 0.0); },
        [](double R) { return cplx(R * R * R * R, 0.0); },
    };
    auto fit = least_squares_fit(xs, data, basis);
    CHECK(fit.residual < 1e-12);
    CHECK(std::abs(fit.coeffs[2]) > 1e-3); // top even coefficient nonzero
}

TEST_CASE("green operator basics") {
    auto g = make_grid();
    std::vector<cplx> zero(g.size(), 0.0);
    auto v0 = apply_green(Sign::Plus, g, zero);
    for (auto& z : v0) CHECK(std::abs(z) == 0.0);
}

TEST_CASE("manufactured solution recovery") {
    auto g = make_grid();
    // smooth rapidly decaying profile with u(0)=u'(0)=0: u = R^2 exp(-R^2/4)
    auto u = [](double R) { return R * R * std::exp(-R * R / 4.0); };
    auto up = [](double R) { return (2.0 * R - R * R * R / 2.0) * std::exp(-R * R / 4.0); };
    auto upp = [](double R) {
        return (2.0 - 2.5 * R * R + R * R * R * R / 4.0) * std::exp(-R * R / 4.0);
    };
    for (Sign s : {Sign::Plus, Sign::Minus}) {
        std::vector<cplx> f(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) f[i] = apply_Lpm(s, g[i], u(g[i]), up(g[i]), upp(g[i]));
        auto v = apply_green(s, g, f);
        double relerr = 0;
        double umax = 0;
        for (std::size_t i = 0; i < g.size(); ++i) umax = std::max(umax, std::abs(u(g[i])));
        for (std::size_t i = 0; i < g.size(); ++i)
            relerr = std::max(relerr, std::abs(v[i] - u(g[i])) / umax);
        CHECK(relerr < 1e-6);
    }
}

TEST_CASE("linearity") {
    auto g = make_grid();
    std::vector<cplx> f1(g.size()), f2(g.size()), fs(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        f1[i] = W(g[i]);
        f2[i] = cplx(0.0, 1.0) * W1(g[i]);
        fs[i] = f1[i] + f2[i];
    }
    auto a = apply_green(Sign::Minus, g, f1);
    auto b = apply_green(Sign::Minus, g, f2);
    auto c = apply_green(Sign::Minus, g, fs);
    double dev = 0, scale = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        dev = std::max(dev, std::abs(c[i] - a[i] - b[i]));
        scale = std::max(scale, std::abs(c[i]));
    }
    CHECK(dev / scale < 1e-12);
}

TEST_CASE("source W grows linearly at large R") {
    auto g = make_grid();
    std::vector<cplx> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = W(g[i]);
    auto v = apply_green(Sign::Minus, g, f);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] > 0.2 * g.r_max() && g[i] < 0.8 * g.r_max()) {
            xs.push_back(g[i]);
            ys.push_back(std::abs(v[i]));
        }
    }
    auto fit = fit_exponent(xs, ys);
    CHECK(std::abs(fit.exponent - 1.0) < 0.05);
}
