#include <catch2/catch_amalgamated.hpp>

#include "nlsb/grid.hpp"
#include "nlsb/ground_state.hpp"

using namespace nlsb;

TEST_CASE("ground state closed form") {
    CHECK(W(0.0) == 1.0);
    CHECK(W(std::sqrt(3.0)) == Catch::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    // R*W -> sqrt(3): fitted limit at a few large radii
    for (double R : {1e3, 1e4, 1e5})
        CHECK(R * W(R) == Catch::Approx(std::sqrt(3.0)).epsilon(1e-5));
    CHECK_THROWS_AS(W(std::nan("")), std::domain_error);
}

TEST_CASE("W1 closed form") {
    CHECK(W1(0.0) == Catch::Approx(0.5).margin(1e-15));
    CHECK(std::abs(W1(std::sqrt(3.0))) < 1e-15);
    const double ref = 0.5 * std::sqrt(0.75) - std::pow(0.75, 1.5) / 3.0;
    CHECK(W1(1.0) == Catch::Approx(ref).epsilon(1e-12));
}

TEST_CASE("profile residuals on grid") {
    auto g = RadialGrid::hybrid(1024, 2048, 3000.0);
    double res_max = 0.0, lm = 0.0, lp = 0.0, ratio_dev = 0.0;
    for (double R : g.nodes()) {
        const double w = W(R);
        const double lap = W_second(R) + 2.0 / R * W_prime(R);
        res_max = std::max(res_max, std::abs(lap + w * w * w * w * w));
        if (R <= g.r_max() / 2) {
            lm = std::max(lm, std::abs(Lminus_W(R)));
            lp = std::max(lp, std::abs(Lplus_W1(R)));
        }
        ratio_dev = std::max(ratio_dev, std::abs(V2(R) / V1(R) - 2.0 / 3.0));
    }
    CHECK(res_max < 1e-12);
    CHECK(lm < 1e-10);
    CHECK(lp < 1e-10);
    CHECK(ratio_dev < 1e-15);
}

TEST_CASE("weighted norms") {
    auto g = RadialGrid::hybrid(1024, 2048, 3000.0);
    std::vector<cplx> zero(g.size(), 0.0), wvals(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) wvals[i] = W(g[i]);

    WeightedNormSpec l2;
    CHECK(weighted_norm(g, zero, l2) == 0.0);

    WeightedNormSpec linf;
    linf.kind = NormKind::Linf;
    CHECK(weighted_norm(g, wvals, linf) == Catch::Approx(W(g[0])).epsilon(1e-12));

    // grad-W energy: 4*pi*int |W'|^2 R^2 dR, derived by quadrature refined to
    // 3 stable digits; closed-form value 3*sqrt(3)*pi^2/4
    double prev = 0.0;
    double val = 0.0;
    for (std::size_t n : {512u, 1024u, 2048u}) {
        auto gg = RadialGrid::hybrid(n, 2 * n, 3000.0);
        std::vector<double> integ(gg.size());
        for (std::size_t i = 0; i < gg.size(); ++i) {
            const double d = W_prime(gg[i]);
            integ[i] = d * d * gg[i] * gg[i];
        }
        prev = val;
        val = 4.0 * M_PI * gg.integral(integ);
    }
    CHECK(std::abs(val - prev) < 1e-3 * std::abs(val));
    CHECK(val == Catch::Approx(3.0 * std::sqrt(3.0) * M_PI * M_PI / 4.0).epsilon(1e-3));

    WeightedNormSpec bad;
    bad.has_window = true;
    bad.window_lo = 1.0;
    bad.window_hi = 1e9;
    CHECK_THROWS(weighted_norm(g, wvals, bad));
}

TEST_CASE("stencil derivative accuracy") {
    auto g = RadialGrid::hybrid(1024, 2048, 3000.0);
    std::vector<double> f(g.size()), d1ref(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        f[i] = W(g[i]);
        d1ref[i] = W_prime(g[i]);
    }
    auto d1 = g.derivative(f, 1);
    double err = 0;
    for (std::size_t i = 0; i < g.size(); ++i) err = std::max(err, std::abs(d1[i] - d1ref[i]));
    CHECK(err < 1e-9);
}
