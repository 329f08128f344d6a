#pragma once

// Radial grids, finite-difference stencils on nonuniform nodes (Fornberg
// weights) and deterministic quadrature for weighted Sobolev-type norms.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlsb {

using cplx = std::complex<double>;

enum class SpacingLaw { Uniform, Log, Hybrid };

// Fornberg's algorithm: weights of the m-th derivative at point x0 from
// function values at nodes xs[0..n-1].
inline std::vector<double> fd_weights(double x0, const std::vector<double>& xs, int m) {
    const int n = static_cast<int>(xs.size());
    assert(m < n);
    std::vector<std::vector<double>> c(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(m + 1), 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[static_cast<size_t>(i)] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[static_cast<size_t>(i)] - xs[static_cast<size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[static_cast<size_t>(i)][static_cast<size_t>(k)] =
                        c1 * (k * c[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)] -
                              c5 * c[static_cast<size_t>(i - 1)][static_cast<size_t>(k)]) / c2;
                c[static_cast<size_t>(i)][0] = -c1 * c5 * c[static_cast<size_t>(i - 1)][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[static_cast<size_t>(j)][static_cast<size_t>(k)] =
                    (c4 * c[static_cast<size_t>(j)][static_cast<size_t>(k)] -
                     k * c[static_cast<size_t>(j)][static_cast<size_t>(k - 1)]) / c3;
            c[static_cast<size_t>(j)][0] = c4 * c[static_cast<size_t>(j)][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = c[static_cast<size_t>(i)][static_cast<size_t>(m)];
    return w;
}

class RadialGrid {
public:
    // Hybrid grid: n_uni uniform nodes on (0,1], n_log log-spaced on (1,R_max].
    static RadialGrid hybrid(std::size_t n_uni, std::size_t n_log, double r_max) {
        RadialGrid g;
        g.spacing_ = SpacingLaw::Hybrid;
        g.r_max_ = r_max;
        g.nodes_.reserve(n_uni + n_log);
        for (std::size_t i = 1; i <= n_uni; ++i)
            g.nodes_.push_back(static_cast<double>(i) / static_cast<double>(n_uni));
        const double ratio = std::log(r_max);
        for (std::size_t i = 1; i <= n_log; ++i)
            g.nodes_.push_back(std::exp(ratio * static_cast<double>(i) / static_cast<double>(n_log)));
        g.validate();
        return g;
    }

    static RadialGrid uniform(std::size_t n, double a, double b) {
        RadialGrid g;
        g.spacing_ = SpacingLaw::Uniform;
        g.r_max_ = b;
        g.nodes_.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            g.nodes_.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
        if (g.nodes_.front() <= 0.0) g.nodes_.front() = 0.5 * (a + g.nodes_[1]) * 1e-3 + a;
        g.validate();
        return g;
    }

    static RadialGrid logspace(std::size_t n, double a, double b) {
        RadialGrid g;
        g.spacing_ = SpacingLaw::Log;
        g.r_max_ = b;
        g.nodes_.reserve(n);
        const double la = std::log(a), lb = std::log(b);
        for (std::size_t i = 0; i < n; ++i)
            g.nodes_.push_back(std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(n - 1)));
        g.validate();
        return g;
    }

    const std::vector<double>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    double r_max() const { return r_max_; }
    double operator[](std::size_t i) const { return nodes_[i]; }

    // m-th derivative of grid data by sliding stencils of `width` nodes.
    template <class T>
    std::vector<T> derivative(const std::vector<T>& f, int m = 1, int width = 7) const {
        assert(f.size() == nodes_.size());
        const int n = static_cast<int>(nodes_.size());
        if (width > n) width = n;
        std::vector<T> out(f.size());
        for (int i = 0; i < n; ++i) {
            int lo = std::max(0, std::min(i - width / 2, n - width));
            std::vector<double> xs(nodes_.begin() + lo, nodes_.begin() + lo + width);
            const std::vector<double> w = fd_weights(nodes_[static_cast<size_t>(i)], xs, m);
            T acc{};
            for (int k = 0; k < width; ++k) acc += w[static_cast<size_t>(k)] * f[static_cast<size_t>(lo + k)];
            out[static_cast<size_t>(i)] = acc;
        }
        return out;
    }

    // \int_{r0}^{r} f ds cumulative, local cubic Lagrange segments (4th order),
    // deterministic left-to-right summation. Assumes f(r<nodes[0]) ~ linear to 0
    // unless from_zero is false.
    template <class T>
    std::vector<T> cumulative_integral(const std::vector<T>& f, bool from_zero = true) const {
        assert(f.size() == nodes_.size());
        const int n = static_cast<int>(nodes_.size());
        std::vector<T> acc(f.size());
        T run{};
        if (from_zero) {
            // first segment [0, r_0]: estimate the local power law f ~ c r^p
            double p = 1.0;
            const double a0 = std::abs(f[0]), a1 = std::abs(f[1]);
            if (a0 > 0 && a1 > 0) {
                p = std::log(a1 / a0) / std::log(nodes_[1] / nodes_[0]);
                p = std::min(6.0, std::max(0.0, p));
            }
            run = nodes_[0] / (p + 1.0) * f[0];
        }
        acc[0] = run;
        for (int i = 0; i + 1 < n; ++i) {
            int lo = std::max(0, std::min(i - 1, n - 4));
            std::vector<double> xs(nodes_.begin() + lo, nodes_.begin() + lo + 4);
            // integrate the cubic interpolant over [x_i, x_{i+1}] exactly
            T seg{};
            for (int k = 0; k < 4; ++k) {
                seg += integrate_lagrange_basis(xs, k, nodes_[static_cast<size_t>(i)], nodes_[static_cast<size_t>(i + 1)]) *
                       f[static_cast<size_t>(lo + k)];
            }
            run += seg;
            acc[static_cast<size_t>(i + 1)] = run;
        }
        return acc;
    }

    template <class T>
    T integral(const std::vector<T>& f, bool from_zero = true) const {
        return cumulative_integral(f, from_zero).back();
    }

private:
    static double integrate_lagrange_basis(const std::vector<double>& xs, int k, double a, double b) {
        // \int_a^b prod_{j!=k} (x-x_j)/(x_k-x_j) dx via 3-point Gauss-Legendre (exact for cubics)
        static const double gx[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
        static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
        double s = 0.0;
        for (int q = 0; q < 3; ++q) {
            const double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[q];
            double l = 1.0;
            for (int j = 0; j < 4; ++j)
                if (j != k) l *= (x - xs[static_cast<size_t>(j)]) / (xs[static_cast<size_t>(k)] - xs[static_cast<size_t>(j)]);
            s += gw[q] * l;
        }
        return 0.5 * (b - a) * s;
    }

    void validate() const {
        if (nodes_.size() < 64) throw std::invalid_argument("RadialGrid: need at least 64 nodes");
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (!(nodes_[i] > 0.0) || !std::isfinite(nodes_[i]))
                throw std::invalid_argument("RadialGrid: nodes must be positive finite");
            if (i > 0 && nodes_[i] <= nodes_[i - 1])
                throw std::invalid_argument("RadialGrid: nodes must be strictly increasing");
        }
    }

    std::vector<double> nodes_;
    SpacingLaw spacing_ = SpacingLaw::Hybrid;
    double r_max_ = 0.0;
};

enum class NormKind { L2Radial, Linf };

struct WeightedNormSpec {
    int deriv_order = 0;   // i
    int weight_power = 0;  // j, norm of r^{-j} d^i f
    NormKind kind = NormKind::L2Radial;
    bool has_window = false;
    double window_lo = 0.0, window_hi = 0.0;
};

// || r^{-j} d^i f || in L2(r^2 dr) or Linf over the window.
template <class T>
double weighted_norm(const RadialGrid& g, const std::vector<T>& f, const WeightedNormSpec& spec) {
    if (spec.has_window && (spec.window_lo > spec.window_hi || spec.window_hi > g.r_max() * (1 + 1e-12)))
        throw std::invalid_argument("weighted_norm: window outside grid");
    std::vector<T> d = (spec.deriv_order > 0) ? g.derivative(f, spec.deriv_order) : f;
    const auto& r = g.nodes();
    auto inside = [&](double x) {
        return !spec.has_window || (x >= spec.window_lo && x <= spec.window_hi);
    };
    if (spec.kind == NormKind::Linf) {
        double m = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i)
            if (inside(r[i])) m = std::max(m, std::abs(d[i]) * std::pow(r[i], -spec.weight_power));
        return m;
    }
    std::vector<double> integrand(r.size(), 0.0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!inside(r[i])) continue;
        const double v = std::abs(d[i]) * std::pow(r[i], -spec.weight_power);
        integrand[i] = v * v * r[i] * r[i];
    }
    const double s = g.integral(integrand, !spec.has_window || spec.window_lo <= g.nodes().front());
    return std::sqrt(std::max(0.0, s));
}

} // namespace nlsb
