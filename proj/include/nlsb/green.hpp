#pragma once

// Fundamental systems of L+/L- and the variation-of-constants operator
//   v(R) = 1/2 \int_0^R s^2 [Theta(R) Phi(s) - Theta(s) Phi(R)] f(s) ds,
// which inverts L_pm exactly: the second solutions are normalized so that
// R^2 (Phi Theta' - Phi' Theta) = -2 on the nose.
//
//   Phi-   = W,                    Theta- = W * (2/R - 2R/3)
//   Phi+   = W1,                   Theta+ = W^3 * (4R^3/9 - 8R + 4/R)
//
// Theta+ has the rational primitive through the zero of W1 at sqrt(3); naive
// quadrature of R^{-2} W1^{-2} across that point is the classic failure mode.

#include "nlsb/grid.hpp"
#include "nlsb/ground_state.hpp"

namespace nlsb {

enum class Sign { Plus, Minus };

inline double Phi_fs(Sign s, double R) { return s == Sign::Plus ? W1(R) : W(R); }

inline double Phi_fs_prime(Sign s, double R) { return s == Sign::Plus ? W1_prime(R) : W_prime(R); }

inline double Theta_fs(Sign s, double R) {
    const double w = W(R);
    if (s == Sign::Minus) return w * (2.0 / R - 2.0 * R / 3.0);
    return w * w * w * (4.0 * R * R * R / 9.0 - 8.0 * R + 4.0 / R);
}

inline double Theta_fs_prime(Sign s, double R) {
    const double w = W(R);
    if (s == Sign::Minus)
        return W_prime(R) * (2.0 / R - 2.0 * R / 3.0) + w * (-2.0 / (R * R) - 2.0 / 3.0);
    const double q = 4.0 * R * R * R / 9.0 - 8.0 * R + 4.0 / R;
    const double qp = 4.0 * R * R / 3.0 - 8.0 - 4.0 / (R * R);
    return 3.0 * w * w * W_prime(R) * q + w * w * w * qp;
}

// analytic application of L_pm to closed-form data (f, f', f'')
inline double apply_Lpm(Sign s, double R, double f, double fp, double fpp) {
    const double w = W(R);
    const double w4 = w * w * w * w;
    const double c = (s == Sign::Plus) ? 5.0 : 1.0;
    return -fpp - 2.0 / R * fp - c * w4 * f;
}

// L_pm applied to grid data by stencils
template <class T>
std::vector<T> apply_Lpm_grid(Sign s, const RadialGrid& g, const std::vector<T>& f) {
    const auto d1 = g.derivative(f, 1);
    const auto d2 = g.derivative(f, 2);
    std::vector<T> out(f.size());
    const double c = (s == Sign::Plus) ? 5.0 : 1.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double R = g[i];
        const double w = W(R);
        out[i] = -d2[i] - 2.0 / R * d1[i] - c * w * w * w * w * f[i];
    }
    return out;
}

// v = L_pm^{-1} f with v(0) = v'(0) = 0; requires f integrable against s^2 * Theta
// near 0, i.e. f = O(1/s) or better.
template <class T>
std::vector<T> apply_green(Sign s, const RadialGrid& g, const std::vector<T>& f) {
    const auto& r = g.nodes();
    const std::size_t n = r.size();
    for (std::size_t i = 0; i < std::min<std::size_t>(n, 4); ++i) {
        if (std::abs(f[i]) * r[i] > 1e8)
            throw std::invalid_argument("apply_green: source not integrable near 0");
    }
    std::vector<T> i1(n), i2(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s2 = r[i] * r[i];
        i1[i] = s2 * Phi_fs(s, r[i]) * f[i];
        i2[i] = s2 * Theta_fs(s, r[i]) * f[i];
    }
    const auto I1 = g.cumulative_integral(i1);
    const auto I2 = g.cumulative_integral(i2);
    std::vector<T> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = 0.5 * (Theta_fs(s, r[i]) * I1[i] - Phi_fs(s, r[i]) * I2[i]);
    return v;
}

} // namespace nlsb
