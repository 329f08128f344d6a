#pragma once

// Adaptive Dormand-Prince 5(4) integration for small real/complex systems.
// PI step control, dense node output by exact step landing. Throws on step
// collapse with diagnostics.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlsb {

template <class State>
struct OdeResult {
    State y;
    std::size_t steps = 0;
    std::size_t rejected = 0;
};

// State must support: y + y, scalar * y, norm-like via user functor.
template <class State, class Rhs>
class Dopri5 {
public:
    explicit Dopri5(Rhs rhs, double rtol = 1e-10, double atol = 1e-12)
        : rhs_(std::move(rhs)), rtol_(rtol), atol_(atol) {}

    // integrate from (x0,y0) to x1; calls observer(x, y) after each accepted step
    OdeResult<State> integrate(double x0, State y0, double x1,
                               const std::function<void(double, const State&)>& observer = nullptr) {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                                a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                                b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                                e6 = 22.0 / 525, e7 = -1.0 / 40;

        OdeResult<State> res{y0, 0, 0};
        const double dir = (x1 >= x0) ? 1.0 : -1.0;
        double x = x0;
        double h = dir * std::min(0.1 * std::abs(x1 - x0) + 1e-30, 0.1);
        State k1 = rhs_(x, res.y);
        double err_prev = 1.0;
        while (dir * (x1 - x) > 1e-14 * (std::abs(x) + 1.0)) {
            if (dir * (x + h - x1) > 0) h = x1 - x;
            if (std::abs(h) < 1e-14 * (std::abs(x) + 1.0))
                throw std::runtime_error("Dopri5: step size collapse at x=" + std::to_string(x));
            State k2 = rhs_(x + c2 * h, res.y + h * (a21 * k1));
            State k3 = rhs_(x + c3 * h, res.y + h * (a31 * k1 + a32 * k2));
            State k4 = rhs_(x + c4 * h, res.y + h * (a41 * k1 + a42 * k2 + a43 * k3));
            State k5 = rhs_(x + c5 * h, res.y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            State k6 = rhs_(x + h, res.y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            State ynew = res.y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            State k7 = rhs_(x + h, ynew);
            State errv = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double sc = atol_ + rtol_ * std::max(norm_inf(res.y), norm_inf(ynew));
            const double err = norm_inf(errv) / sc;
            if (err <= 1.0) {
                x += h;
                res.y = ynew;
                k1 = k7;
                ++res.steps;
                if (observer) observer(x, res.y);
                const double fac = 0.9 * std::pow(err + 1e-30, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
                h *= std::min(5.0, std::max(0.2, fac));
                err_prev = std::max(err, 1e-4);
            } else {
                ++res.rejected;
                h *= std::max(0.2, 0.9 * std::pow(err, -1.0 / 5.0));
                if (res.rejected > 100000)
                    throw std::runtime_error("Dopri5: stiffness, too many rejected steps at x=" + std::to_string(x));
            }
        }
        return res;
    }

private:
    template <class V>
    static double norm_inf(const V& v) {
        double m = 0;
        for (const auto& e : v) m = std::max(m, std::abs(e));
        return m;
    }
    Rhs rhs_;
    double rtol_, atol_;
};

// small fixed-size state helper
template <class T, std::size_t N>
struct Vec {
    std::array<T, N> v{};
    T& operator[](std::size_t i) { return v[i]; }
    const T& operator[](std::size_t i) const { return v[i]; }
    auto begin() const { return v.begin(); }
    auto end() const { return v.end(); }
    friend Vec operator+(Vec a, const Vec& b) {
        for (std::size_t i = 0; i < N; ++i) a.v[i] += b.v[i];
        return a;
    }
    friend Vec operator*(double s, Vec a) {
        for (std::size_t i = 0; i < N; ++i) a.v[i] = s * a.v[i];
        return a;
    }
};

template <class T, std::size_t N>
inline Vec<T, N> operator*(const Vec<T, N>& a, double s) { return s * a; }

// convenience: integrate and record values at prescribed nodes (monotone)
template <class State, class Rhs>
void integrate_through_nodes(Rhs rhs, double x0, const State& y0, const std::vector<double>& nodes,
                             const std::function<void(std::size_t, const State&)>& record,
                             double rtol = 1e-10, double atol = 1e-13) {
    Dopri5<State, Rhs> solver(rhs, rtol, atol);
    State y = y0;
    double x = x0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (std::abs(nodes[i] - x) > 0) {
            auto r = solver.integrate(x, y, nodes[i]);
            y = r.y;
            x = nodes[i];
        }
        record(i, y);
    }
}

} // namespace nlsb
