#pragma once

// Closed-form ground state W(R) = (1 + R^2/3)^{-1/2} of  dW + W^5 = 0 on R^3,
// its scaling derivative W1 = (1/2 + R d_R) W, the linearization potentials
// V1 = -3W^4, V2 = -2W^4 and the radial operators
//   L+ = -d_RR - (2/R) d_R - 5 W^4,   L- = -d_RR - (2/R) d_R - W^4.
// All derivatives are analytic; no finite differences enter here.

#include <cmath>
#include <stdexcept>

namespace nlsb {

inline void check_radius(double R) {
    if (!(R >= 0.0) || !std::isfinite(R)) throw std::domain_error("ground state: R must be finite nonnegative");
}

inline double W(double R) {
    check_radius(R);
    return 1.0 / std::sqrt(1.0 + R * R / 3.0);
}

inline double W_prime(double R) {
    check_radius(R);
    const double w = W(R);
    return -(R / 3.0) * w * w * w;
}

inline double W_second(double R) {
    check_radius(R);
    const double w = W(R);
    const double w3 = w * w * w;
    return -w3 / 3.0 + (R * R / 3.0) * w3 * w * w;
}

// W1 = (1/2 + R d_R) W = (3 - R^2)/6 * W^3, vanishing at R = sqrt(3)
inline double W1(double R) {
    check_radius(R);
    const double w = W(R);
    return (3.0 - R * R) / 6.0 * w * w * w;
}

inline double W1_prime(double R) {
    check_radius(R);
    const double w = W(R);
    const double w3 = w * w * w;
    return -(R / 3.0) * w3 - (R * (3.0 - R * R) / 6.0) * w3 * w * w;
}

inline double W1_second(double R) {
    check_radius(R);
    const double w = W(R);
    const double w2 = w * w;
    const double w5 = w2 * w2 * w;
    const double R2 = R * R;
    // W1'' = w^7 * (-R^4/27 + 23 R^2/18 - 5/6)
    return w5 * w2 * (-R2 * R2 / 27.0 + 23.0 * R2 / 18.0 - 5.0 / 6.0);
}

inline double V1(double R) {
    const double w = W(R);
    const double w2 = w * w;
    return -3.0 * w2 * w2;
}

inline double V2(double R) {
    const double w = W(R);
    const double w2 = w * w;
    return -2.0 * w2 * w2;
}

// radial Laplacian of a closed-form pair (f, f', f'')
inline double radial_laplacian(double R, double f1, double f2) {
    return f2 + 2.0 / R * f1;
}

// L-(W) and L+(W1) residuals from closed forms (identically zero analytically)
inline double Lminus_W(double R) {
    const double w = W(R);
    return -W_second(R) - 2.0 / R * W_prime(R) - w * w * w * w * w;
}

inline double Lplus_W1(double R) {
    const double w = W(R);
    const double w4 = w * w * w * w;
    return -W1_second(R) - 2.0 / R * W1_prime(R) - 5.0 * w4 * W1(R);
}

} // namespace nlsb
