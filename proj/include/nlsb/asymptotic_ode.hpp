#pragma once

// Formal solutions w = e^{lambda z} z^gamma sum a_k z^{-k} of
//   w'' + b(z) w' + c(z) w = 0,   b, c with power series in 1/z,
// at the rank-1 irregular singular point z = infinity. Characteristic data
// from the indicial relations, coefficients from the exact recursion
//   k (b0 + 2 lambda) a_k = (gamma-k+1)(gamma-k) a_{k-1}
//                           + sum_{m=0}^{k-1} [lambda b_{k+1-m} + c_{k+1-m} + (gamma-m) b_{k-m}] a_m.
// Coefficient arithmetic runs in long double to absorb the factorial-type growth.

#include <complex>
#include <stdexcept>
#include <vector>

namespace nlsb {

using cplxl = std::complex<long double>;

struct SingularODEData {
    std::vector<std::complex<double>> b;  // b_0, b_1, ...
    std::vector<std::complex<double>> c;  // c_0, c_1, ...
    double validity_radius = 1.0;
};

struct CharacteristicPair {
    std::complex<double> lambda;
    std::complex<double> gamma;
};

inline std::pair<CharacteristicPair, CharacteristicPair> characteristic_exponents(const SingularODEData& d) {
    const std::complex<double> b0 = d.b.empty() ? 0.0 : d.b[0];
    const std::complex<double> c0 = d.c.empty() ? 0.0 : d.c[0];
    const std::complex<double> b1 = d.b.size() > 1 ? d.b[1] : 0.0;
    const std::complex<double> c1 = d.c.size() > 1 ? d.c[1] : 0.0;
    const std::complex<double> disc = b0 * b0 / 4.0 - c0;
    if (std::abs(disc) < 1e-14 * (std::abs(b0 * b0) + std::abs(c0) + 1.0))
        throw std::invalid_argument("characteristic_exponents: exceptional case b0^2 = 4 c0 unsupported");
    const std::complex<double> rt = std::sqrt(disc);
    auto make = [&](std::complex<double> lam) {
        CharacteristicPair p;
        p.lambda = lam;
        p.gamma = -(b1 * lam + c1) / (b0 + 2.0 * lam);
        return p;
    };
    return {make(-b0 / 2.0 + rt), make(-b0 / 2.0 - rt)};
}

struct FormalSolution {
    CharacteristicPair branch;
    std::vector<std::complex<double>> a;  // a_0 .. a_n
    std::complex<double> lambda_other;    // for the sector constraint
};

inline FormalSolution expansion_coefficients(const SingularODEData& d, const CharacteristicPair& branch,
                                             int n, std::complex<double> a0 = 1.0) {
    const auto [p, m] = characteristic_exponents(d);
    FormalSolution sol;
    sol.branch = branch;
    sol.lambda_other = (std::abs(branch.lambda - p.lambda) < std::abs(branch.lambda - m.lambda)) ? m.lambda : p.lambda;
    const cplxl lam(branch.lambda), gam(branch.gamma);
    const cplxl b0 = d.b.empty() ? cplxl(0) : cplxl(d.b[0]);
    auto bk = [&](int k) { return k < static_cast<int>(d.b.size()) ? cplxl(d.b[static_cast<size_t>(k)]) : cplxl(0); };
    auto ck = [&](int k) { return k < static_cast<int>(d.c.size()) ? cplxl(d.c[static_cast<size_t>(k)]) : cplxl(0); };
    std::vector<cplxl> a(static_cast<size_t>(n) + 1);
    a[0] = cplxl(a0);
    for (int k = 1; k <= n; ++k) {
        const cplxl den = static_cast<long double>(k) * (b0 + 2.0L * lam);
        if (std::abs(den) < 1e-14L)
            throw std::invalid_argument("expansion_coefficients: degenerate recursion (b0+2 lambda) k = 0");
        cplxl rhs = (gam - cplxl(k - 1)) * (gam - cplxl(k)) * a[static_cast<size_t>(k - 1)];
        for (int mm = 0; mm <= k - 1; ++mm)
            rhs += (lam * bk(k + 1 - mm) + ck(k + 1 - mm) + (gam - cplxl(mm)) * bk(k - mm)) * a[static_cast<size_t>(mm)];
        a[static_cast<size_t>(k)] = rhs / den;
    }
    sol.a.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) sol.a[i] = std::complex<double>(a[i]);
    return sol;
}

struct EvalWithRemainder {
    std::complex<double> value;
    double remainder = 0.0;  // |a_{n+1} z^{-n-1}| * safety factor
};

// evaluate e^{lambda z} z^gamma (a_0 + ... + a_n z^{-n}); the sector constraint
// |arg(+-(lambda_+ - lambda_-) z)| <= pi is enforced
inline EvalWithRemainder evaluate_with_remainder(const SingularODEData& d, const FormalSolution& s,
                                                 std::complex<double> z, int n) {
    if (std::abs(z) <= d.validity_radius)
        throw std::domain_error("evaluate_with_remainder: |z| inside validity radius");
    const std::complex<double> dir = (s.branch.lambda - s.lambda_other) * z;
    if (std::abs(std::arg(dir)) > M_PI + 1e-12)
        throw std::domain_error("evaluate_with_remainder: sector violation");
    if (n + 1 >= static_cast<int>(s.a.size()))
        throw std::invalid_argument("evaluate_with_remainder: order exceeds stored coefficients");
    std::complex<double> sum = 0.0;
    std::complex<double> zk = 1.0;
    for (int k = 0; k <= n; ++k) {
        sum += s.a[static_cast<size_t>(k)] * zk;
        zk /= z;
    }
    EvalWithRemainder out;
    const std::complex<double> pref = std::exp(s.branch.lambda * z) * std::pow(z, s.branch.gamma);
    out.value = pref * sum;
    out.remainder = 3.0 * std::abs(s.a[static_cast<size_t>(n) + 1] * zk) * std::abs(pref);
    return out;
}

// sum only, without the exponential/power prefactor
inline std::complex<double> partial_sum(const FormalSolution& s, std::complex<double> z, int n) {
    std::complex<double> sum = 0.0, zk = 1.0;
    for (int k = 0; k <= n; ++k) {
        sum += s.a[static_cast<size_t>(k)] * zk;
        zk /= z;
    }
    return sum;
}

} // namespace nlsb
