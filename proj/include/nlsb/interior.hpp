#pragma once

// Interior-region iteration. Corrections and errors are graded expansions in
// b = (T-t)^{2 nu}: the time dependence is exactly polynomial in b, so the
// whole construction lives on one radial grid with integer grade labels.
//
// Conventions for the two-component system written complex: a grid function
// c_l = a_l + i b_l at grade l encodes the pair (a_l, b_l) = (component of the
// Im-part row, component of the Re-part row). In this encoding
//   error init      e_0 = i * N_0,
//   Green step      eta = -G_+[Im c] + i G_-[Re c]   from  L_W eta = -e^0,
//   time derivative b^l -> -2 nu l b^{l+1},
//   nonlinear terms e   += i * (N_1 + Delta N_2)  per grade.

#include <map>

#include "nlsb/fit.hpp"
#include "nlsb/green.hpp"

namespace nlsb {

using GridFn = std::vector<cplx>;
using Graded = std::map<int, GridFn>;  // grade l >= 1 -> profile chi_l(R)

struct InteriorParams {
    double nu = std::sqrt(2.0);
    double alpha0 = 1.0;
    int grade_cap = 8;
    int k_max = 4;
};

struct InteriorState {
    int k = 0;           // iterations performed
    Graded eta;          // eta_k has exactly grade k; eta holds grades 1..k of eta*
    Graded error;        // e_k, grades k+1 .. min(5k, cap)
    InteriorParams prm;
};

namespace detail {

inline void add_scaled(GridFn& dst, const GridFn& src, cplx c) {
    if (dst.empty()) dst.assign(src.size(), cplx(0.0));
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] += c * src[i];
}

inline void graded_add(Graded& dst, int grade, const GridFn& src, cplx c, int cap) {
    if (grade > cap) return;
    add_scaled(dst[grade], src, c);
}

// pointwise product of graded expansions, truncated at cap
inline Graded graded_mul(const Graded& a, const Graded& b, int cap) {
    Graded out;
    for (const auto& [la, fa] : a)
        for (const auto& [lb, fb] : b) {
            if (la + lb > cap) continue;
            GridFn& dst = out[la + lb];
            if (dst.empty()) dst.assign(fa.size(), cplx(0.0));
            for (std::size_t i = 0; i < fa.size(); ++i) dst[i] += fa[i] * fb[i];
        }
    return out;
}

inline Graded graded_conj(const Graded& a) {
    Graded out;
    for (const auto& [l, f] : a) {
        GridFn g(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) g[i] = std::conj(f[i]);
        out[l] = g;
    }
    return out;
}

// quintic nonlinearity N2(eta) = -sum_{a+c>=2} C(3,a) C(2,c) W^{5-a-c} eta^a conj(eta)^c
inline Graded quintic_N2(const RadialGrid& g, const Graded& eta, int cap) {
    static const int C3[4] = {1, 3, 3, 1};
    static const int C2[3] = {1, 2, 1};
    const Graded etab = graded_conj(eta);
    // powers eta^a, etab^c by repeated multiply
    std::vector<Graded> pa(4), pc(3);
    pa[1] = eta;
    pc[1] = etab;
    pa[2] = graded_mul(eta, eta, cap);
    pa[3] = graded_mul(pa[2], eta, cap);
    pc[2] = graded_mul(etab, etab, cap);
    Graded out;
    std::vector<double> wpow(g.size());
    for (int a = 0; a <= 3; ++a)
        for (int c = 0; c <= 2; ++c) {
            if (a + c < 2) continue;
            for (std::size_t i = 0; i < g.size(); ++i) wpow[i] = std::pow(W(g[i]), 5 - a - c);
            Graded term;
            if (a == 0)
                term = pc[static_cast<size_t>(c)];
            else if (c == 0)
                term = pa[static_cast<size_t>(a)];
            else
                term = graded_mul(pa[static_cast<size_t>(a)], pc[static_cast<size_t>(c)], cap);
            const double coef = -static_cast<double>(C3[a] * C2[c]);
            for (auto& [l, f] : term) {
                GridFn& dst = out[l];
                if (dst.empty()) dst.assign(f.size(), cplx(0.0));
                for (std::size_t i = 0; i < f.size(); ++i) dst[i] += coef * wpow[i] * f[i];
            }
        }
    return out;
}

// N1(eta) = -alpha0 b eta - i (1/2+nu) b (1/2 + R d_R) eta : grade shift by one
inline Graded linear_N1(const RadialGrid& g, const Graded& eta, const InteriorParams& p) {
    Graded out;
    for (const auto& [l, f] : eta) {
        if (l + 1 > p.grade_cap) continue;
        auto d = g.derivative(f, 1);
        GridFn v(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            const cplx lam = 0.5 * f[i] + g[i] * d[i];
            v[i] = -p.alpha0 * f[i] - cplx(0.0, 1.0) * (0.5 + p.nu) * lam;
        }
        out[l + 1] = v;
    }
    return out;
}

} // namespace detail

// e_0 = i N_0 at grade 1 with N_0 = -alpha0 W - i (1/2+nu) W1
inline InteriorState interior_init(const RadialGrid& g, const InteriorParams& prm) {
    InteriorState st;
    st.prm = prm;
    GridFn c(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        c[i] = (0.5 + prm.nu) * W1(g[i]) - cplx(0.0, 1.0) * prm.alpha0 * W(g[i]);
    st.error[1] = c;
    return st;
}

// one step: kill the lowest error grade with a Green solve and rebuild the error
inline InteriorState iterate_correction(const RadialGrid& g, const InteriorState& st) {
    if (st.error.empty()) throw std::logic_error("iterate_correction: empty error");
    InteriorState nx = st;
    const int l0 = st.error.begin()->first;
    if (l0 != st.k + 1) throw std::logic_error("iterate_correction: grade bookkeeping broken");
    if (l0 > st.prm.grade_cap) throw std::runtime_error("iterate_correction: grade cap exceeded");
    const GridFn& e0 = st.error.begin()->second;

    // L_- eta2 = Re(e0), L_+ eta1 = -Im(e0)
    std::vector<cplx> re(e0.size()), mim(e0.size());
    for (std::size_t i = 0; i < e0.size(); ++i) {
        re[i] = cplx(e0[i].real(), 0.0);
        mim[i] = cplx(-e0[i].imag(), 0.0);
    }
    auto eta1 = apply_green(Sign::Plus, g, mim);
    auto eta2 = apply_green(Sign::Minus, g, re);
    GridFn eta(e0.size());
    for (std::size_t i = 0; i < e0.size(); ++i) eta[i] = eta1[i].real() + cplx(0.0, 1.0) * eta2[i].real();
    nx.eta[l0] = eta;
    nx.k = st.k + 1;

    // e_{k+1} = time-shift(eta_{k+1}) + (e_k - e_k^0) + i (N1(eta_{k+1}) + Delta N2)
    nx.error.erase(l0);
    if (l0 + 1 <= st.prm.grade_cap)
        detail::graded_add(nx.error, l0 + 1, eta, cplx(-2.0 * st.prm.nu * l0, 0.0), st.prm.grade_cap);

    Graded dN = detail::linear_N1(g, Graded{{l0, eta}}, st.prm);
    Graded n2new = detail::quintic_N2(g, nx.eta, st.prm.grade_cap);
    Graded n2old = detail::quintic_N2(g, st.eta, st.prm.grade_cap);
    for (auto& [l, f] : n2new) detail::graded_add(dN, l, f, cplx(1.0, 0.0), st.prm.grade_cap);
    for (auto& [l, f] : n2old) detail::graded_add(dN, l, f, cplx(-1.0, 0.0), st.prm.grade_cap);
    for (auto& [l, f] : dN) detail::graded_add(nx.error, l, f, cplx(0.0, 1.0), st.prm.grade_cap);

    // grades <= l0 cancel exactly in Delta N2; drop the residual zero blocks
    for (auto it = nx.error.begin(); it != nx.error.end();) {
        if (it->first <= l0) {
            double m = 0;
            for (auto& z : it->second) m = std::max(m, std::abs(z));
            if (m > 1e-13) throw std::logic_error("iterate_correction: low grade did not cancel");
            it = nx.error.erase(it);
        } else {
            ++it;
        }
    }
    return nx;
}

// evaluate a graded expansion at time t (b = (T-t)^{2 nu})
inline GridFn graded_eval(const Graded& x, double Tt, double nu, std::size_t n) {
    GridFn out(n, cplx(0.0));
    const double b = std::pow(Tt, 2.0 * nu);
    for (const auto& [l, f] : x) {
        const double bl = std::pow(b, l);
        for (std::size_t i = 0; i < n; ++i) out[i] += bl * f[i];
    }
    return out;
}

struct MatchCoefficient {
    int grade = 0;     // l
    int log_pow = 0;   // j
    int offset = 0;    // r
    cplx value{};
    double fit_residual = 0.0;
    double condition = 0.0;
    bool usable = true;
};

// Least-squares far-field fit of chi_l against R^{2l-1-j-r} log^j R on the
// window [lo_frac, hi_frac] * R_max with log-thinned samples.
inline std::vector<MatchCoefficient> extract_matching_coefficients(
    const RadialGrid& g, const GridFn& chi, int grade, int r_max_fit = 2, int j_max = 1,
    double lo_frac = 0.2, double hi_frac = 0.8, double cond_limit = 1e8) {
    std::vector<double> xs;
    std::vector<cplx> ys;
    double next = lo_frac * g.r_max();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i] < next || g[i] > hi_frac * g.r_max()) continue;
        xs.push_back(g[i]);
        ys.push_back(chi[i]);
        next = g[i] * 1.04; // log thinning
    }
    std::vector<std::function<cplx(double)>> basis;
    std::vector<std::pair<int, int>> idx; // (r, j)
    for (int j = 0; j <= j_max; ++j)
        for (int r = 0; r <= r_max_fit; ++r) {
            const double p = 2.0 * grade - 1.0 - j - r;
            basis.push_back([p, j](double R) { return cplx(std::pow(R, p) * std::pow(std::log(R), j), 0.0); });
            idx.emplace_back(r, j);
        }
    auto fit = least_squares_fit(xs, ys, basis, cond_limit);
    std::vector<MatchCoefficient> out;
    for (std::size_t q = 0; q < idx.size(); ++q) {
        MatchCoefficient mc;
        mc.grade = grade;
        mc.offset = idx[q].first;
        mc.log_pow = idx[q].second;
        mc.value = fit.coeffs[q];
        mc.fit_residual = fit.residual;
        mc.condition = fit.condition;
        mc.usable = fit.usable;
        out.push_back(mc);
    }
    return out;
}

inline cplx find_coefficient(const std::vector<MatchCoefficient>& v, int r, int j) {
    for (const auto& m : v)
        if (m.offset == r && m.log_pow == j) return m.value;
    return cplx(0.0);
}

} // namespace nlsb
