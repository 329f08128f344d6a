#pragma once

// Least-squares helpers: generic complex/real linear fits with condition
// diagnostics, log-log exponent fits for scaling laws, and polynomial fits.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace nlsb {

struct FitResult {
    std::vector<std::complex<double>> coeffs;
    double residual = 0.0;      // relative l2 residual
    double condition = 0.0;     // condition number of the design matrix
    bool usable = true;         // condition guard
};

// Fit data[i] ~ sum_k c_k basis[k](x[i]) in least squares. Columns are scaled
// to unit max for conditioning; the condition number reported is that of the
// scaled design matrix.
inline FitResult least_squares_fit(const std::vector<double>& x,
                                   const std::vector<std::complex<double>>& data,
                                   const std::vector<std::function<std::complex<double>(double)>>& basis,
                                   double cond_limit = 1e8) {
    const int m = static_cast<int>(x.size());
    const int k = static_cast<int>(basis.size());
    if (m < k) throw std::invalid_argument("least_squares_fit: underdetermined");
    Eigen::MatrixXcd A(m, k);
    Eigen::VectorXcd b(m);
    for (int i = 0; i < m; ++i) {
        b(i) = data[static_cast<size_t>(i)];
        for (int j = 0; j < k; ++j) A(i, j) = basis[static_cast<size_t>(j)](x[static_cast<size_t>(i)]);
    }
    Eigen::VectorXd scale(k);
    for (int j = 0; j < k; ++j) {
        double s = A.col(j).cwiseAbs().maxCoeff();
        scale(j) = (s > 0) ? s : 1.0;
        A.col(j) /= scale(j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    FitResult out;
    out.condition = svd.singularValues()(0) / svd.singularValues()(k - 1);
    out.usable = out.condition < cond_limit;
    Eigen::VectorXcd c = svd.solve(b);
    const double bn = b.norm();
    out.residual = (bn > 0) ? (A * c - b).norm() / bn : 0.0;
    out.coeffs.resize(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) out.coeffs[static_cast<size_t>(j)] = c(j) / scale(j);
    return out;
}

struct ExponentFit {
    double exponent = 0.0;
    double amplitude = 0.0;   // prefactor c in  y ~ c x^exponent
    double residual = 0.0;    // rms residual of log y vs fit
    int samples = 0;
};

// slope of log(y) against log(x); ignores nonpositive y
inline ExponentFit fit_exponent(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (y[i] > 0.0 && x[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    ExponentFit out;
    out.samples = static_cast<int>(lx.size());
    if (lx.size() < 2) return out;
    const int n = static_cast<int>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += lx[static_cast<size_t>(i)];
        sy += ly[static_cast<size_t>(i)];
        sxx += lx[static_cast<size_t>(i)] * lx[static_cast<size_t>(i)];
        sxy += lx[static_cast<size_t>(i)] * ly[static_cast<size_t>(i)];
    }
    const double det = n * sxx - sx * sx;
    out.exponent = (n * sxy - sx * sy) / det;
    const double b0 = (sy * sxx - sx * sxy) / det;
    out.amplitude = std::exp(b0);
    double rr = 0;
    for (int i = 0; i < n; ++i) {
        const double e = ly[static_cast<size_t>(i)] - (b0 + out.exponent * lx[static_cast<size_t>(i)]);
        rr += e * e;
    }
    out.residual = std::sqrt(rr / n);
    return out;
}

// real polynomial fit y ~ sum c_k x^k, returns coefficients
inline std::vector<double> polyfit(const std::vector<double>& x, const std::vector<double>& y, int deg) {
    Eigen::MatrixXd A(x.size(), deg + 1);
    Eigen::VectorXd b(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        b(static_cast<Eigen::Index>(i)) = y[i];
        double p = 1.0;
        for (int j = 0; j <= deg; ++j) {
            A(static_cast<Eigen::Index>(i), j) = p;
            p *= x[i];
        }
    }
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    std::vector<double> out(static_cast<size_t>(deg + 1));
    for (int j = 0; j <= deg; ++j) out[static_cast<size_t>(j)] = c(j);
    return out;
}

} // namespace nlsb
