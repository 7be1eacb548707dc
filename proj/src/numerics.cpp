#include "sentimark/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sentimark/errors.hpp"

namespace sentimark {

Chi2Result chi_square_2x2(const ContingencyTable2x2& t) {
    if (t.a < 0 || t.b < 0 || t.c < 0 || t.d < 0) {
        fail(Errc::DegenerateTable, "negative cell count");
    }
    const double a = static_cast<double>(t.a);
    const double b = static_cast<double>(t.b);
    const double c = static_cast<double>(t.c);
    const double d = static_cast<double>(t.d);
    const double r1 = a + b, r2 = c + d, c1 = a + c, c2 = b + d;
    if (r1 <= 0 || r2 <= 0 || c1 <= 0 || c2 <= 0) {
        fail(Errc::DegenerateTable, "zero margin in 2x2 table");
    }
    const double n = r1 + r2;
    const double det = a * d - b * c;
    const double chi2 = n * det * det / (r1 * r2 * c1 * c2);
    return {chi2, chi2_sf_df1(chi2)};
}

double chi2_sf_df1(double x) {
    if (x <= 0.0) return 1.0;
    return std::erfc(std::sqrt(x / 2.0));
}

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double t_two_sided_p(double t, long long df) {
    if (df < 1) fail(Errc::Internal, "t distribution needs df >= 1");
    const double at = std::fabs(t);
    if (at == 0.0) return 1.0;
    const double nu = static_cast<double>(df);
    const double x = nu / (nu + at * at);
    return incomplete_beta(nu / 2.0, 0.5, x);
}

LeastSquaresFit least_squares_fit(const LeastSquaresProblem& problem) {
    const size_t n = problem.n;
    const size_t k = problem.k;
    if (n <= k) {
        fail(Errc::Underdetermined,
             "need more rows than columns (n=" + std::to_string(n) +
                 ", k=" + std::to_string(k) + ")");
    }

    // Scale columns to unit norm; the fit is done on the scaled problem and
    // unscaled at the end.
    std::vector<double> colnorm(k, 0.0);
    for (size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double v = problem.at(i, j);
            s += v * v;
        }
        colnorm[j] = std::sqrt(s);
        if (colnorm[j] == 0.0) {
            fail(Errc::RankDeficient, "column " + std::to_string(j) + " is all zero");
        }
    }

    std::vector<double> A(n * k);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < k; ++j) {
            A[i * k + j] = problem.at(i, j) / colnorm[j];
        }
    }
    std::vector<double> qty = problem.y;

    // Householder QR, reflectors applied to qty as we go.
    std::vector<double> rdiag(k, 0.0);
    for (size_t j = 0; j < k; ++j) {
        double norm = 0.0;
        for (size_t i = j; i < n; ++i) norm = std::hypot(norm, A[i * k + j]);
        if (norm == 0.0) {
            fail(Errc::RankDeficient,
                 "exact collinearity at column " + std::to_string(j));
        }
        if (A[j * k + j] < 0.0) norm = -norm;
        for (size_t i = j; i < n; ++i) A[i * k + j] /= norm;
        A[j * k + j] += 1.0;
        for (size_t col = j + 1; col < k; ++col) {
            double s = 0.0;
            for (size_t i = j; i < n; ++i) s += A[i * k + j] * A[i * k + col];
            s = -s / A[j * k + j];
            for (size_t i = j; i < n; ++i) A[i * k + col] += s * A[i * k + j];
        }
        double s = 0.0;
        for (size_t i = j; i < n; ++i) s += A[i * k + j] * qty[i];
        s = -s / A[j * k + j];
        for (size_t i = j; i < n; ++i) qty[i] += s * A[i * k + j];
        rdiag[j] = -norm;
    }

    double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < k; ++j) {
        rmax = std::max(rmax, std::fabs(rdiag[j]));
        rmin = std::min(rmin, std::fabs(rdiag[j]));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    if (rmin <= rmax * static_cast<double>(n) * eps) {
        fail(Errc::RankDeficient, "numerically rank-deficient design");
    }
    // Condition of the scaled Gram matrix ~ (cond R)^2.
    const double cond_est = (rmax / rmin) * (rmax / rmin);
    if (cond_est > 1e10) {
        fail(Errc::RankDeficient,
             "ill-conditioned design (Gram condition estimate " +
                 std::to_string(cond_est) + ")");
    }

    // Back-substitute R beta = Q'y.
    std::vector<double> beta(k, 0.0);
    for (size_t jj = k; jj-- > 0;) {
        double s = qty[jj];
        for (size_t col = jj + 1; col < k; ++col) {
            s -= A[jj * k + col] * beta[col];
        }
        beta[jj] = s / rdiag[jj];
    }

    LeastSquaresFit fit;
    fit.residuals.resize(n);
    double rss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double pred = 0.0;
        for (size_t j = 0; j < k; ++j) {
            pred += (problem.at(i, j) / colnorm[j]) * beta[j];
        }
        fit.residuals[i] = problem.y[i] - pred;
        rss += fit.residuals[i] * fit.residuals[i];
    }
    fit.rss = rss;
    fit.sigma2 = rss / static_cast<double>(n - k);

    // (X'X)^-1 diagonal from R^-1 of the scaled problem, then unscale.
    // Rinv is upper triangular: R * Rinv = I.
    std::vector<double> rinv(k * k, 0.0);
    auto R = [&](size_t i, size_t j) -> double {
        return i == j ? rdiag[i] : A[i * k + j];
    };
    for (size_t col = 0; col < k; ++col) {
        rinv[col * k + col] = 1.0 / R(col, col);
        for (size_t row = col; row-- > 0;) {
            double s = 0.0;
            for (size_t m = row + 1; m <= col; ++m) {
                s += R(row, m) * rinv[m * k + col];
            }
            rinv[row * k + col] = -s / R(row, row);
        }
    }
    fit.beta.resize(k);
    fit.se.resize(k);
    for (size_t j = 0; j < k; ++j) {
        double diag = 0.0;
        for (size_t col = j; col < k; ++col) {
            diag += rinv[j * k + col] * rinv[j * k + col];
        }
        fit.beta[j] = beta[j] / colnorm[j];
        fit.se[j] = std::sqrt(fit.sigma2 * diag) / colnorm[j];
    }

    double ymean = 0.0;
    for (double v : problem.y) ymean += v;
    ymean /= static_cast<double>(n);
    double tss = 0.0;
    for (double v : problem.y) tss += (v - ymean) * (v - ymean);
    fit.tss = tss;
    fit.r2 = tss > 0.0 ? 1.0 - rss / tss : 0.0;
    return fit;
}

double adjusted_r2(double r2, size_t n, size_t k) {
    return 1.0 - (1.0 - r2) * static_cast<double>(n - 1) /
                     static_cast<double>(n - k);
}

}  // namespace sentimark
