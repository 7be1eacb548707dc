#ifndef SENTIMARK_NUMERICS_HPP
#define SENTIMARK_NUMERICS_HPP

#include <cstddef>
#include <vector>

namespace sentimark {

// a = term-in-event, b = other-in-event, c = term-in-base, d = other-in-base.
struct ContingencyTable2x2 {
    long long a = 0;
    long long b = 0;
    long long c = 0;
    long long d = 0;
};

struct Chi2Result {
    double chi2 = 0.0;
    double p = 1.0;
};

// chi2 = N(ad-bc)^2 / ((a+b)(c+d)(a+c)(b+d)); p from the df=1 survival
// function erfc(sqrt(chi2/2)). Throws DegenerateTable on a zero margin.
Chi2Result chi_square_2x2(const ContingencyTable2x2& t);

double chi2_sf_df1(double x);

// Regularized incomplete beta I_x(a, b) via continued fraction.
double incomplete_beta(double a, double b, double x);

// Two-sided Student-t tail probability, df >= 1.
double t_two_sided_p(double t, long long df);

// Dense design, row-major, intercept column included by the caller.
struct LeastSquaresProblem {
    size_t n = 0;
    size_t k = 0;
    std::vector<double> X;  // n * k
    std::vector<double> y;  // n

    double& at(size_t row, size_t col) { return X[row * k + col]; }
    double at(size_t row, size_t col) const { return X[row * k + col]; }
};

struct LeastSquaresFit {
    std::vector<double> beta;
    std::vector<double> se;
    std::vector<double> residuals;
    double sigma2 = 0.0;
    double rss = 0.0;
    double tss = 0.0;
    double r2 = 0.0;
};

// Householder QR on the column-scaled design. Throws Underdetermined when
// n <= k, RankDeficient on exact collinearity or when the scaled Gram
// condition estimate exceeds 1e10.
LeastSquaresFit least_squares_fit(const LeastSquaresProblem& problem);

double adjusted_r2(double r2, size_t n, size_t k);

}  // namespace sentimark

#endif
