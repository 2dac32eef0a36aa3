#pragma once

// Bessel functions of the first kind (orders 0 and 1) and the normalized
// circular-aperture amplitude 2 J1(v) / v.
//
// Accuracy: absolute error <= 1e-12 for |x| <= 50. The ascending series is
// summed in long double up to |x| = kSeriesSeam, the Hankel asymptotic
// expansion (optimally truncated) is used beyond it.

namespace twinfocal::specfun {

struct EvalAccuracy {
    double abs_tol = 1e-12;
    int max_terms = 60;

    void validate() const;
};

inline constexpr EvalAccuracy kDefaultAccuracy{};

// Switchover between the ascending series and the asymptotic expansion.
inline constexpr double kSeriesSeam = 15.0;

// First zero of J1 and the half-maximum point of airy_amp(v)^2.
inline constexpr double kAiryFirstZero = 3.8317059702075123;
inline constexpr double kAiryHalfMaxIntensity = 1.6163399483107032;

double bessel_j0(double x);
double bessel_j1(double x);

// 2 J1(v) / v, exactly 1 at v = 0, even in v.
double airy_amp(double v);

namespace detail {

// J_n(x) for x >= 0 by the ascending power series, summed in long double.
double jn_series(int n, double x, const EvalAccuracy& acc = kDefaultAccuracy);

// J_n(x) for x > 0 by the Hankel asymptotic expansion, truncated at the
// smallest term.
double jn_asymptotic(int n, double x);

// J_n(x), n >= 0, with the same branch selection as bessel_j0/bessel_j1.
double jn(int n, double x);

}  // namespace detail

}  // namespace twinfocal::specfun
