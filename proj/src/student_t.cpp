#include "tsad/student_t.hpp"

#include <cmath>
#include <limits>

#include "tsad/errors.hpp"

namespace tsad {

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
// Converges well for x < (a + 1) / (a + b + 2).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("incomplete_beta needs a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front =
        std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double incomplete_beta_inv(double a, double b, double p) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;

    // Bisection to a safe bracket, then Newton with clamping.
    double lo = 0.0, hi = 1.0;
    double x = 0.5;
    for (int i = 0; i < 60; ++i) {
        if (incomplete_beta(a, b, x) > p)
            hi = x;
        else
            lo = x;
        x = 0.5 * (lo + hi);
    }
    const double log_norm = -log_beta(a, b);
    for (int i = 0; i < 32; ++i) {
        const double f = incomplete_beta(a, b, x) - p;
        if (f > 0.0)
            hi = std::min(hi, x);
        else
            lo = std::max(lo, x);
        const double logpdf =
            log_norm + (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x);
        const double pdf = std::exp(logpdf);
        if (!(pdf > 0.0)) break;
        double next = x - f / pdf;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-15 * (x + 1e-300)) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

double student_t_quantile(double p, double dof) {
    if (!(dof > 0.0)) throw ConfigError("degrees of freedom must be positive");
    if (!(p > 0.0) || !(p < 1.0)) throw ConfigError("quantile probability must be in (0,1)");
    if (p == 0.5) return 0.0;
    if (p < 0.5) return -student_t_quantile(1.0 - p, dof);
    // For t >= 0: F(t) = 1 - I_z(dof/2, 1/2) / 2 with z = dof / (dof + t^2).
    const double z = incomplete_beta_inv(0.5 * dof, 0.5, 2.0 * (1.0 - p));
    if (z <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(dof * (1.0 - z) / z);
}

double normal_two_sided_tail(double z) {
    // 2 * (1 - Phi(|z|)) = erfc(|z| / sqrt(2))
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

}  // namespace tsad
