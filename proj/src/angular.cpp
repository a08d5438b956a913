#include "he3/angular.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace he3::angular {

namespace {

// log(n!) cache; spins up to 50 need factorials up to ~200.
double log_factorial(int n) {
    static std::vector<double> table = [] {
        std::vector<double> t(512);
        t[0] = 0.0;
        for (int i = 1; i < 512; ++i) t[i] = t[i - 1] + std::log(double(i));
        return t;
    }();
    if (n < 0) return -1e300;
    if (n < int(table.size())) return table[n];
    return std::lgamma(double(n) + 1.0);
}

// log of Delta(abc) = sqrt((a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!), doubled args.
double log_delta(int ta, int tb, int tc) {
    return 0.5 * (log_factorial((ta + tb - tc) / 2) +
                  log_factorial((ta - tb + tc) / 2) +
                  log_factorial((-ta + tb + tc) / 2) -
                  log_factorial((ta + tb + tc) / 2 + 1));
}

bool projections_ok(int tj, int tm) {
    return std::abs(tm) <= tj && (tj - tm) % 2 == 0;
}

int parity_sign(int doubled_phase) {
    // (-1)^(doubled_phase/2); caller guarantees doubled_phase is even.
    return (doubled_phase / 2) % 2 == 0 ? 1 : -1;
}

}  // namespace

bool triangle_ok(int tj1, int tj2, int tj3) {
    return tj3 >= std::abs(tj1 - tj2) && tj3 <= tj1 + tj2 &&
           (tj1 + tj2 + tj3) % 2 == 0;
}

double wigner3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    if (tm1 + tm2 + tm3 != 0) return 0.0;
    if (!triangle_ok(tj1, tj2, tj3)) return 0.0;
    if (!projections_ok(tj1, tm1) || !projections_ok(tj2, tm2) ||
        !projections_ok(tj3, tm3))
        return 0.0;

    // Racah sum over k, with everything in halves.
    const int kmin = std::max({0, (tj2 - tj3 - tm1) / 2, (tj1 - tj3 + tm2) / 2});
    const int kmax = std::min({(tj1 + tj2 - tj3) / 2, (tj1 - tm1) / 2, (tj2 + tm2) / 2});
    if (kmin > kmax) return 0.0;

    const double logpre =
        log_delta(tj1, tj2, tj3) +
        0.5 * (log_factorial((tj1 + tm1) / 2) + log_factorial((tj1 - tm1) / 2) +
               log_factorial((tj2 + tm2) / 2) + log_factorial((tj2 - tm2) / 2) +
               log_factorial((tj3 + tm3) / 2) + log_factorial((tj3 - tm3) / 2));

    double sum = 0.0;
    for (int k = kmin; k <= kmax; ++k) {
        const double logterm =
            logpre - log_factorial(k) - log_factorial((tj1 + tj2 - tj3) / 2 - k) -
            log_factorial((tj1 - tm1) / 2 - k) - log_factorial((tj2 + tm2) / 2 - k) -
            log_factorial((tj3 - tj2 + tm1) / 2 + k) -
            log_factorial((tj3 - tj1 - tm2) / 2 + k);
        sum += (k % 2 == 0 ? 1.0 : -1.0) * std::exp(logterm);
    }
    return parity_sign(tj1 - tj2 - tm3) * sum;
}

double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tj3, int tm3) {
    if (tm1 + tm2 != tm3) return 0.0;
    const double w = wigner3j(tj1, tj2, tj3, tm1, tm2, -tm3);
    if (w == 0.0) return 0.0;
    return parity_sign(-tj1 + tj2 - tm3) * std::sqrt(double(tj3) + 1.0) * w;
}

double wigner6j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
    if (!triangle_ok(tj1, tj2, tj3) || !triangle_ok(tj1, tj5, tj6) ||
        !triangle_ok(tj4, tj2, tj6) || !triangle_ok(tj4, tj5, tj3))
        return 0.0;

    const double logpre = log_delta(tj1, tj2, tj3) + log_delta(tj1, tj5, tj6) +
                          log_delta(tj4, tj2, tj6) + log_delta(tj4, tj5, tj3);

    const int a = (tj1 + tj2 + tj3) / 2;
    const int b = (tj1 + tj5 + tj6) / 2;
    const int c = (tj4 + tj2 + tj6) / 2;
    const int d = (tj4 + tj5 + tj3) / 2;
    const int e = (tj1 + tj2 + tj4 + tj5) / 2;
    const int f = (tj2 + tj3 + tj5 + tj6) / 2;
    const int g = (tj3 + tj1 + tj6 + tj4) / 2;

    const int kmin = std::max({a, b, c, d});
    const int kmax = std::min({e, f, g});
    if (kmin > kmax) return 0.0;

    double sum = 0.0;
    for (int k = kmin; k <= kmax; ++k) {
        const double logterm = logpre + log_factorial(k + 1) - log_factorial(k - a) -
                               log_factorial(k - b) - log_factorial(k - c) -
                               log_factorial(k - d) - log_factorial(e - k) -
                               log_factorial(f - k) - log_factorial(g - k);
        sum += (k % 2 == 0 ? 1.0 : -1.0) * std::exp(logterm);
    }
    return sum;
}

double wigner9j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6,
                int tj7, int tj8, int tj9) {
    // Sum over the intermediate coupling, 9j as a product of three 6j's.
    const int kmin = std::max({std::abs(tj1 - tj9), std::abs(tj2 - tj6),
                               std::abs(tj4 - tj8)});
    const int kmax = std::min({tj1 + tj9, tj2 + tj6, tj4 + tj8});
    double sum = 0.0;
    for (int tk = kmin; tk <= kmax; tk += 2) {
        const double s = wigner6j(tj1, tj4, tj7, tj8, tj9, tk) *
                         wigner6j(tj2, tj5, tj8, tj4, tk, tj6) *
                         wigner6j(tj3, tj6, tj9, tk, tj1, tj2);
        if (s == 0.0) continue;
        sum += (tk + 1) * (tk % 2 == 0 ? 1.0 : -1.0) * s;
    }
    // tk is doubled; (-1)^{2k} = (-1)^{tk}.
    return sum;
}

}  // namespace he3::angular
