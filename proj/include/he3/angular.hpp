#pragma once

// Angular momentum coupling coefficients: Wigner 3j/6j/9j symbols and
// Clebsch-Gordan coefficients. Quantum numbers are passed as doubled
// integers (twice the spin value) so half-integer spins never touch
// floating point comparisons. All functions return 0 outside the
// triangle/projection selection rules.

namespace he3::angular {

// Doubled-integer spin, j = twice/2.
struct Half {
    int twice;
    constexpr Half() : twice(0) {}
    constexpr explicit Half(int t) : twice(t) {}
    static constexpr Half of_int(int j) { return Half(2 * j); }
    double value() const { return 0.5 * twice; }
    bool is_integer() const { return twice % 2 == 0; }
    friend constexpr bool operator==(Half a, Half b) { return a.twice == b.twice; }
    friend constexpr bool operator!=(Half a, Half b) { return a.twice != b.twice; }
};

// All arguments are doubled (e.g. wigner3j(2,2,0, 0,0,0) is (1,1,0;0,0,0)).
double wigner3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3);
double wigner6j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6);
double wigner9j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6,
                int tj7, int tj8, int tj9);

// <j1 m1; j2 m2 | j3 m3>, doubled arguments.
double clebsch_gordan(int tj1, int tm1, int tj2, int tm2, int tj3, int tm3);

// Triangle rule |j1-j2| <= j3 <= j1+j2 with integer perimeter.
bool triangle_ok(int tj1, int tj2, int tj3);

}  // namespace he3::angular
