#pragma once

// Concrete q-expansions: the level-one forms, normalized Weierstrass values
// at N-torsion points, Fricke functions and powers of Siegel functions.
//
// Conventions. q = e^(2 pi i tau). Truncation arguments T are in whole
// q-units; every constructor returns a series whose truncation is exactly T.
// Level-N series use exponent denominator N and coefficients in Q(zeta_N),
// zeta_N = e^(2 pi i / N).
//
//   wp-hat_v = (2 pi i)^-2 wp(v1 tau + v2; [tau, 1])
//   f_v      = 12 * E4 E6 / Delta * wp-hat_v
//   g_v      = e^(2 pi i r) q^(B2(v1)/2) (1 - q_z) prod_{n>=1} (1 - q^n q_z)(1 - q^n / q_z)
// with q_z = q^v1 e^(2 pi i v2), v reduced into [0,1)^2 and
// r = 1/2 + v2 (v1 - 1) / 2. The constant 12 is the value fixed by the
// 2-torsion resolvent sigma2 = -3 j (j - 1728).

#include "fricke/qseries.hpp"

#include <string>
#include <string_view>

namespace fricke {

// <x> in [0, 1).
BigRational frac_part(const BigRational& x);
// <+-x> = min(<x>, <-x>).
BigRational frac_part_pm(const BigRational& x);
// x^2 - x + 1/6.
BigRational bernoulli2(const BigRational& x);

// v = [a/N, b/N].
struct IndexVector {
    long a = 0;
    long b = 0;
    int level = 2;

    BigRational v1() const { return make_rational(a, level); }
    BigRational v2() const { return make_rational(b, level); }
    // Representative with a, b in [0, N).
    IndexVector reduced() const;
    IndexVector negated() const;
    // N is the least denominator, i.e. gcd(a, b, N) = 1.
    bool primitive() const;

    friend bool operator==(const IndexVector&, const IndexVector&) = default;
};

// Validates N >= 2 and v not in Z^2; the result is reduced.
IndexVector make_index(long a, long b, int level);
// "a/N,b/N" (any equivalent rationals whose denominators divide N).
IndexVector parse_index(std::string_view text, int level);
// "[a/N,b/N]" with reduced fractions.
std::string to_string(const IndexVector& v);

// Delta = q prod (1 - q^n)^24, E4 = 1 + 240 sum sigma_3(n) q^n,
// E6 = 1 - 504 sum sigma_5(n) q^n, j = E4^3 / Delta. Cached per process.
FracQSeries delta_norm_series(long T);
FracQSeries e4_series(long T);
FracQSeries e6_series(long T);
FracQSeries j_series(long T);
// E4 E6 / Delta, the weight-zero factor of every Fricke function.
FracQSeries e4e6_over_delta_series(long T);

FracQSeries wp_norm_series(const IndexVector& v, long T);
FracQSeries fricke_series(const IndexVector& v, long T);

// g_v = e^(2 pi i phase) * q^qexp * lead * unit, where lead is 1 - zeta_N^b
// when v1 is integral and 1 otherwise. unit has constant term 1.
struct SiegelSymbol {
    IndexVector v;
    BigRational phase;
    BigRational qexp;
    CycloElem lead;
    FracQSeries unit;
};

SiegelSymbol siegel_symbol(const IndexVector& v, long T);
// g_v^m; m must be a nonzero multiple of 12N. Coefficients in Q(zeta_N),
// exponent denominator N.
FracQSeries siegel_power_series(const IndexVector& v, long m, long T);

} // namespace fricke
