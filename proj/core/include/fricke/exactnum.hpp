#pragma once

// Exact rational arithmetic and arithmetic in cyclotomic fields Q(zeta_M).
//
// A CycloElem of order M is stored as its coordinate vector in the power
// basis 1, z, ..., z^(phi(M)-1) of Q[z]/(Phi_M(z)), where z = zeta_M. Because
// Phi_M is the minimal polynomial of zeta_M, this representation is canonical
// and equality is coefficient-wise. An element is rational iff every
// coordinate beyond the constant one vanishes.

#include "fricke/numeric.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fricke {

using BigInt = mpz_class;
using BigRational = mpq_class;

std::string to_string(const BigInt& x);
// "p/q", or "p" when q = 1.
std::string to_string(const BigRational& x);
BigRational parse_rational(std::string_view text);
// num/den in lowest terms; den must be nonzero.
BigRational make_rational(long num, long den);

// Floor and positive modulus helpers shared by the index arithmetic.
long mod_floor(long a, long m);
long gcd_long(long a, long b);
long lcm_long(long a, long b);
long euler_phi(long n);
// Multiplicative inverse of a modulo m; throws UsageError when gcd(a, m) != 1.
long inverse_mod(long a, long m);

// Data attached to Q(zeta_M): Phi_M and the reductions of z^k modulo Phi_M.
class CycloField {
public:
    // Cached, thread-safe lookup. Order must be positive.
    static const CycloField& get(int order);

    int order() const { return order_; }
    int degree() const { return degree_; }
    // Phi_M coefficients, low degree first, monic.
    const std::vector<BigInt>& modulus() const { return modulus_; }
    // Coordinates of z^k for k in [0, M); z^M = 1.
    const std::vector<long>& power(long k) const;

private:
    explicit CycloField(int order);

    int order_;
    int degree_;
    std::vector<BigInt> modulus_;
    std::vector<std::vector<long>> powers_;
};

// Integer cyclotomic polynomial Phi_n, low degree first.
std::vector<BigInt> cyclotomic_polynomial(int n);

class CycloElem {
public:
    // Zero of Q(zeta_1) = Q.
    CycloElem();
    // Zero of order M.
    explicit CycloElem(int order);
    CycloElem(int order, BigRational value);
    // Takes coordinates in the power basis; size must equal phi(order).
    CycloElem(int order, std::vector<BigRational> coeffs);

    static CycloElem zeta_power(int order, long k);

    int order() const { return order_; }
    std::span<const BigRational> coeffs() const { return coeffs_; }
    const BigRational& coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    // Constant coordinate; the value itself when is_rational().
    const BigRational& rational_part() const { return coeffs_.front(); }
    // Lowest common denominator of the coordinates.
    BigInt denominator() const;
    // 1-norm of the coordinate vector, used for embedding error bounds.
    BigRational coeff_norm1() const;

    CycloElem& operator+=(const CycloElem& o);
    CycloElem& operator-=(const CycloElem& o);
    CycloElem& operator*=(const CycloElem& o);
    CycloElem& operator*=(const BigRational& r);

    friend bool operator==(const CycloElem& a, const CycloElem& b);

private:
    void require_same_order(const CycloElem& o, const char* op) const;

    int order_;
    std::vector<BigRational> coeffs_;
};

CycloElem operator+(CycloElem a, const CycloElem& b);
CycloElem operator-(CycloElem a, const CycloElem& b);
CycloElem operator-(CycloElem a);
CycloElem operator*(CycloElem a, const BigRational& r);
CycloElem operator*(const BigRational& r, CycloElem a);
CycloElem operator*(const CycloElem& a, const CycloElem& b);

// Product of two elements of the same order; UsageError on order mismatch.
CycloElem cyclo_mul(const CycloElem& a, const CycloElem& b);
// Same element viewed in Q(zeta_target); requires a.order() | target.
CycloElem cyclo_lift(const CycloElem& a, int target_order);
// Inverse of cyclo_lift: the element as a member of Q(zeta_target) when it lies
// in that subfield, nullopt otherwise. Requires target | a.order().
std::optional<CycloElem> cyclo_project(const CycloElem& a, int target_order);
// Multiplicative inverse via the extended Euclidean algorithm with Phi_M.
CycloElem cyclo_inv(const CycloElem& a);
CycloElem cyclo_pow(const CycloElem& a, long e);
// The automorphism z -> z^d; requires gcd(d, M) = 1.
CycloElem galois_sigma(const CycloElem& a, long d);
// Lifts both operands to lcm of their orders.
std::pair<CycloElem, CycloElem> to_common_order(const CycloElem& a, const CycloElem& b);

// Value under z -> exp(2 pi i / M). The result is computed at prec_bits under
// a local PrecisionScope; the absolute error is below 2^(3 - prec_bits) times
// coeff_norm1().
Complex embed_complex(const CycloElem& a, int prec_bits);
// Same, at the precision currently in effect.
Complex embed_complex_current(const CycloElem& a);

// "c0 + c1*z + c2*z^2 + ..." with zero coordinates omitted; "0" for zero.
std::string to_string(const CycloElem& a);
// Parses the to_string form for the given order.
CycloElem parse_cyclo(std::string_view text, int order);

// Smallest k >= 1 with a^k = 1, searched up to max_order; nullopt otherwise.
std::optional<long> root_of_unity_order(const CycloElem& a, long max_order);

} // namespace fricke
