#pragma once

// Truncated Laurent series in q^(1/D) with coefficients in Q(zeta_M).
//
// Exponents are kept as integer indices k standing for q^(k/D); the
// truncation is an index too: every coefficient with index < trunc_index()
// is known exactly, nothing beyond is stored. A series with no stored terms
// is "zero to precision" (known to vanish below the truncation), which is a
// legitimate value and not an error.

#include "fricke/exactnum.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace fricke {

class FracQSeries {
public:
    using Term = std::pair<long, CycloElem>;

    // Zero to precision at trunc_index / exp_den.
    FracQSeries(int cyclo_order, int exp_den, long trunc_index);

    // Sorts and merges terms, drops zeros and anything at or past the truncation.
    static FracQSeries from_terms(int cyclo_order, int exp_den, long trunc_index,
                                  std::vector<Term> terms);
    static FracQSeries constant(const CycloElem& c, int exp_den, long trunc_index);
    static FracQSeries monomial(const CycloElem& c, long index, int exp_den, long trunc_index);

    int cyclo_order() const { return order_; }
    int exp_den() const { return den_; }
    long trunc_index() const { return trunc_; }
    BigRational trunc() const { return make_rational(trunc_, den_); }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero_to_precision() const { return terms_.empty(); }
    std::optional<long> ord_index() const;
    // Coefficient of q^(index/D); throws PrecisionError past the truncation.
    CycloElem coeff_at(long index) const;
    // Coefficient of q^e; the exponent must lie in (1/D)Z.
    CycloElem coeff(const BigRational& e) const;
    const CycloElem& leading_coeff() const;

private:
    int order_;
    int den_;
    long trunc_;
    std::vector<Term> terms_;
};

struct QOrder {
    std::optional<BigRational> value; // nullopt: zero to precision

    bool is_zero_to_precision() const { return !value.has_value(); }
};

QOrder ord_q(const FracQSeries& a);

// Same series with coefficients in Q(zeta_M') and exponents over D';
// requires M | M' and D | D'.
FracQSeries lift_series(const FracQSeries& a, int cyclo_order, int exp_den);
// Smallest order/denominator that still represent the series exactly.
FracQSeries normalize_series(const FracQSeries& a);
// Moves the coefficients into Q(zeta_M') when they all lie there.
std::optional<FracQSeries> project_series(const FracQSeries& a, int cyclo_order);
// Lowers the truncation to trunc (a rational); it may not be raised.
FracQSeries truncate_series(const FracQSeries& a, const BigRational& trunc);

FracQSeries series_add(const FracQSeries& a, const FracQSeries& b);
FracQSeries series_sub(const FracQSeries& a, const FracQSeries& b);
FracQSeries series_neg(const FracQSeries& a);
FracQSeries series_scale(const FracQSeries& a, const CycloElem& c);
FracQSeries series_scale(const FracQSeries& a, const BigRational& c);
// Multiplication by q^e.
FracQSeries series_shift(const FracQSeries& a, const BigRational& e);
// Truncation: min(a.trunc + ord b, b.trunc + ord a). PrecisionError when both
// operands are zero to precision.
FracQSeries series_mul(const FracQSeries& a, const FracQSeries& b);
// DivisionByZeroError on a zero-to-precision input.
FracQSeries series_inv(const FracQSeries& a);
// Repeated squaring; negative exponents go through series_inv.
FracQSeries series_pow(const FracQSeries& a, long n);
// Power through the logarithmic-derivative recurrence
// k a0 p_k = sum_{i=1..k} ((n+1) i - k) a_i p_{k-i}; a single pass, O(K^2).
FracQSeries series_pow_recurrence(const FracQSeries& a, long n);

FracQSeries operator+(const FracQSeries& a, const FracQSeries& b);
FracQSeries operator-(const FracQSeries& a, const FracQSeries& b);
FracQSeries operator-(const FracQSeries& a);
FracQSeries operator*(const FracQSeries& a, const FracQSeries& b);

// tau -> tau + 1: the coefficient at q^r picks up exp(2 pi i r).
// Result order is lcm(M, D).
FracQSeries shift_tau_plus_one(const FracQSeries& a);
// sigma_d on every coefficient; UsageError unless gcd(d, M) = 1.
FracQSeries apply_sigma(const FracQSeries& a, long d);

struct Distinct {
    BigRational exponent;
    CycloElem coeff_a;
    CycloElem coeff_b;
};
struct UndecidedToPrecision {
    BigRational trunc;
};
using DistinctnessCertificate = std::variant<Distinct, UndecidedToPrecision>;

// First exponent below both truncations where the coefficients differ.
DistinctnessCertificate distinctness_certificate(const FracQSeries& a, const FracQSeries& b);
// True when both series are known up to `trunc` and agree there.
bool agree_to(const FracQSeries& a, const FracQSeries& b, const BigRational& trunc);

// Sum of the stored terms with q^(1/D) replaced by `q_root`, at the
// precision currently in effect.
Complex evaluate_series(const FracQSeries& a, const Complex& q_root);

// Text: "q^-1 + 744 + 196884*q + O(q^2)"; fractional exponents as q^(1/2);
// non-rational coefficients in parentheses using the cyclotomic text form.
std::string to_string(const FracQSeries& a);
// Inverse of to_string; coefficients are read in Q(zeta_M) and exponents must
// lie in (1/D)Z.
FracQSeries parse_series(std::string_view text, int cyclo_order, int exp_den);

// {"cyclo_order", "exp_den", "trunc", "terms": [{"exp", "coeff": [...]}]}
std::string to_json(const FracQSeries& a);
FracQSeries series_from_json(std::string_view json);

} // namespace fricke
