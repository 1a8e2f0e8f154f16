#include "support.hpp"

#include "fricke/errors.hpp"

#include <doctest.h>

using namespace fricke;
using namespace fricke::testing;

namespace {

CycloElem z(int order, long k = 1)
{
    return CycloElem::zeta_power(order, k);
}

BigRational r(long n, long d = 1)
{
    return make_rational(n, d);
}

} // namespace

TEST_CASE("series_mul examples")
{
    const FracQSeries a = series_of({{-1, 1}, {0, 744}}, 1, 5);
    const FracQSeries q = series_of({{1, 1}}, 1, 10);
    const FracQSeries p = series_mul(a, q);
    CHECK(same_series(p, series_of({{0, 1}, {1, 744}}, 1, 6)));

    // (1 - q)(1 + q + q^2 + ...) = 1 to the truncation.
    const FracQSeries one_minus = series_of({{0, 1}, {1, -1}}, 1, 30);
    std::vector<std::pair<long, long>> geo;
    for (long k = 0; k < 20; ++k) {
        geo.emplace_back(k, 1);
    }
    const FracQSeries g = series_of(geo, 1, 20);
    CHECK(same_series(series_mul(one_minus, g), series_of({{0, 1}}, 1, 20)));

    CHECK_THROWS_AS(series_mul(FracQSeries(1, 1, 3), FracQSeries(1, 1, 4)), PrecisionError);
}

TEST_CASE("a + (-a) is zero to precision")
{
    const FracQSeries a = rand_series(5, 3, -2, 12);
    const FracQSeries s = series_add(a, series_neg(a));
    CHECK(s.is_zero_to_precision());
    CHECK(s.trunc() == a.trunc());
    CHECK(ord_q(s).is_zero_to_precision());
}

TEST_CASE("addition lifts to common order and denominator")
{
    const FracQSeries a = FracQSeries::monomial(z(3), 1, 2, 8);  // zeta_3 q^(1/2)
    const FracQSeries b = FracQSeries::monomial(z(4), 1, 3, 9);  // i q^(1/3)
    const FracQSeries s = a + b;
    CHECK(s.cyclo_order() == 12);
    CHECK(s.exp_den() == 6);
    CHECK(s.trunc() == r(3));
    CHECK(s.coeff(r(1, 2)) == cyclo_lift(z(3), 12));
    CHECK(s.coeff(r(1, 3)) == cyclo_lift(z(4), 12));
}

TEST_CASE("series_inv examples")
{
    const FracQSeries half = FracQSeries::monomial(CycloElem(1, BigRational(1)), 1, 2, 20);
    const FracQSeries ih = series_inv(half);
    REQUIRE(ord_q(ih).value);
    CHECK(*ord_q(ih).value == r(-1, 2));
    CHECK(ih.terms().size() == 1);

    const FracQSeries inv = series_inv(series_of({{0, 1}, {1, -1}}, 1, 15));
    for (long k = 0; k < 15; ++k) {
        CHECK(inv.coeff_at(k) == CycloElem(1, BigRational(1)));
    }
    CHECK(inv.trunc() == r(15));

    const FracQSeries two = series_of({{-1, 2}}, 1, 10);
    const FracQSeries itwo = series_inv(two);
    CHECK(itwo.coeff(r(1)) == CycloElem(1, r(1, 2)));
    CHECK_THROWS_AS(series_inv(FracQSeries(1, 1, 5)), DivisionByZeroError);
}

TEST_CASE("inverse property on random series")
{
    for (int rep = 0; rep < 10; ++rep) {
        const FracQSeries a = rand_series(rep % 2 ? 5 : 4, 2, -1, 16);
        const FracQSeries prod = series_mul(a, series_inv(a));
        const FracQSeries one = FracQSeries::constant(CycloElem(1, BigRational(1)), 1, 1);
        CHECK(agree_to(prod, lift_series(one, 1, 1), r(0)));
        CHECK(prod.coeff_at(0).is_one());
        for (const auto& [k, c] : prod.terms()) {
            CHECK(k == 0);
        }
        CHECK(*ord_q(series_inv(a)).value == -*ord_q(a).value);
    }
}

TEST_CASE("series_pow examples and routes")
{
    const FracQSeries m = FracQSeries::monomial(CycloElem(1, BigRational(1)), -1, 12, 60);
    const FracQSeries p = series_pow(m, 24);
    CHECK(*ord_q(p).value == r(-2));
    CHECK(p.terms().size() == 1);

    const FracQSeries a = rand_series(3, 1, 1, 10);
    const FracQSeries a0 = series_pow(a, 0);
    CHECK(a0.terms().size() == 1);
    CHECK(a0.coeff_at(0).is_one());
    CHECK(same_series(series_pow(a, -1), series_inv(a)));

    for (long n : {-3L, -1L, 2L, 5L, 12L}) {
        const FracQSeries b = rand_series(4, 2, 0, 14);
        CHECK(same_series(series_pow(b, n), series_pow_recurrence(b, n)));
        CHECK(*ord_q(series_pow(b, n)).value == *ord_q(b).value * n);
    }
}

TEST_CASE("ord_q examples")
{
    const FracQSeries a = series_of({{3, 1}, {4, 1}}, 2, 12);
    CHECK(*ord_q(a).value == r(3, 2));
    CHECK(ord_q(FracQSeries(1, 1, 10)).is_zero_to_precision());
    CHECK(*ord_q(series_of({{0, 744}, {1, 1}}, 1, 3)).value == r(0));
}

TEST_CASE("ord is additive under multiplication")
{
    for (int rep = 0; rep < 10; ++rep) {
        const FracQSeries a = rand_series(6, 3, rand_int(-3, 3), 12);
        const FracQSeries b = rand_series(6, 2, rand_int(-3, 3), 12);
        CHECK(*ord_q(series_mul(a, b)).value == *ord_q(a).value + *ord_q(b).value);
    }
}

TEST_CASE("shift_tau_plus_one examples")
{
    const FracQSeries h = FracQSeries::monomial(CycloElem(1, BigRational(1)), 1, 2, 10);
    const FracQSeries sh = shift_tau_plus_one(h);
    CHECK(sh.coeff(r(1, 2)) == CycloElem(2, BigRational(-1)));

    const FracQSeries ints = rand_series(5, 1, -1, 8);
    CHECK(same_series(shift_tau_plus_one(ints), ints));

    const FracQSeries t = FracQSeries::monomial(CycloElem(1, BigRational(1)), 1, 3, 10);
    CHECK(shift_tau_plus_one(t).coeff(r(1, 3)) == z(3));
}

TEST_CASE("shift_tau_plus_one has order D*M'")
{
    for (auto [m, d] : {std::pair{1, 2}, {3, 3}, {4, 6}, {5, 5}}) {
        const FracQSeries a = rand_series(m, d, -2, 3 * d);
        const long reps = static_cast<long>(d) * lcm_long(m, d);
        FracQSeries cur = a;
        for (long i = 0; i < reps; ++i) {
            cur = shift_tau_plus_one(cur);
        }
        CHECK(same_series(cur, a));
        if (reps > 1) {
            // a single shift is not the identity when a fractional exponent is present
            const FracQSeries one = FracQSeries::monomial(CycloElem(1, BigRational(1)), 1, d, 5);
            CHECK_FALSE(same_series(shift_tau_plus_one(one), lift_series(one, lcm_long(1, d), d)));
        }
    }
}

TEST_CASE("apply_sigma examples")
{
    const FracQSeries a = FracQSeries::monomial(z(3), 1, 1, 5);
    CHECK(apply_sigma(a, 2).coeff_at(1) == z(3, 2));
    const FracQSeries b = rand_series(7, 2, 0, 10);
    CHECK(same_series(apply_sigma(b, 1), b));
    const FracQSeries c = rand_series(1, 3, -1, 10);
    CHECK(same_series(apply_sigma(c, 5), c));
    CHECK_THROWS_AS(apply_sigma(rand_series(6, 1, 0, 4), 3), UsageError);
}

TEST_CASE("sigma and tau+1 commute up to the exponent root")
{
    // sigma_d(shift(a)) = shift^d(sigma_d(a)) for coefficients in Q(zeta_M'),
    // M' = lcm(M, D): sigma_d sends e^(2 pi i r) to e^(2 pi i d r).
    for (long d : {1L, 5L, 7L}) {
        const FracQSeries a = lift_series(rand_series(3, 4, -1, 10), 12, 4);
        const FracQSeries lhs = apply_sigma(shift_tau_plus_one(a), d);
        FracQSeries rhs = apply_sigma(a, d);
        for (long i = 0; i < d; ++i) {
            rhs = shift_tau_plus_one(rhs);
        }
        CHECK(same_series(lhs, rhs));
    }
}

TEST_CASE("distinctness_certificate examples")
{
    const FracQSeries a = series_of({{0, 1}, {1, 1}}, 1, 5);
    const FracQSeries b = series_of({{0, 1}, {1, 2}}, 1, 5);
    const auto c = distinctness_certificate(a, b);
    REQUIRE(std::holds_alternative<Distinct>(c));
    const auto& d = std::get<Distinct>(c);
    CHECK(d.exponent == r(1));
    CHECK(d.coeff_a == CycloElem(1, BigRational(1)));
    CHECK(d.coeff_b == CycloElem(1, BigRational(2)));

    CHECK(std::holds_alternative<UndecidedToPrecision>(distinctness_certificate(a, a)));

    const FracQSeries h = series_of({{1, 1}}, 2, 10);
    const FracQSeries t = series_of({{1, 1}}, 3, 10);
    const auto e = distinctness_certificate(h, t);
    REQUIRE(std::holds_alternative<Distinct>(e));
    CHECK(std::get<Distinct>(e).exponent == r(1, 3));
    CHECK(std::get<Distinct>(e).coeff_a.is_zero());
    CHECK(std::get<Distinct>(e).coeff_b.is_one());
}

TEST_CASE("truncation propagation is sound on random pipelines")
{
    // Build the same pipeline from inputs known to T and to T + 20; every
    // coefficient the low version reports must appear unchanged in the high one.
    for (int rep = 0; rep < 6; ++rep) {
        const int m = rep % 2 ? 3 : 5;
        const FracQSeries a_hi = rand_series(m, 2, -2, 60);
        const FracQSeries b_hi = rand_series(m, 3, 0, 60);
        const FracQSeries a_lo = truncate_series(a_hi, r(10));
        const FracQSeries b_lo = truncate_series(b_hi, r(10));
        auto pipeline = [](const FracQSeries& a, const FracQSeries& b) {
            return series_pow(a * b, 3) + series_inv(b) * a - shift_tau_plus_one(a);
        };
        const FracQSeries lo = pipeline(a_lo, b_lo);
        const FracQSeries hi = pipeline(a_hi, b_hi);
        CHECK(hi.trunc() >= lo.trunc());
        CHECK(agree_to(lo, hi, lo.trunc()));
    }
}

TEST_CASE("text and JSON round trip")
{
    const FracQSeries j = series_of({{-1, 1}, {0, 744}, {1, 196884}}, 1, 2);
    CHECK(to_string(j) == "q^-1 + 744 + 196884*q + O(q^2)");
    CHECK(same_series(parse_series(to_string(j), 1, 1), j));
    for (int rep = 0; rep < 8; ++rep) {
        const FracQSeries a = rand_series(rep % 3 + 3, rep % 4 + 1, -3, 9);
        const FracQSeries t = parse_series(to_string(a), a.cyclo_order(), a.exp_den());
        CHECK(same_series(t, a));
        const FracQSeries js = series_from_json(to_json(a));
        CHECK(same_series(js, a));
        CHECK(js.cyclo_order() == a.cyclo_order());
    }
    CHECK(to_string(FracQSeries(1, 1, 0)) == "O(1)");
}

TEST_CASE("evaluation at a small q")
{
    PrecisionScope scope(128);
    // 1/(1 - q) at q = 1/100 to truncation 40.
    std::vector<std::pair<long, long>> geo;
    for (long k = 0; k < 40; ++k) {
        geo.emplace_back(k, 1);
    }
    const Complex v = evaluate_series(series_of(geo, 1, 40), Complex(Real(1) / 100));
    const Real want = Real(100) / 99;
    CHECK(abs(v - Complex(want)).convert_to<double>() < 1e-70);
}
