#include "support.hpp"

#include "fricke/errors.hpp"
#include "fricke/famgroup.hpp"
#include "fricke/modforms.hpp"

#include <doctest.h>

#include <set>

using namespace fricke;
using namespace fricke::testing;

namespace {

BigRational r(long n, long d = 1)
{
    return make_rational(n, d);
}

MatModN rand_gl2(int n)
{
    for (;;) {
        const MatModN m = make_mat(rand_int(0, n - 1), rand_int(0, n - 1), rand_int(0, n - 1),
                                   rand_int(0, n - 1), n);
        if (m.invertible()) {
            return m;
        }
    }
}

IndexVector rand_index(int n)
{
    for (;;) {
        const IndexVector v{rand_int(0, n - 1), rand_int(0, n - 1), n};
        if (v.primitive()) {
            return v;
        }
    }
}

std::vector<FamilyDescriptor> families(int n)
{
    std::vector<FamilyDescriptor> out{fricke_family(n), siegel_family(n, 12 * n)};
    if (n % 2 == 1 && !qn_set(n).empty()) {
        out.push_back(diff_family(n, qn_set(n).front()));
    }
    return out;
}

} // namespace

TEST_CASE("matrices mod N")
{
    const MatModN a = make_mat(2, 1, 1, 1, 5);
    CHECK(a.det() == 1);
    CHECK(mat_mul(a, mat_inverse(a)) == identity_mat(5));
    CHECK(to_string(make_mat(-1, 0, 0, 6, 5)) == "[4,0;0,1]");
    CHECK(make_mat(1, 0, 0, 1, 3).equal_mod_pm(make_mat(2, 0, 0, 2, 3)));
    CHECK_FALSE(make_mat(2, 0, 0, 1, 4).invertible());
}

TEST_CASE("act_F3 examples")
{
    for (int n : {2, 3, 5, 7}) {
        const MatModN s = make_mat(0, 1, -1, 0, n);
        CHECK(act_F3(make_index(1, 0, n), s) == make_index(0, 1, n));
        const IndexVector v{1, 2 % n == 0 ? 1 : 2, n};
        CHECK(act_F3(v, s) == IndexVector{-v.b, v.a, n}.reduced());
        const MatModN t = make_mat(1, 1, 0, 1, n);
        CHECK(act_F3(v, t) == IndexVector{v.a, v.a + v.b, n}.reduced());
        CHECK(act_F3(v, identity_mat(n)) == v.reduced());
    }
}

TEST_CASE("act_F3 is a right action")
{
    for (int n : {3, 4, 5, 6, 8}) {
        for (int rep = 0; rep < 20; ++rep) {
            const MatModN a = rand_gl2(n), b = rand_gl2(n);
            const IndexVector v = rand_index(n);
            CHECK(act_F3(v, mat_mul(a, b)) == act_F3(act_F3(v, a), b));
        }
    }
}

TEST_CASE("gl2_decompose")
{
    const MatModN a = make_mat(2, 1, 1, 1, 5);
    const auto d = gl2_decompose(a);
    CHECK(d.g_part == identity_mat(5));
    CHECK(d.sl_part == a);
    const auto e = gl2_decompose(make_mat(1, 0, 0, 3, 7));
    CHECK(e.g_part == make_mat(1, 0, 0, 3, 7));
    CHECK(e.sl_part == identity_mat(7));
    for (int n : {4, 5, 9, 12}) {
        for (int rep = 0; rep < 10; ++rep) {
            const MatModN m = rand_gl2(n);
            const auto x = gl2_decompose(m);
            CHECK(mat_mul(x.g_part, x.sl_part) == m);
            CHECK(x.sl_part.det() == 1);
            CHECK(x.g_part.d == m.det());
            CHECK(x.g_part.a == 1);
        }
    }
}

TEST_CASE("SL2 enumeration and cosets")
{
    CHECK(enumerate_sl2(2).size() == 6);
    CHECK(cosets_mod_pm_gamma(2).size() == 6);
    CHECK(enumerate_sl2(3).size() == 24);
    CHECK(cosets_mod_pm_gamma(3).size() == 12);
    for (int n = 2; n <= 8; ++n) {
        // |SL2(Z/N)| = N^3 prod (1 - 1/p^2)
        long order = n * n * n;
        for (long p = 2; p <= n; ++p) {
            bool prime = true;
            for (long d = 2; d * d <= p; ++d) {
                prime = prime && p % d != 0;
            }
            if (prime && n % p == 0) {
                order = order / (p * p) * (p * p - 1);
            }
        }
        CHECK(static_cast<long>(enumerate_sl2(n).size()) == order);
        const auto cos = cosets_mod_pm_gamma(n);
        CHECK(static_cast<long>(cos.size()) == (n == 2 ? order : order / 2));
        CHECK(cos.front() == identity_mat(n));
    }
}

TEST_CASE("Q_N")
{
    CHECK(qn_set(5) == std::vector<long>{2});
    CHECK(qn_set(7).empty());
    CHECK(qn_set(15) == std::vector<long>{4});
    CHECK(qn_set(13) == std::vector<long>{5});
    CHECK_THROWS_AS(qn_set(8), UsageError);
}

TEST_CASE("index classes")
{
    CHECK(index_class(make_index(2, 3, 5)) == make_index(2, 3, 5));
    CHECK(index_class(make_index(3, 2, 5)) == make_index(2, 3, 5));
    CHECK(index_classes(2).size() == 3);
    CHECK(index_classes(5).size() == 12);
}

TEST_CASE("family_series dispatch")
{
    const IndexVector v = make_index(1, 0, 5);
    CHECK(agree_to(family_series(fricke_family(5), v, 10), fricke_series(v, 10), r(10)));
    CHECK(agree_to(family_series(diff_family(5, 2), v, 10),
                   fricke_series(v, 10) - fricke_series(make_index(2, 0, 5), 10), r(10)));
    CHECK(agree_to(family_series(siegel_family(5, 60), v, 10),
                   siegel_power_series(v, 60, 10), r(10)));
    CHECK_THROWS_AS(family_series(fricke_family(5), make_index(1, 0, 4), 10), UsageError);
    CHECK_THROWS_AS(siegel_family(5, 24), UsageError);
    CHECK_THROWS_AS(diff_family(7, 2), UsageError);
    CHECK_THROWS_AS(family_series(siegel_generator(2, 1), make_index(1, 0, 2), 5), UsageError);
}

TEST_CASE("(F2) at series level")
{
    for (int n = 2; n <= 8; ++n) {
        for (const auto& f : families(n)) {
            for (int rep = 0; rep < 3; ++rep) {
                const IndexVector v = rand_index(n);
                CHECK(agree_to(family_series(f, v, 8), family_series(f, v.negated(), 8), r(8)));
            }
        }
    }
}

TEST_CASE("(F3) against the A1/A2 generator path")
{
    for (int n : {3, 4, 5}) {
        for (const auto& f : families(n)) {
            for (int rep = 0; rep < 3; ++rep) {
                const IndexVector v = rand_index(n);
                // diag(1, d)
                for (long d = 1; d < n; ++d) {
                    if (gcd_long(d, n) != 1) {
                        continue;
                    }
                    const MatModN g = make_mat(1, 0, 0, d, n);
                    CHECK(agree_to(galois_conjugate_series(f, v, g, 10),
                                   conjugate_via_generators(f, v, {{Generator::Diag, d}}, 10),
                                   r(10)));
                }
                // [1,1;0,1] and a mixed word
                const std::vector<Generator> w{{Generator::Translate, 1},
                                               {Generator::Diag, n - 1},
                                               {Generator::Translate, 1}};
                MatModN g = identity_mat(n);
                for (const auto& x : w) {
                    g = mat_mul(g, generator_matrix(x, n));
                }
                CHECK(agree_to(galois_conjugate_series(f, v, g, 10),
                               conjugate_via_generators(f, v, w, 10), r(10)));
            }
        }
    }
}

TEST_CASE("sigma and tau+1 paths on concrete members")
{
    const IndexVector v = make_index(1, 2, 5);
    const FamilyDescriptor f = fricke_family(5);
    CHECK(agree_to(apply_sigma(family_series(f, v, 10), 3),
                   family_series(f, make_index(1, 6, 5), 10), r(10)));
    CHECK(agree_to(shift_tau_plus_one(family_series(f, v, 10)),
                   family_series(f, make_index(1, 3, 5), 10), r(10)));
    CHECK(agree_to(galois_conjugate_series(f, v, identity_mat(5), 10), family_series(f, v, 10),
                   r(10)));
}

TEST_CASE("DiffFam sign identity")
{
    const FamilyDescriptor f = diff_family(5, 2);
    for (const auto& v : index_classes(5)) {
        const IndexVector av{2 * v.a, 2 * v.b, 5};
        CHECK(agree_to(family_series(f, av, 20), -family_series(f, v, 20), r(20)));
    }
}

TEST_CASE("product family conjugates")
{
    const FamilyDescriptor g = siegel_generator(2, 1);
    for (const auto& gamma : cosets_mod_pm_gamma(2)) {
        const FracQSeries s = conjugate_series(g, gamma, 12);
        CHECK(*ord_q(s).value == product_conjugate_order(g, gamma));
        // g^gamma is the product of the two transformed Siegel powers.
        const IndexVector w0 = act_F3(make_index(1, 0, 2), gamma);
        const IndexVector w1 = act_F3(make_index(0, 1, 2), gamma);
        const FracQSeries want =
            siegel_power_series(w0, 24, 20) * siegel_power_series(w1, 48, 20);
        CHECK(agree_to(s, want, r(12)));
    }
    CHECK(product_conjugate_order(g, identity_mat(2)) == r(3));
}
