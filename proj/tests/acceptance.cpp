// Acceptance run: one PASS/FAIL line per criterion on stdout, details on
// stderr. Exit status is nonzero when any criterion fails.

#include "fricke/cm.hpp"
#include "fricke/errors.hpp"
#include "fricke/modelcurve.hpp"
#include "fricke/modforms.hpp"
#include "fricke/primitivity.hpp"

#ifdef FRICKE_HAVE_CLI
#include "cli.hpp"
#endif

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <tuple>

using namespace fricke;

namespace {

BigRational r(long n, long d = 1)
{
    return make_rational(n, d);
}

BigInt pp(std::initializer_list<std::pair<int, int>> factors, int sign = 1)
{
    BigInt x = sign;
    for (auto [p, e] : factors) {
        BigInt t;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
        x *= t;
    }
    return x;
}

struct Check {
    bool ok = true;
    void expect(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            std::cerr << "    failed: " << what << "\n";
        }
    }
};

double real_of(const Real& x)
{
    return x.convert_to<double>();
}

// ---- 1 ----------------------------------------------------------------------

// (x-degree, y-degree) -> coefficient, for the N = 2, n = 1 model.
std::map<std::pair<int, int>, BigInt> expected_model()
{
    std::map<std::pair<int, int>, BigInt> m;
    m[{6, 0}] = 1;
    m[{5, 3}] = pp({{2, 1}}, -1);
    m[{5, 2}] = pp({{2, 8}, {3, 2}});
    m[{5, 1}] = pp({{2, 18}, {3, 1}});
    m[{5, 0}] = pp({{2, 25}, {3, 1}}, -1);
    m[{4, 6}] = 1;
    m[{4, 5}] = pp({{2, 9}, {3, 2}}, -1);
    m[{4, 4}] = pp({{2, 16}, {3, 2}, {13, 1}});
    m[{4, 3}] = pp({{2, 25}, {163, 1}}, -1);
    m[{4, 2}] = pp({{2, 36}, {3, 3}});
    m[{4, 1}] = pp({{2, 44}, {3, 1}}, -1);
    m[{4, 0}] = pp({{2, 48}, {3, 1}, {5, 1}});
    m[{3, 6}] = pp({{2, 25}}, -1);
    m[{3, 4}] = pp({{2, 40}, {3, 1}, {67, 1}});
    m[{3, 3}] = pp({{2, 55}, {7, 1}}, -1);
    m[{3, 2}] = pp({{2, 57}, {3, 2}, {47, 1}});
    m[{3, 1}] = pp({{2, 67}, {3, 2}});
    m[{3, 0}] = pp({{2, 74}, {5, 1}}, -1);
    m[{2, 6}] = pp({{2, 48}});
    m[{2, 5}] = pp({{2, 57}, {3, 2}}, -1);
    m[{2, 4}] = pp({{2, 64}, {3, 2}, {13, 1}});
    m[{2, 3}] = pp({{2, 73}, {163, 1}}, -1);
    m[{2, 2}] = pp({{2, 84}, {3, 3}});
    m[{2, 1}] = pp({{2, 92}, {3, 1}}, -1);
    m[{2, 0}] = pp({{2, 96}, {3, 1}, {5, 1}});
    m[{1, 3}] = pp({{2, 97}}, -1);
    m[{1, 2}] = pp({{2, 104}, {3, 2}});
    m[{1, 1}] = pp({{2, 114}, {3, 1}});
    m[{1, 0}] = pp({{2, 121}, {3, 1}}, -1);
    m[{0, 0}] = pp({{2, 144}});
    return m;
}

bool criterion1(ModelResult& out)
{
    Check c;
    out = model_polynomial(2, 1);
    const auto want = expected_model();
    c.expect(out.poly.coeffs.size() == want.size(),
             "model has " + std::to_string(out.poly.coeffs.size()) + " monomials, expected " +
                 std::to_string(want.size()));
    for (const auto& [ik, v] : want) {
        c.expect(out.poly.at(ik.first, ik.second) == v,
                 "coefficient x^" + std::to_string(ik.first) + " y^" + std::to_string(ik.second));
    }
#ifdef FRICKE_HAVE_CLI
    std::ostringstream so, se;
    const int code = cli::run({"model", "--N", "2", "--n", "1"}, so, se);
    std::ifstream g(std::string(FRICKE_TEST_DATA) + "/model_N2_n1.golden", std::ios::binary);
    std::ostringstream golden;
    golden << g.rdbuf();
    c.expect(code == 0 && so.str() == golden.str(), "CLI model output equals the golden file");
#endif
    return c.ok;
}

// ---- 2 ----------------------------------------------------------------------

bool criterion2(std::vector<std::tuple<IndexVector, FracQSeries>>& kept)
{
    Check c;
    for (int n = 2; n <= 8; ++n) {
        for (long a = 0; a < n; ++a) {
            for (long b = 0; b < n; ++b) {
                const IndexVector v{a, b, n};
                if (!v.primitive()) {
                    continue;
                }
                const FracQSeries s = siegel_power_series(v, 12L * n, n + 2);
                const QOrder o = ord_q(s);
                const BigRational want = bernoulli2(frac_part(v.v1())) * 6 * n;
                c.expect(o.value && *o.value == want, "ord of g_" + to_string(v) + "^" +
                                                          std::to_string(12 * n));
                kept.emplace_back(v, s);
            }
        }
    }
    return c.ok;
}

// ---- 3 ----------------------------------------------------------------------

struct TorsionData {
    FracQSeries sum{1, 1, 0};
    JPolynomial s2, s3;
};

TorsionData torsion_symmetric(long T)
{
    const FracQSeries a = fricke_series(make_index(1, 0, 2), T);
    const FracQSeries b = fricke_series(make_index(0, 1, 2), T);
    const FracQSeries c = fricke_series(make_index(1, 1, 2), T);
    TorsionData d;
    d.sum = a + b + c;
    d.s2 = j_reduce(normalize_series(*project_series(a * b + a * c + b * c, 1)));
    d.s3 = j_reduce(normalize_series(*project_series(a * b * c, 1)));
    return d;
}

bool same_jpoly(const JPolynomial& x, const std::vector<long>& want)
{
    if (x.coeffs.size() != want.size()) {
        return false;
    }
    for (std::size_t i = 0; i < want.size(); ++i) {
        if (!(x.coeffs[i] == CycloElem(x.coeffs[i].order(), BigRational(want[i])))) {
            return false;
        }
    }
    return true;
}

bool criterion3(TorsionData& kept)
{
    Check c;
    kept = torsion_symmetric(60);
    c.expect(kept.sum.is_zero_to_precision() && kept.sum.trunc() >= r(60),
             "f_[1/2,0] + f_[0,1/2] + f_[1/2,1/2] = 0 to T = 60");
    // -3 j (j - 1728) and -2 j (j - 1728)^2
    c.expect(same_jpoly(kept.s2, {0, 5184, -3}), "sigma_2 = -3j(j-1728)");
    c.expect(same_jpoly(kept.s3, {0, -2L * 1728 * 1728, 4 * 1728, -2}), "sigma_3 = -2j(j-1728)^2");
    return c.ok;
}

// ---- 4 ----------------------------------------------------------------------

std::vector<FamilyDescriptor> builtin_families(int n)
{
    std::vector<FamilyDescriptor> out{fricke_family(n), siegel_family(n, 12L * n)};
    if (n % 2 == 1) {
        for (long a : qn_set(n)) {
            out.push_back(diff_family(n, a));
        }
    }
    return out;
}

struct ShiftSample {
    FamilyDescriptor f;
    IndexVector v;
    FracQSeries shifted;
};

bool criterion4(std::vector<ShiftSample>& kept)
{
    Check c;
    std::mt19937_64 gen(4242);
    for (int n : {2, 3, 5}) {
        for (const auto& f : builtin_families(n)) {
            for (int i = 0; i < 10; ++i) {
                IndexVector v;
                do {
                    v = IndexVector{static_cast<long>(gen() % n), static_cast<long>(gen() % n), n};
                } while (!v.primitive());
                const FracQSeries lhs = shift_tau_plus_one(family_series(f, v, 40));
                const FracQSeries rhs = family_series(f, IndexVector{v.a, v.a + v.b, n}, 40);
                c.expect(agree_to(lhs, rhs, r(40)),
                         describe(f) + " at " + to_string(v) + ": tau+1 vs [v1, v1+v2]");
                kept.push_back({f, v, lhs});
            }
        }
    }
    return c.ok;
}

// ---- 5 ----------------------------------------------------------------------

struct PrimRun {
    FamilyDescriptor f;
    std::optional<PrimitivityReport> prim;
    std::optional<TotalPrimitivityReport> total;
};

bool all_distinct(const PrimitivityReport& p)
{
    for (const auto& c : p.certificates) {
        if (!std::holds_alternative<Distinct>(c.cert)) {
            return false;
        }
    }
    return true;
}

bool criterion5(std::vector<PrimRun>& kept)
{
    Check c;
    const long T = 40;
    const CheckOptions opts{15};
    for (int n = 2; n <= 7; ++n) {
        const FamilyDescriptor f = siegel_family(n, 12L * n);
        const auto t = check_totally_primitive(f, T, opts);
        c.expect(t.verdict == TotalVerdict::TotallyPrimitive, describe(f) + " totally primitive");
        kept.push_back({f, std::nullopt, t});
    }
    for (auto [n, a] : {std::pair{5, 2L}, {15, 4L}}) {
        const FamilyDescriptor f = diff_family(n, a);
        const auto p = check_primitive(f, T, opts);
        c.expect(p.verdict == PrimitivityVerdict::Primitive && all_distinct(p),
                 describe(f) + " primitive with Distinct certificates");
        const auto t = check_totally_primitive(f, T, opts);
        bool witness = false;
        for (const auto& ra : t.ratios) {
            const auto* cand = std::get_if<ConstantRatioCandidate>(&ra.result);
            if (cand && cand->exact && cand->root_of_unity_order == 2 &&
                cand->constant == CycloElem(cand->constant.order(), r(-1)) &&
                index_class(IndexVector{a * ra.u.a, a * ra.u.b, n}) == ra.v) {
                witness = true;
            }
        }
        c.expect(t.verdict == TotalVerdict::NotTotallyPrimitive && witness,
                 describe(f) + " constant ratio -1 on (v, av)");
        kept.push_back({f, p, t});
    }
    for (int n : {7, 11, 13}) {
        const FamilyDescriptor f = fricke_family(n);
        const auto t = check_totally_primitive(f, T, opts);
        c.expect(t.verdict == TotalVerdict::TotallyPrimitive, describe(f) + " totally primitive");
        kept.push_back({f, std::nullopt, t});
    }
    return c.ok;
}

// ---- 6 ----------------------------------------------------------------------

bool criterion6()
{
    Check c;
    for (int n : {2, 3, 5}) {
        const auto rep = stabilizer_check_fricke(n);
        c.expect(rep.verdict == StabilizerVerdict::TrivialStabilizer,
                 "Fricke stabilizer N = " + std::to_string(n));
    }
    for (int n : {2, 3}) {
        const auto rep = stabilizer_check_siegel(n, 1);
        c.expect(rep.verdict == StabilizerVerdict::TrivialStabilizer,
                 "Siegel stabilizer N = " + std::to_string(n));
    }
    return c.ok;
}

// ---- 7 ----------------------------------------------------------------------

bool criterion7(const BivarIntPoly& model)
{
    Check c;
    {
        PrecisionScope scope(128);
        const Complex j7 = eval_j_at_cm(make_field(-7), 128, 30).value;
        const Complex j4 = eval_j_at_cm(make_field(-4), 128, 30).value;
        c.expect(real_of(abs(j7 - Complex(Real(-3375)))) < 1e-6, "(a) j(tau_K) = -3375 for d = -7");
        c.expect(real_of(abs(j4 - Complex(Real(1728)))) < 1e-6, "(a) j(tau_K) = 1728 for d = -4");
    }
    for (auto [d, n] : {std::pair{-7L, 3}, {-8L, 3}, {-11L, 2}, {-11L, 3}}) {
        const ImagQuadData K = make_field(d);
        for (long e : {1L, -1L, 2L}) {
            const CMReport rep = cm_conjugates(siegel_family(n, 12L * n), e, K);
            const std::string tag = "(b) d = " + std::to_string(d) + ", N = " + std::to_string(n) +
                                    ", n = " + std::to_string(e);
            const std::size_t want = reciprocity_group(K, n).pm_classes.size();
            c.expect(rep.values.size() == want && rep.distinct,
                     tag + ": " + std::to_string(rep.values.size()) +
                         " conjugates pairwise distinct at 1e-6 (min distance " +
                         (rep.values.size() < 2 ? std::string("inf")
                                                : to_string(rep.min_distance, 6)) +
                         ")");
            if (K.class_number == 1) {
                Real worst = 0;
                for (const auto& x : rep.residuals) {
                    worst = std::max(worst, x);
                }
                c.expect(rep.near_integral.value_or(false),
                         tag + ": coefficients within 1e-4 of Z + Z tau_K (max residual " +
                             to_string(worst, 6) + ")");
            }
        }
    }
    {
        PrecisionScope scope(128);
        const Real res = model_residual_at_cm(model, 2, 1, make_field(-7), 128, 30);
        c.expect(res < 1e-2, "(c) f_2(g, j) at tau_K relative residual " + to_string(res, 6));
    }
    return c.ok;
}

// ---- 8 ----------------------------------------------------------------------

bool criterion8(const ModelResult& model,
                const std::vector<std::tuple<IndexVector, FracQSeries>>& siegel,
                const TorsionData& torsion, const std::vector<ShiftSample>& shifts,
                const std::vector<PrimRun>& prims)
{
    Check c;
    const long bump = 20;

    const ModelResult hi = model_polynomial(2, 1, model.precision + bump);
    c.expect(hi.poly.coeffs == model.poly.coeffs, "model unchanged at T + 20");

    for (const auto& [v, s] : siegel) {
        const FracQSeries h = siegel_power_series(v, 12L * v.level, v.level + 2 + bump);
        c.expect(agree_to(s, h, s.trunc()), "g_" + to_string(v) + " unchanged at T + 20");
    }

    const TorsionData t = torsion_symmetric(60 + bump);
    c.expect(t.sum.is_zero_to_precision(), "2-torsion sum still zero at T = 80");
    c.expect(same_jpoly(t.s2, {0, 5184, -3}) && same_jpoly(t.s3, {0, -2L * 1728 * 1728, 4 * 1728, -2}),
             "2-torsion j-polynomials unchanged at T = 80");

    for (const auto& s : shifts) {
        const FracQSeries h = shift_tau_plus_one(family_series(s.f, s.v, 40 + bump));
        c.expect(agree_to(s.shifted, h, r(40)),
                 describe(s.f) + " at " + to_string(s.v) + " unchanged at T + 20");
    }

    const CheckOptions opts{15};
    for (const auto& p : prims) {
        if (p.prim) {
            const auto q = check_primitive(p.f, p.prim->precision + bump, opts);
            bool same = q.certificates.size() == p.prim->certificates.size();
            for (std::size_t i = 0; same && i < q.certificates.size(); ++i) {
                const auto* a = std::get_if<Distinct>(&p.prim->certificates[i].cert);
                const auto* b = std::get_if<Distinct>(&q.certificates[i].cert);
                same = a && b && a->exponent == b->exponent && a->coeff_a == b->coeff_a &&
                       a->coeff_b == b->coeff_b;
            }
            c.expect(same, describe(p.f) + " primitivity certificates unchanged at T + 20");
        }
        if (p.total) {
            const auto q = check_totally_primitive(p.f, p.total->precision + bump, opts);
            bool same = q.verdict == p.total->verdict && q.ratios.size() == p.total->ratios.size();
            for (std::size_t i = 0; same && i < q.ratios.size(); ++i) {
                const auto& a = p.total->ratios[i].result;
                const auto& b = q.ratios[i].result;
                if (const auto* x = std::get_if<NonConstantRatio>(&a)) {
                    const auto* y = std::get_if<NonConstantRatio>(&b);
                    same = y && x->exponent == y->exponent;
                } else if (const auto* x = std::get_if<ConstantRatioCandidate>(&a)) {
                    const auto* y = std::get_if<ConstantRatioCandidate>(&b);
                    same = y && x->constant == y->constant;
                } else {
                    same = false;
                }
            }
            c.expect(same, describe(p.f) + " ratio certificates unchanged at T + 20");
        }
    }
    return c.ok;
}

bool report(int id, const std::string& title, const std::function<bool()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::cerr << "criterion " << id << ": " << title << "\n";
    try {
        ok = body();
    } catch (const std::exception& e) {
        std::cerr << "    exception: " << e.what() << "\n";
        ok = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(1);
    line << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << secs
         << " s)";
    std::cout << line.str() << std::endl;
    return ok;
}

} // namespace

int main()
{
    ModelResult model;
    std::vector<std::tuple<IndexVector, FracQSeries>> siegel;
    TorsionData torsion;
    std::vector<ShiftSample> shifts;
    std::vector<PrimRun> prims;

    bool all = true;
    all &= report(1, "model N=2, n=1 matches every reference coefficient",
                  [&] { return criterion1(model); });
    all &= report(2, "ord_q(g_v^12N) = 6N B2(<v1>) for N = 2..8", [&] { return criterion2(siegel); });
    all &= report(3, "2-torsion Fricke symmetric functions", [&] { return criterion3(torsion); });
    all &= report(4, "tau+1 consistency for built-in families, N = 2, 3, 5",
                  [&] { return criterion4(shifts); });
    all &= report(5, "primitivity and total primitivity suite at T = 40",
                  [&] { return criterion5(prims); });
    all &= report(6, "trivial stabilizers", [] { return criterion6(); });
    all &= report(7, "CM suite", [&] {
        return criterion7(model.poly.coeffs.empty() ? model_polynomial_only(2, 1) : model.poly);
    });
    all &= report(8, "raising T by 20 changes no reported coefficient", [&] {
        if (model.poly.coeffs.empty() || prims.empty()) {
            std::cerr << "    earlier criteria did not produce data\n";
            return false;
        }
        return criterion8(model, siegel, torsion, shifts, prims);
    });
    return all ? 0 : 1;
}
