#include "fricke/famgroup.hpp"

#include "fricke/errors.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace fricke {

MatModN MatModN::reduced() const
{
    return MatModN{mod_floor(a, level), mod_floor(b, level), mod_floor(c, level),
                   mod_floor(d, level), level};
}

long MatModN::det() const
{
    return mod_floor(a * d - b * c, level);
}

MatModN MatModN::transpose() const
{
    return MatModN{a, c, b, d, level};
}

MatModN MatModN::negated() const
{
    return MatModN{-a, -b, -c, -d, level}.reduced();
}

bool MatModN::invertible() const
{
    return gcd_long(det(), level) == 1;
}

bool MatModN::equal_mod_pm(const MatModN& o) const
{
    return *this == o || *this == o.negated();
}

bool operator==(const MatModN& x, const MatModN& y)
{
    if (x.level != y.level) {
        return false;
    }
    const MatModN p = x.reduced();
    const MatModN q = y.reduced();
    return p.a == q.a && p.b == q.b && p.c == q.c && p.d == q.d;
}

MatModN make_mat(long a, long b, long c, long d, int level)
{
    if (level < 2) {
        throw UsageError("level N must be at least 2");
    }
    return MatModN{a, b, c, d, level}.reduced();
}

MatModN identity_mat(int level)
{
    return make_mat(1, 0, 0, 1, level);
}

MatModN mat_mul(const MatModN& x, const MatModN& y)
{
    if (x.level != y.level) {
        throw UsageError("matrix level mismatch");
    }
    return make_mat(x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
                    x.c * y.b + x.d * y.d, x.level);
}

MatModN mat_inverse(const MatModN& x)
{
    const long di = inverse_mod(x.det(), x.level);
    return make_mat(x.d * di, -x.b * di, -x.c * di, x.a * di, x.level);
}

std::string to_string(const MatModN& m)
{
    const MatModN r = m.reduced();
    return "[" + std::to_string(r.a) + "," + std::to_string(r.b) + ";" + std::to_string(r.c) +
           "," + std::to_string(r.d) + "]";
}

MatModN pm_canonical(const MatModN& m)
{
    const MatModN p = m.reduced();
    const MatModN q = m.negated();
    return std::tie(p.a, p.b, p.c, p.d) <= std::tie(q.a, q.b, q.c, q.d) ? p : q;
}

IndexVector act_F3(const IndexVector& v, const MatModN& alpha)
{
    if (v.level != alpha.level) {
        throw UsageError("index and matrix have different levels");
    }
    if (!alpha.invertible()) {
        throw UsageError("matrix " + to_string(alpha) + " is not invertible mod N");
    }
    return IndexVector{alpha.a * v.a + alpha.c * v.b, alpha.b * v.a + alpha.d * v.b, v.level}
        .reduced();
}

GL2Decomposition gl2_decompose(const MatModN& alpha)
{
    if (!alpha.invertible()) {
        throw UsageError("matrix " + to_string(alpha) + " is not invertible mod N");
    }
    const long d = alpha.det();
    const long di = inverse_mod(d, alpha.level);
    return GL2Decomposition{make_mat(1, 0, 0, d, alpha.level),
                            make_mat(alpha.a, alpha.b, alpha.c * di, alpha.d * di, alpha.level)};
}

std::vector<MatModN> enumerate_sl2(int level)
{
    if (level < 2) {
        throw UsageError("level N must be at least 2");
    }
    std::vector<MatModN> out;
    for (long a = 0; a < level; ++a) {
        for (long b = 0; b < level; ++b) {
            for (long c = 0; c < level; ++c) {
                for (long d = 0; d < level; ++d) {
                    if (mod_floor(a * d - b * c, level) == 1 % level) {
                        out.push_back(MatModN{a, b, c, d, level});
                    }
                }
            }
        }
    }
    return out;
}

std::vector<MatModN> cosets_mod_pm_gamma(int level)
{
    std::vector<MatModN> reps;
    for (const auto& m : enumerate_sl2(level)) {
        const MatModN c = pm_canonical(m);
        if (c == m) {
            reps.push_back(c);
        }
    }
    const MatModN id = pm_canonical(identity_mat(level));
    std::stable_partition(reps.begin(), reps.end(), [&](const MatModN& m) { return m == id; });
    if (reps.empty() || !(reps.front() == id)) {
        throw ConsistencyError("identity missing from the coset list");
    }
    return reps;
}

std::vector<long> qn_set(int level)
{
    if (level < 2) {
        throw UsageError("level N must be at least 2");
    }
    if (level % 2 == 0) {
        throw UsageError("Q_N is defined for odd N only");
    }
    std::vector<long> out;
    for (long a = 1; 2 * a <= level; ++a) {
        const long r = mod_floor(a, level);
        if (r == 1 || r == level - 1) {
            continue;
        }
        const long sq = mod_floor(a * a, level);
        if (sq == 1 || sq == level - 1) {
            out.push_back(a);
        }
    }
    return out;
}

IndexVector index_class(const IndexVector& v)
{
    const IndexVector p = v.reduced();
    const IndexVector q = v.negated();
    return std::tie(p.a, p.b) <= std::tie(q.a, q.b) ? p : q;
}

std::vector<IndexVector> index_classes(int level)
{
    if (level < 2) {
        throw UsageError("level N must be at least 2");
    }
    std::vector<IndexVector> out;
    for (long a = 0; a < level; ++a) {
        for (long b = 0; b < level; ++b) {
            IndexVector v{a, b, level};
            if (v.primitive() && index_class(v) == v) {
                out.push_back(v);
            }
        }
    }
    return out;
}

FamilyDescriptor fricke_family(int level)
{
    if (level < 2) {
        throw UsageError("level N must be at least 2");
    }
    return FamilyDescriptor{FamilyKind::Fricke, level, 0, 0, {}};
}

FamilyDescriptor siegel_family(int level, long exponent)
{
    if (level < 2) {
        throw UsageError("level N must be at least 2");
    }
    if (exponent == 0 || exponent % (12L * level) != 0) {
        throw UsageError("Siegel exponent must be a nonzero multiple of 12N");
    }
    return FamilyDescriptor{FamilyKind::SiegelPow, level, exponent, 0, {}};
}

FamilyDescriptor diff_family(int level, long a)
{
    const auto q = qn_set(level);
    if (std::find(q.begin(), q.end(), a) == q.end()) {
        throw UsageError(std::to_string(a) + " is not in Q_" + std::to_string(level));
    }
    return FamilyDescriptor{FamilyKind::Diff, level, 0, a, {}};
}

FamilyDescriptor product_family(int level, std::vector<ProductFactor> factors)
{
    if (level < 2) {
        throw UsageError("level N must be at least 2");
    }
    if (factors.empty()) {
        throw UsageError("product family needs at least one factor");
    }
    for (const auto& f : factors) {
        if (f.slot != 0 && f.slot != 1) {
            throw UsageError("product factor slot must be 0 or 1");
        }
        if (f.exponent == 0 || f.exponent % (12L * level) != 0) {
            throw UsageError("product factor exponent must be a nonzero multiple of 12N");
        }
    }
    return FamilyDescriptor{FamilyKind::Product, level, 0, 0, std::move(factors)};
}

FamilyDescriptor siegel_generator(int level, long n)
{
    if (n == 0) {
        throw UsageError("n must be nonzero");
    }
    return product_family(level, {{0, 12L * level * n}, {1, 24L * level * n}});
}

std::string describe(const FamilyDescriptor& f)
{
    switch (f.kind) {
    case FamilyKind::Fricke:
        return "fricke(N=" + std::to_string(f.level) + ")";
    case FamilyKind::SiegelPow:
        return "siegel^" + std::to_string(f.exponent) + "(N=" + std::to_string(f.level) + ")";
    case FamilyKind::Diff:
        return "diff:" + std::to_string(f.diff_a) + "(N=" + std::to_string(f.level) + ")";
    case FamilyKind::Product: {
        std::string s = "product(N=" + std::to_string(f.level) + ";";
        for (const auto& x : f.factors) {
            s += " w" + std::to_string(x.slot) + "^" + std::to_string(x.exponent);
        }
        return s + ")";
    }
    }
    return "?";
}

FracQSeries family_series(const FamilyDescriptor& f, const IndexVector& v0, long T)
{
    if (v0.level != f.level) {
        throw UsageError("index level " + std::to_string(v0.level) + " differs from family level " +
                         std::to_string(f.level));
    }
    const IndexVector v = make_index(v0.a, v0.b, v0.level);
    if (!v.primitive()) {
        throw UsageError("index " + to_string(v) + " is not in V_N (N is not its least denominator)");
    }
    switch (f.kind) {
    case FamilyKind::Fricke:
        return fricke_series(v, T);
    case FamilyKind::SiegelPow:
        return siegel_power_series(v, f.exponent, T);
    case FamilyKind::Diff:
        return series_sub(fricke_series(v, T),
                          fricke_series(IndexVector{f.diff_a * v.a, f.diff_a * v.b, v.level}.reduced(),
                                        T));
    case FamilyKind::Product:
        throw UsageError("product families are not indexed by v; use conjugate_series");
    }
    throw ConsistencyError("unknown family kind");
}

FracQSeries galois_conjugate_series(const FamilyDescriptor& f, const IndexVector& v,
                                    const MatModN& alpha, long T)
{
    return family_series(f, act_F3(v, alpha), T);
}

namespace {

IndexVector slot_vector(int slot, int level)
{
    return slot == 0 ? IndexVector{1, 0, level} : IndexVector{0, 1, level};
}

BigRational siegel_order(const IndexVector& w, long m)
{
    BigRational o = bernoulli2(frac_part(w.v1())) * m / 2;
    o.canonicalize();
    return o;
}

long ceil_rational(const BigRational& x)
{
    BigInt c;
    mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return c.get_si();
}

} // namespace

BigRational product_conjugate_order(const FamilyDescriptor& f, const MatModN& alpha)
{
    if (f.kind != FamilyKind::Product) {
        throw UsageError("product_conjugate_order needs a product family");
    }
    BigRational total = 0;
    for (const auto& x : f.factors) {
        total += siegel_order(act_F3(slot_vector(x.slot, f.level), alpha), x.exponent);
    }
    return total;
}

FracQSeries conjugate_series(const FamilyDescriptor& f, const MatModN& alpha, long T)
{
    if (f.kind != FamilyKind::Product) {
        throw UsageError("conjugate_series needs a product family");
    }
    if (alpha.level != f.level) {
        throw UsageError("matrix level differs from family level");
    }
    std::vector<IndexVector> ws;
    std::vector<BigRational> ords;
    BigRational total = 0;
    for (const auto& x : f.factors) {
        ws.push_back(act_F3(slot_vector(x.slot, f.level), alpha));
        ords.push_back(siegel_order(ws.back(), x.exponent));
        total += ords.back();
    }
    std::optional<FracQSeries> acc;
    for (std::size_t i = 0; i < ws.size(); ++i) {
        // the other factors shift this one's precision by their orders
        const long ti = std::max<long>(1, ceil_rational(BigRational(T) - (total - ords[i])));
        FracQSeries s = siegel_power_series(ws[i], f.factors[i].exponent, ti);
        acc = acc ? series_mul(*acc, s) : s;
    }
    if (acc->trunc() < T) {
        throw ConsistencyError("product conjugate fell short of the requested truncation");
    }
    return truncate_series(*acc, BigRational(T));
}

MatModN generator_matrix(const Generator& g, int level)
{
    if (g.kind == Generator::Diag) {
        if (gcd_long(mod_floor(g.d, level), level) != 1) {
            throw UsageError("diag(1, d) needs d prime to N");
        }
        return make_mat(1, 0, 0, g.d, level);
    }
    return make_mat(1, 1, 0, 1, level);
}

FracQSeries conjugate_via_generators(const FamilyDescriptor& f, const IndexVector& v,
                                     const std::vector<Generator>& word, long T)
{
    FracQSeries s = family_series(f, v, T);
    for (const auto& g : word) {
        if (g.kind == Generator::Diag) {
            generator_matrix(g, f.level);
            s = apply_sigma(s, g.d);
        } else {
            s = shift_tau_plus_one(s);
        }
    }
    return s;
}

} // namespace fricke
