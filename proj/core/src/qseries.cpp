#include "fricke/qseries.hpp"

#include "fricke/errors.hpp"

#include <algorithm>
#include <limits>

namespace fricke {

FracQSeries::FracQSeries(int cyclo_order, int exp_den, long trunc_index)
    : order_(cyclo_order), den_(exp_den), trunc_(trunc_index)
{
    if (cyclo_order <= 0 || exp_den <= 0) {
        throw UsageError("series order and exponent denominator must be positive");
    }
}

FracQSeries FracQSeries::from_terms(int cyclo_order, int exp_den, long trunc_index,
                                    std::vector<Term> terms)
{
    FracQSeries s(cyclo_order, exp_den, trunc_index);
    std::stable_sort(terms.begin(), terms.end(),
                     [](const Term& x, const Term& y) { return x.first < y.first; });
    for (auto& t : terms) {
        if (t.second.order() != cyclo_order) {
            throw UsageError("series term has cyclotomic order " +
                             std::to_string(t.second.order()) + ", expected " +
                             std::to_string(cyclo_order));
        }
        if (t.first >= trunc_index) {
            break;
        }
        if (!s.terms_.empty() && s.terms_.back().first == t.first) {
            s.terms_.back().second += t.second;
        } else {
            s.terms_.push_back(std::move(t));
        }
    }
    std::erase_if(s.terms_, [](const Term& t) { return t.second.is_zero(); });
    return s;
}

FracQSeries FracQSeries::constant(const CycloElem& c, int exp_den, long trunc_index)
{
    return monomial(c, 0, exp_den, trunc_index);
}

FracQSeries FracQSeries::monomial(const CycloElem& c, long index, int exp_den, long trunc_index)
{
    std::vector<Term> t;
    t.emplace_back(index, c);
    return from_terms(c.order(), exp_den, trunc_index, std::move(t));
}

std::optional<long> FracQSeries::ord_index() const
{
    if (terms_.empty()) {
        return std::nullopt;
    }
    return terms_.front().first;
}

CycloElem FracQSeries::coeff_at(long index) const
{
    if (index >= trunc_) {
        throw PrecisionError("coefficient of q^(" + std::to_string(index) + "/" +
                             std::to_string(den_) + ") lies past the truncation");
    }
    auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                               [](const Term& t, long k) { return t.first < k; });
    if (it != terms_.end() && it->first == index) {
        return it->second;
    }
    return CycloElem(order_);
}

CycloElem FracQSeries::coeff(const BigRational& e) const
{
    BigRational scaled = e * den_;
    if (scaled.get_den() != 1) {
        throw UsageError("exponent " + to_string(e) + " is not in (1/" + std::to_string(den_) +
                         ")Z");
    }
    return coeff_at(scaled.get_num().get_si());
}

const CycloElem& FracQSeries::leading_coeff() const
{
    if (terms_.empty()) {
        throw PrecisionError("series is zero to precision");
    }
    return terms_.front().second;
}

QOrder ord_q(const FracQSeries& a)
{
    if (auto k = a.ord_index()) {
        return QOrder{make_rational(*k, a.exp_den())};
    }
    return QOrder{};
}

FracQSeries lift_series(const FracQSeries& a, int cyclo_order, int exp_den)
{
    if (cyclo_order % a.cyclo_order() != 0 || exp_den % a.exp_den() != 0) {
        throw UsageError("lift_series: target order/denominator must be multiples");
    }
    if (cyclo_order == a.cyclo_order() && exp_den == a.exp_den()) {
        return a;
    }
    const long scale = exp_den / a.exp_den();
    std::vector<FracQSeries::Term> terms;
    terms.reserve(a.terms().size());
    for (const auto& [k, c] : a.terms()) {
        terms.emplace_back(k * scale, cyclo_lift(c, cyclo_order));
    }
    return FracQSeries::from_terms(cyclo_order, exp_den, a.trunc_index() * scale,
                                   std::move(terms));
}

namespace {

std::pair<int, int> common_shape(const FracQSeries& a, const FracQSeries& b)
{
    return {static_cast<int>(lcm_long(a.cyclo_order(), b.cyclo_order())),
            static_cast<int>(lcm_long(a.exp_den(), b.exp_den()))};
}

std::vector<long> divisors(long n)
{
    std::vector<long> out;
    for (long d = 1; d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
        }
    }
    return out;
}

} // namespace

std::optional<FracQSeries> project_series(const FracQSeries& a, int cyclo_order)
{
    std::vector<FracQSeries::Term> terms;
    terms.reserve(a.terms().size());
    for (const auto& [k, c] : a.terms()) {
        auto p = cyclo_project(c, cyclo_order);
        if (!p) {
            return std::nullopt;
        }
        terms.emplace_back(k, std::move(*p));
    }
    return FracQSeries::from_terms(cyclo_order, a.exp_den(), a.trunc_index(), std::move(terms));
}

FracQSeries normalize_series(const FracQSeries& a)
{
    long g = a.exp_den();
    g = gcd_long(g, a.trunc_index());
    for (const auto& t : a.terms()) {
        g = gcd_long(g, t.first);
    }
    FracQSeries cur = a;
    if (g > 1) {
        std::vector<FracQSeries::Term> terms;
        for (const auto& [k, c] : a.terms()) {
            terms.emplace_back(k / g, c);
        }
        cur = FracQSeries::from_terms(a.cyclo_order(), static_cast<int>(a.exp_den() / g),
                                      a.trunc_index() / g, std::move(terms));
    }
    for (long m : divisors(cur.cyclo_order())) {
        if (m == cur.cyclo_order()) {
            break;
        }
        if (auto p = project_series(cur, static_cast<int>(m))) {
            return *p;
        }
    }
    return cur;
}

FracQSeries truncate_series(const FracQSeries& a, const BigRational& trunc)
{
    BigRational scaled = trunc * a.exp_den();
    if (scaled.get_den() != 1) {
        throw UsageError("truncation must lie in (1/D)Z");
    }
    const long t = scaled.get_num().get_si();
    if (t > a.trunc_index()) {
        throw PrecisionError("cannot raise the truncation of a series");
    }
    std::vector<FracQSeries::Term> terms(a.terms().begin(), a.terms().end());
    return FracQSeries::from_terms(a.cyclo_order(), a.exp_den(), t, std::move(terms));
}

FracQSeries series_add(const FracQSeries& a0, const FracQSeries& b0)
{
    auto [m, d] = common_shape(a0, b0);
    const FracQSeries a = lift_series(a0, m, d);
    const FracQSeries b = lift_series(b0, m, d);
    const long t = std::min(a.trunc_index(), b.trunc_index());
    std::vector<FracQSeries::Term> terms;
    terms.reserve(a.terms().size() + b.terms().size());
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
            if (ia->first >= t) {
                break;
            }
            terms.push_back(*ia++);
        } else if (ia == a.terms().end() || ib->first < ia->first) {
            if (ib->first >= t) {
                break;
            }
            terms.push_back(*ib++);
        } else {
            if (ia->first >= t) {
                break;
            }
            CycloElem c = ia->second + ib->second;
            if (!c.is_zero()) {
                terms.emplace_back(ia->first, std::move(c));
            }
            ++ia;
            ++ib;
        }
    }
    return FracQSeries::from_terms(m, d, t, std::move(terms));
}

FracQSeries series_neg(const FracQSeries& a)
{
    return series_scale(a, BigRational(-1));
}

FracQSeries series_sub(const FracQSeries& a, const FracQSeries& b)
{
    return series_add(a, series_neg(b));
}

FracQSeries series_scale(const FracQSeries& a, const BigRational& c)
{
    std::vector<FracQSeries::Term> terms;
    if (c != 0) {
        terms.reserve(a.terms().size());
        for (const auto& [k, x] : a.terms()) {
            terms.emplace_back(k, x * c);
        }
    }
    return FracQSeries::from_terms(a.cyclo_order(), a.exp_den(), a.trunc_index(),
                                   std::move(terms));
}

FracQSeries series_scale(const FracQSeries& a0, const CycloElem& c0)
{
    if (c0.is_rational()) {
        return series_scale(a0, c0.rational_part());
    }
    const int m = static_cast<int>(lcm_long(a0.cyclo_order(), c0.order()));
    const FracQSeries a = lift_series(a0, m, a0.exp_den());
    const CycloElem c = cyclo_lift(c0, m);
    std::vector<FracQSeries::Term> terms;
    terms.reserve(a.terms().size());
    for (const auto& [k, x] : a.terms()) {
        terms.emplace_back(k, cyclo_mul(x, c));
    }
    return FracQSeries::from_terms(m, a.exp_den(), a.trunc_index(), std::move(terms));
}

FracQSeries series_shift(const FracQSeries& a0, const BigRational& e)
{
    const int d = static_cast<int>(lcm_long(a0.exp_den(), e.get_den().get_si()));
    const FracQSeries a = lift_series(a0, a0.cyclo_order(), d);
    const BigRational scaled = e * d;
    const long s = scaled.get_num().get_si();
    std::vector<FracQSeries::Term> terms;
    terms.reserve(a.terms().size());
    for (const auto& [k, x] : a.terms()) {
        terms.emplace_back(k + s, x);
    }
    return FracQSeries::from_terms(a.cyclo_order(), d, a.trunc_index() + s, std::move(terms));
}

namespace {

// Coefficients scaled to a common denominator, as integer coordinate vectors.
struct IntegerImage {
    BigInt den = 1;
    std::vector<long> index;
    std::vector<std::vector<BigInt>> coords;
    std::vector<std::vector<int>> support;
};

IntegerImage integer_image(const FracQSeries& a)
{
    IntegerImage img;
    for (const auto& t : a.terms()) {
        const BigInt d = t.second.denominator();
        mpz_lcm(img.den.get_mpz_t(), img.den.get_mpz_t(), d.get_mpz_t());
    }
    img.index.reserve(a.terms().size());
    img.coords.reserve(a.terms().size());
    img.support.reserve(a.terms().size());
    for (const auto& [k, c] : a.terms()) {
        std::vector<BigInt> v(c.coeffs().size());
        std::vector<int> sup;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const BigRational& x = c.coeffs()[i];
            if (x != 0) {
                v[i] = x.get_num() * (img.den / x.get_den());
                sup.push_back(static_cast<int>(i));
            }
        }
        img.index.push_back(k);
        img.coords.push_back(std::move(v));
        img.support.push_back(std::move(sup));
    }
    return img;
}

} // namespace

FracQSeries series_mul(const FracQSeries& a0, const FracQSeries& b0)
{
    auto [m, d] = common_shape(a0, b0);
    const FracQSeries a = lift_series(a0, m, d);
    const FracQSeries b = lift_series(b0, m, d);
    const auto oa = a.ord_index();
    const auto ob = b.ord_index();
    if (!oa && !ob) {
        throw PrecisionError("product of two series that are both zero to precision");
    }
    if (!oa) {
        return FracQSeries(m, d, a.trunc_index() + *ob);
    }
    if (!ob) {
        return FracQSeries(m, d, b.trunc_index() + *oa);
    }
    const long t = std::min(a.trunc_index() + *ob, b.trunc_index() + *oa);
    const long base = *oa + *ob;
    if (t <= base) {
        return FracQSeries(m, d, t);
    }

    const auto& field = CycloField::get(m);
    const int deg = field.degree();
    const IntegerImage ia = integer_image(a);
    const IntegerImage ib = integer_image(b);

    const auto len = static_cast<std::size_t>(t - base);
    std::vector<std::vector<BigInt>> acc(len);
    for (std::size_t i = 0; i < ia.index.size(); ++i) {
        const long ki = ia.index[i];
        for (std::size_t j = 0; j < ib.index.size(); ++j) {
            const long k = ki + ib.index[j];
            if (k >= t) {
                break;
            }
            auto& slot = acc[static_cast<std::size_t>(k - base)];
            if (slot.empty()) {
                slot.resize(static_cast<std::size_t>(2 * deg - 1));
            }
            for (int p : ia.support[i]) {
                const BigInt& x = ia.coords[i][p];
                for (int q : ib.support[j]) {
                    mpz_addmul(slot[p + q].get_mpz_t(), x.get_mpz_t(),
                               ib.coords[j][q].get_mpz_t());
                }
            }
        }
    }

    const BigInt den = ia.den * ib.den;
    const auto& mod = field.modulus();
    std::vector<FracQSeries::Term> terms;
    for (std::size_t s = 0; s < len; ++s) {
        auto& slot = acc[s];
        if (slot.empty()) {
            continue;
        }
        for (int k = 2 * deg - 2; k >= deg; --k) {
            if (slot[k] == 0) {
                continue;
            }
            const BigInt c = slot[k];
            for (int i = 0; i < deg; ++i) {
                mpz_submul(slot[k - deg + i].get_mpz_t(), c.get_mpz_t(), mod[i].get_mpz_t());
            }
        }
        std::vector<BigRational> coords(static_cast<std::size_t>(deg));
        bool nonzero = false;
        for (int i = 0; i < deg; ++i) {
            if (slot[i] != 0) {
                coords[i] = BigRational(slot[i], den);
                coords[i].canonicalize();
                nonzero = true;
            }
        }
        if (nonzero) {
            terms.emplace_back(base + static_cast<long>(s), CycloElem(m, std::move(coords)));
        }
    }
    return FracQSeries::from_terms(m, d, t, std::move(terms));
}

namespace {

// Dense normalized tail u_0 = 1, u_1, ... of a / (c q^o), up to relative precision R.
std::vector<CycloElem> normalized_tail(const FracQSeries& a, const CycloElem& c_inv, long o,
                                       long r)
{
    std::vector<CycloElem> u(static_cast<std::size_t>(r), CycloElem(a.cyclo_order()));
    for (const auto& [k, c] : a.terms()) {
        const long i = k - o;
        if (i < r) {
            u[static_cast<std::size_t>(i)] = cyclo_mul(c, c_inv);
        }
    }
    return u;
}

} // namespace

FracQSeries series_inv(const FracQSeries& a)
{
    if (a.is_zero_to_precision()) {
        throw DivisionByZeroError("inverse of a series that is zero to precision");
    }
    const long o = *a.ord_index();
    const long r = a.trunc_index() - o;
    const CycloElem c_inv = cyclo_inv(a.leading_coeff());
    const std::vector<CycloElem> u = normalized_tail(a, c_inv, o, r);
    std::vector<long> nz;
    for (long i = 1; i < r; ++i) {
        if (!u[static_cast<std::size_t>(i)].is_zero()) {
            nz.push_back(i);
        }
    }
    std::vector<CycloElem> w(static_cast<std::size_t>(r), CycloElem(a.cyclo_order()));
    w[0] = CycloElem(a.cyclo_order(), BigRational(1));
    for (long j = 1; j < r; ++j) {
        CycloElem s(a.cyclo_order());
        for (long i : nz) {
            if (i > j) {
                break;
            }
            const auto& wj = w[static_cast<std::size_t>(j - i)];
            if (!wj.is_zero()) {
                s += cyclo_mul(u[static_cast<std::size_t>(i)], wj);
            }
        }
        w[static_cast<std::size_t>(j)] = -s;
    }
    std::vector<FracQSeries::Term> terms;
    for (long j = 0; j < r; ++j) {
        auto& x = w[static_cast<std::size_t>(j)];
        if (!x.is_zero()) {
            terms.emplace_back(j - o, cyclo_mul(x, c_inv));
        }
    }
    return FracQSeries::from_terms(a.cyclo_order(), a.exp_den(), r - o, std::move(terms));
}

FracQSeries series_pow(const FracQSeries& a, long n)
{
    if (n < 0) {
        return series_pow(series_inv(a), -n);
    }
    if (a.is_zero_to_precision()) {
        if (n == 0) {
            throw PrecisionError("zeroth power of a series that is zero to precision");
        }
        throw PrecisionError("power of a series that is zero to precision");
    }
    const long o = *a.ord_index();
    if (n == 0) {
        return FracQSeries::constant(CycloElem(a.cyclo_order(), BigRational(1)), a.exp_den(),
                                     a.trunc_index() - o);
    }
    std::optional<FracQSeries> acc;
    FracQSeries base = a;
    while (n > 0) {
        if (n & 1) {
            acc = acc ? series_mul(*acc, base) : base;
        }
        n >>= 1;
        if (n > 0) {
            base = series_mul(base, base);
        }
    }
    return *acc;
}

FracQSeries series_pow_recurrence(const FracQSeries& a, long n)
{
    if (a.is_zero_to_precision()) {
        throw PrecisionError("power of a series that is zero to precision");
    }
    const int m = a.cyclo_order();
    const long o = *a.ord_index();
    const long r = a.trunc_index() - o;
    const CycloElem& c = a.leading_coeff();
    const std::vector<CycloElem> u = normalized_tail(a, cyclo_inv(c), o, r);
    std::vector<long> nz;
    for (long i = 1; i < r; ++i) {
        if (!u[static_cast<std::size_t>(i)].is_zero()) {
            nz.push_back(i);
        }
    }
    std::vector<CycloElem> p(static_cast<std::size_t>(r), CycloElem(m));
    p[0] = CycloElem(m, BigRational(1));
    for (long k = 1; k < r; ++k) {
        CycloElem s(m);
        for (long i : nz) {
            if (i > k) {
                break;
            }
            const auto& pk = p[static_cast<std::size_t>(k - i)];
            if (pk.is_zero()) {
                continue;
            }
            const long w = (n + 1) * i - k;
            if (w == 0) {
                continue;
            }
            s += cyclo_mul(u[static_cast<std::size_t>(i)], pk) * BigRational(w);
        }
        p[static_cast<std::size_t>(k)] = s * BigRational(1, k);
    }
    const CycloElem cn = cyclo_pow(c, n);
    std::vector<FracQSeries::Term> terms;
    for (long k = 0; k < r; ++k) {
        auto& x = p[static_cast<std::size_t>(k)];
        if (!x.is_zero()) {
            terms.emplace_back(n * o + k, cyclo_mul(x, cn));
        }
    }
    return FracQSeries::from_terms(m, a.exp_den(), n * o + r, std::move(terms));
}

FracQSeries operator+(const FracQSeries& a, const FracQSeries& b) { return series_add(a, b); }
FracQSeries operator-(const FracQSeries& a, const FracQSeries& b) { return series_sub(a, b); }
FracQSeries operator-(const FracQSeries& a) { return series_neg(a); }
FracQSeries operator*(const FracQSeries& a, const FracQSeries& b) { return series_mul(a, b); }

FracQSeries shift_tau_plus_one(const FracQSeries& a0)
{
    const int l = static_cast<int>(lcm_long(a0.cyclo_order(), a0.exp_den()));
    const FracQSeries a = lift_series(a0, l, a0.exp_den());
    const long step = l / a0.exp_den();
    std::vector<FracQSeries::Term> terms;
    terms.reserve(a.terms().size());
    for (const auto& [k, c] : a.terms()) {
        terms.emplace_back(k, cyclo_mul(c, CycloElem::zeta_power(l, k * step)));
    }
    return FracQSeries::from_terms(l, a.exp_den(), a.trunc_index(), std::move(terms));
}

FracQSeries apply_sigma(const FracQSeries& a, long d)
{
    std::vector<FracQSeries::Term> terms;
    terms.reserve(a.terms().size());
    if (gcd_long(mod_floor(d, a.cyclo_order()), a.cyclo_order()) != 1) {
        throw UsageError("apply_sigma: d = " + std::to_string(d) + " is not a unit modulo " +
                         std::to_string(a.cyclo_order()));
    }
    for (const auto& [k, c] : a.terms()) {
        terms.emplace_back(k, galois_sigma(c, d));
    }
    return FracQSeries::from_terms(a.cyclo_order(), a.exp_den(), a.trunc_index(),
                                   std::move(terms));
}

DistinctnessCertificate distinctness_certificate(const FracQSeries& a0, const FracQSeries& b0)
{
    auto [m, d] = common_shape(a0, b0);
    const FracQSeries a = lift_series(a0, m, d);
    const FracQSeries b = lift_series(b0, m, d);
    const long t = std::min(a.trunc_index(), b.trunc_index());
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    const CycloElem zero(m);
    while (ia != a.terms().end() || ib != b.terms().end()) {
        long k;
        const CycloElem* ca = &zero;
        const CycloElem* cb = &zero;
        if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
            k = ia->first;
            ca = &(ia++)->second;
        } else if (ia == a.terms().end() || ib->first < ia->first) {
            k = ib->first;
            cb = &(ib++)->second;
        } else {
            k = ia->first;
            ca = &(ia++)->second;
            cb = &(ib++)->second;
        }
        if (k >= t) {
            break;
        }
        if (!(*ca == *cb)) {
            return Distinct{make_rational(k, d), *ca, *cb};
        }
    }
    return UndecidedToPrecision{make_rational(t, d)};
}

bool agree_to(const FracQSeries& a, const FracQSeries& b, const BigRational& trunc)
{
    if (a.trunc() < trunc || b.trunc() < trunc) {
        return false;
    }
    auto cert = distinctness_certificate(a, b);
    if (const auto* dist = std::get_if<Distinct>(&cert)) {
        return dist->exponent >= trunc;
    }
    return true;
}

Complex evaluate_series(const FracQSeries& a, const Complex& q_root)
{
    const int m = a.cyclo_order();
    const int deg = CycloField::get(m).degree();
    std::vector<Complex> zeta;
    zeta.reserve(static_cast<std::size_t>(deg));
    for (int i = 0; i < deg; ++i) {
        zeta.push_back(exp_2pi_i(Real(i) / m));
    }
    Complex acc;
    if (a.terms().empty()) {
        return acc;
    }
    long cur_index = a.terms().front().first;
    Complex cur = pow(q_root, cur_index);
    for (const auto& [k, c] : a.terms()) {
        if (k != cur_index) {
            cur *= pow(q_root, k - cur_index);
            cur_index = k;
        }
        Complex v;
        for (int i = 0; i < deg; ++i) {
            const BigRational& x = c.coeffs()[static_cast<std::size_t>(i)];
            if (x == 0) {
                continue;
            }
            Real xr = Real(x.get_num().get_str()) / Real(x.get_den().get_str());
            v += Complex(xr * zeta[i].re, xr * zeta[i].im);
        }
        acc += v * cur;
    }
    return acc;
}

} // namespace fricke
