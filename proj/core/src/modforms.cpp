#include "fricke/modforms.hpp"

#include "fricke/errors.hpp"

#include <map>
#include <mutex>

namespace fricke {

BigRational frac_part(const BigRational& x)
{
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    BigRational r = x - BigRational(fl);
    r.canonicalize();
    return r;
}

BigRational frac_part_pm(const BigRational& x)
{
    BigRational p = frac_part(x);
    BigRational m = frac_part(-x);
    return p < m ? p : m;
}

BigRational bernoulli2(const BigRational& x)
{
    BigRational r = x * x - x + BigRational(1, 6);
    r.canonicalize();
    return r;
}

IndexVector IndexVector::reduced() const
{
    return IndexVector{mod_floor(a, level), mod_floor(b, level), level};
}

IndexVector IndexVector::negated() const
{
    return IndexVector{-a, -b, level}.reduced();
}

bool IndexVector::primitive() const
{
    return gcd_long(gcd_long(a, b), level) == 1;
}

IndexVector make_index(long a, long b, int level)
{
    if (level < 2) {
        throw UsageError("level N must be at least 2");
    }
    IndexVector v = IndexVector{a, b, level}.reduced();
    if (v.a == 0 && v.b == 0) {
        throw UsageError("index vector lies in Z^2");
    }
    return v;
}

IndexVector parse_index(std::string_view text, int level)
{
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        throw UsageError("index vector must be given as \"v1,v2\"");
    }
    auto component = [level](std::string_view s) {
        BigRational x = parse_rational(s) * level;
        if (x.get_den() != 1) {
            throw UsageError("index component " + std::string(s) + " is not in (1/" +
                             std::to_string(level) + ")Z");
        }
        return x.get_num().get_si();
    };
    return make_index(component(text.substr(0, comma)), component(text.substr(comma + 1)), level);
}

std::string to_string(const IndexVector& v)
{
    return "[" + to_string(v.v1()) + "," + to_string(v.v2()) + "]";
}

// ---------------------------------------------------------------------------
// Level one

namespace {

template <typename Build>
FracQSeries cached(std::map<long, FracQSeries>& cache, std::mutex& mu, long T, Build build)
{
    if (T < 1) {
        throw UsageError("truncation T must be at least 1");
    }
    {
        std::lock_guard lock(mu);
        auto it = cache.lower_bound(T);
        if (it != cache.end()) {
            return it->first == T ? it->second : truncate_series(it->second, BigRational(T));
        }
    }
    FracQSeries s = build(T);
    std::lock_guard lock(mu);
    cache.emplace(T, s);
    return s;
}

FracQSeries integer_series(const std::vector<BigInt>& c, long shift, long T)
{
    std::vector<FracQSeries::Term> terms;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) {
            terms.emplace_back(static_cast<long>(i) + shift, CycloElem(1, BigRational(c[i])));
        }
    }
    return FracQSeries::from_terms(1, 1, T, std::move(terms));
}

FracQSeries eisenstein(long T, int k, long scale)
{
    std::vector<BigInt> sigma(static_cast<std::size_t>(T));
    for (long d = 1; d < T; ++d) {
        BigInt dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
        for (long n = d; n < T; n += d) {
            sigma[static_cast<std::size_t>(n)] += dk;
        }
    }
    sigma[0] = 1;
    for (long n = 1; n < T; ++n) {
        sigma[static_cast<std::size_t>(n)] *= scale;
    }
    return integer_series(sigma, 0, T);
}

std::mutex cache_mu;
std::map<long, FracQSeries> delta_cache, e4_cache, e6_cache, j_cache, w_cache;

} // namespace

FracQSeries delta_norm_series(long T)
{
    return cached(delta_cache, cache_mu, T, [](long t) {
        // q prod (1 - q^n)^24; coefficients of the product up to q^(t-2).
        const long len = t - 1;
        std::vector<BigInt> c(static_cast<std::size_t>(len));
        c[0] = 1;
        for (long n = 1; n < len; ++n) {
            for (int rep = 0; rep < 24; ++rep) {
                for (long i = len - 1; i >= n; --i) {
                    c[static_cast<std::size_t>(i)] -= c[static_cast<std::size_t>(i - n)];
                }
            }
        }
        return integer_series(c, 1, t);
    });
}

FracQSeries e4_series(long T)
{
    return cached(e4_cache, cache_mu, T, [](long t) { return eisenstein(t, 3, 240); });
}

FracQSeries e6_series(long T)
{
    return cached(e6_cache, cache_mu, T, [](long t) { return eisenstein(t, 5, -504); });
}

FracQSeries j_series(long T)
{
    return cached(j_cache, cache_mu, T, [](long t) {
        const FracQSeries e4 = e4_series(t + 1);
        return series_mul(series_pow(e4, 3), series_inv(delta_norm_series(t + 2)));
    });
}

FracQSeries e4e6_over_delta_series(long T)
{
    return cached(w_cache, cache_mu, T, [](long t) {
        return series_mul(series_mul(e4_series(t + 1), e6_series(t + 1)),
                          series_inv(delta_norm_series(t + 2)));
    });
}

// ---------------------------------------------------------------------------
// Level N. Accumulation happens in the group ring Z[x]/(x^N - 1) and is
// mapped to Q(zeta_N) at the end.

namespace {

using GroupElem = std::vector<BigInt>; // length N, empty means zero

CycloElem group_to_cyclo(const GroupElem& g, int n)
{
    const auto& field = CycloField::get(n);
    std::vector<BigRational> out(static_cast<std::size_t>(field.degree()));
    for (int j = 0; j < n; ++j) {
        if (g[j] == 0) {
            continue;
        }
        const auto& p = field.power(j);
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] != 0) {
                out[i] += BigRational(g[j] * p[i]);
            }
        }
    }
    return CycloElem(n, std::move(out));
}

void require_index(const IndexVector& v)
{
    make_index(v.a, v.b, v.level);
}

} // namespace

FracQSeries wp_norm_series(const IndexVector& v0, long T)
{
    require_index(v0);
    if (T < 1) {
        throw UsageError("truncation T must be at least 1");
    }
    const IndexVector v = v0.reduced();
    const int n = v.level;
    const long lim = T * n;
    std::vector<GroupElem> acc(static_cast<std::size_t>(lim));
    auto add = [&](long idx, long zpow, long c) {
        auto& g = acc[static_cast<std::size_t>(idx)];
        if (g.empty()) {
            g.resize(static_cast<std::size_t>(n));
        }
        g[static_cast<std::size_t>(mod_floor(zpow, n))] += c;
    };
    // sum over m >= 0 of q^m q_z / (1 - q^m q_z)^2, skipping the constant m = 0 term
    for (long m = (v.a == 0 ? 1 : 0);; ++m) {
        const long base = m * n + v.a;
        if (base >= lim) {
            break;
        }
        for (long k = 1; k * base < lim; ++k) {
            add(k * base, k * v.b, k);
        }
    }
    // m = -n' < 0, rewritten through x / (1 - x)^2 = x^-1 / (1 - x^-1)^2
    for (long m = 1;; ++m) {
        const long base = m * n - v.a;
        if (base >= lim) {
            break;
        }
        for (long k = 1; k * base < lim; ++k) {
            add(k * base, -k * v.b, k);
        }
    }
    // -2 sum sigma_1(m) q^m
    for (long d = 1; d < T; ++d) {
        for (long m = d; m < T; m += d) {
            add(m * n, 0, -2 * d);
        }
    }
    std::vector<FracQSeries::Term> terms;
    CycloElem constant(n, BigRational(1, 12));
    if (v.a == 0) {
        const CycloElem z = CycloElem::zeta_power(n, v.b);
        const CycloElem one_minus = CycloElem(n, BigRational(1)) - z;
        constant += cyclo_mul(z, cyclo_inv(cyclo_mul(one_minus, one_minus)));
    }
    terms.emplace_back(0, constant);
    for (long idx = 1; idx < lim; ++idx) {
        const auto& g = acc[static_cast<std::size_t>(idx)];
        if (!g.empty()) {
            terms.emplace_back(idx, group_to_cyclo(g, n));
        }
    }
    return FracQSeries::from_terms(n, n, lim, std::move(terms));
}

FracQSeries fricke_series(const IndexVector& v, long T)
{
    require_index(v);
    const FracQSeries wp = wp_norm_series(v, T + 1);
    return series_scale(series_mul(e4e6_over_delta_series(T), wp), BigRational(12));
}

namespace {

// prod over the unit factors, indices in units of q^(1/N), to index < lim.
std::vector<GroupElem> siegel_unit_group(const IndexVector& v, long lim)
{
    const int n = v.level;
    std::vector<GroupElem> u(static_cast<std::size_t>(std::max<long>(lim, 1)));
    for (auto& g : u) {
        g.resize(static_cast<std::size_t>(n));
    }
    u[0][0] = 1;
    // multiply by (1 - x^zp q^e) in place, top down
    auto factor = [&](long e, long zp) {
        const long z = mod_floor(zp, n);
        for (long i = lim - 1; i >= e; --i) {
            const auto& src = u[static_cast<std::size_t>(i - e)];
            auto& dst = u[static_cast<std::size_t>(i)];
            for (int j = 0; j < n; ++j) {
                if (src[j] != 0) {
                    dst[static_cast<std::size_t>((j + z) % n)] -= src[j];
                }
            }
        }
    };
    if (v.a != 0) {
        factor(v.a, v.b);
    }
    for (long k = 1;; ++k) {
        const long lo = k * n - v.a;
        if (lo >= lim) {
            break;
        }
        factor(lo, -v.b);
        if (k * n + v.a < lim) {
            factor(k * n + v.a, v.b);
        }
    }
    return u;
}

GroupElem group_mul(const GroupElem& x, const GroupElem& y, int n)
{
    GroupElem r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (x[i] == 0) {
            continue;
        }
        for (int j = 0; j < n; ++j) {
            if (y[j] != 0) {
                mpz_addmul(r[static_cast<std::size_t>((i + j) % n)].get_mpz_t(), x[i].get_mpz_t(),
                           y[j].get_mpz_t());
            }
        }
    }
    return r;
}

bool group_is_zero(const GroupElem& x)
{
    for (const auto& c : x) {
        if (c != 0) {
            return false;
        }
    }
    return true;
}

} // namespace

SiegelSymbol siegel_symbol(const IndexVector& v0, long T)
{
    require_index(v0);
    if (T < 1) {
        throw UsageError("truncation T must be at least 1");
    }
    const IndexVector v = v0.reduced();
    const int n = v.level;
    SiegelSymbol s{v, frac_part(BigRational(1, 2) + v.v2() * (v.v1() - 1) / 2),
                   bernoulli2(v.v1()) / 2, CycloElem(n, BigRational(1)),
                   FracQSeries(n, n, T * n)};
    s.qexp.canonicalize();
    if (v.a == 0) {
        s.lead = CycloElem(n, BigRational(1)) - CycloElem::zeta_power(n, v.b);
    }
    const auto u = siegel_unit_group(v, T * n);
    std::vector<FracQSeries::Term> terms;
    for (long i = 0; i < T * n; ++i) {
        if (!group_is_zero(u[static_cast<std::size_t>(i)])) {
            terms.emplace_back(i, group_to_cyclo(u[static_cast<std::size_t>(i)], n));
        }
    }
    s.unit = FracQSeries::from_terms(n, n, T * n, std::move(terms));
    return s;
}

FracQSeries siegel_power_series(const IndexVector& v0, long m, long T)
{
    require_index(v0);
    const IndexVector v = v0.reduced();
    const int n = v.level;
    if (m == 0 || m % (12L * n) != 0) {
        throw UsageError("Siegel exponent " + std::to_string(m) +
                         " is not a nonzero multiple of 12N = " + std::to_string(12 * n));
    }
    if (T < 1) {
        throw UsageError("truncation T must be at least 1");
    }
    const BigRational rho = bernoulli2(v.v1()) / 2;
    const BigRational ord_scaled = rho * m * n;
    if (ord_scaled.get_den() != 1) {
        throw ConsistencyError("Siegel q-order is not in (1/N)Z");
    }
    const long o = ord_scaled.get_num().get_si();
    const long lim = T * n;
    if (o >= lim) {
        return FracQSeries(n, n, lim);
    }
    const long r = lim - o;

    // Constant factor: exp(2 pi i m phase) * lead^m, in Q(zeta_N).
    const BigRational phase = frac_part(BigRational(1, 2) + v.v2() * (v.v1() - 1) / 2);
    const BigRational turns = frac_part(phase * m) * n;
    if (turns.get_den() != 1) {
        throw ConsistencyError("Siegel phase power is not an N-th root of unity");
    }
    CycloElem c = CycloElem::zeta_power(n, turns.get_num().get_si());
    if (v.a == 0) {
        c = cyclo_mul(c, cyclo_pow(CycloElem(n, BigRational(1)) - CycloElem::zeta_power(n, v.b), m));
    }

    // Unit power by the logarithmic-derivative recurrence in the group ring;
    // each division by k is exact because U has constant term 1.
    const auto u = siegel_unit_group(v, r);
    std::vector<long> nz;
    for (long i = 1; i < r; ++i) {
        if (!group_is_zero(u[static_cast<std::size_t>(i)])) {
            nz.push_back(i);
        }
    }
    std::vector<GroupElem> p(static_cast<std::size_t>(r));
    p[0].resize(static_cast<std::size_t>(n));
    p[0][0] = 1;
    GroupElem s(static_cast<std::size_t>(n));
    BigInt w;
    for (long k = 1; k < r; ++k) {
        for (auto& x : s) {
            x = 0;
        }
        for (long i : nz) {
            if (i > k) {
                break;
            }
            const auto& pk = p[static_cast<std::size_t>(k - i)];
            if (pk.empty()) {
                continue;
            }
            const long wt = (m + 1) * i - k;
            if (wt == 0) {
                continue;
            }
            GroupElem prod = group_mul(u[static_cast<std::size_t>(i)], pk, n);
            w = wt;
            for (int j = 0; j < n; ++j) {
                mpz_addmul(s[j].get_mpz_t(), prod[j].get_mpz_t(), w.get_mpz_t());
            }
        }
        if (group_is_zero(s)) {
            continue;
        }
        auto& dst = p[static_cast<std::size_t>(k)];
        dst.resize(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            if (!mpz_divisible_ui_p(s[j].get_mpz_t(), static_cast<unsigned long>(k))) {
                throw ConsistencyError("non-integral Siegel unit power coefficient");
            }
            mpz_divexact_ui(dst[j].get_mpz_t(), s[j].get_mpz_t(), static_cast<unsigned long>(k));
        }
    }
    std::vector<FracQSeries::Term> terms;
    for (long k = 0; k < r; ++k) {
        const auto& g = p[static_cast<std::size_t>(k)];
        if (!g.empty() && !group_is_zero(g)) {
            terms.emplace_back(o + k, cyclo_mul(group_to_cyclo(g, n), c));
        }
    }
    return FracQSeries::from_terms(n, n, lim, std::move(terms));
}

} // namespace fricke
