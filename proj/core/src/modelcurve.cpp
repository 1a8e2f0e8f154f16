#include "fricke/modelcurve.hpp"

#include "fricke/errors.hpp"
#include "parallel.hpp"

#include <json.hpp>

#include <algorithm>

namespace fricke {

int BivarIntPoly::x_degree() const
{
    int d = -1;
    for (const auto& [e, c] : coeffs) {
        d = std::max(d, e.first);
    }
    return d;
}

int BivarIntPoly::y_degree() const
{
    int d = -1;
    for (const auto& [e, c] : coeffs) {
        d = std::max(d, e.second);
    }
    return d;
}

std::vector<BigInt> BivarIntPoly::x_coefficient(int i) const
{
    std::vector<BigInt> out;
    for (const auto& [e, c] : coeffs) {
        if (e.first == i) {
            if (out.size() <= static_cast<std::size_t>(e.second)) {
                out.resize(static_cast<std::size_t>(e.second) + 1);
            }
            out[static_cast<std::size_t>(e.second)] = c;
        }
    }
    return out;
}

BigInt BivarIntPoly::at(int i, int k) const
{
    auto it = coeffs.find({i, k});
    return it == coeffs.end() ? BigInt(0) : it->second;
}

namespace {

long ceil_div(long a, long b)
{
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

long ceil_rational(const BigRational& x)
{
    BigInt c;
    mpz_cdiv_q(c.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return c.get_si();
}

// The series rewritten over exponent denominator 1; requires integral exponents.
FracQSeries integral_exponents(const FracQSeries& s)
{
    const long d = s.exp_den();
    std::vector<FracQSeries::Term> terms;
    for (const auto& [k, c] : s.terms()) {
        if (k % d != 0) {
            throw NotAJPolynomialError("fractional exponent " + to_string(make_rational(k, d)) +
                                       " survives; not a function of level one");
        }
        terms.emplace_back(k / d, c);
    }
    return FracQSeries::from_terms(s.cyclo_order(), 1, ceil_div(s.trunc_index(), d),
                                   std::move(terms));
}

// j^0 .. j^K, each known to at least truncation t.
std::vector<FracQSeries> j_powers(long K, long t)
{
    const FracQSeries j = j_series(t + K);
    std::vector<FracQSeries> p;
    p.push_back(FracQSeries::constant(CycloElem(1, BigRational(1)), 1, t + K));
    for (long k = 1; k <= K; ++k) {
        p.push_back(series_mul(p.back(), j));
    }
    return p;
}

} // namespace

JPolynomial j_reduce(const FracQSeries& s0)
{
    FracQSeries r = integral_exponents(s0);
    const long t = r.trunc_index();
    if (t < 1) {
        throw PrecisionError("j-reduction needs the constant term; truncation too low");
    }
    const long K = r.is_zero_to_precision() ? 0 : std::max(0L, -*r.ord_index());
    const auto pw = j_powers(K, t);
    JPolynomial out;
    out.coeffs.assign(static_cast<std::size_t>(K) + 1, CycloElem(s0.cyclo_order()));
    while (!r.is_zero_to_precision() && *r.ord_index() <= 0) {
        const long k = -*r.ord_index();
        const CycloElem c = r.leading_coeff();
        out.coeffs[static_cast<std::size_t>(k)] = c;
        r = series_sub(r, series_scale(pw[static_cast<std::size_t>(k)], c));
    }
    if (!r.is_zero_to_precision()) {
        throw NotAJPolynomialError("j-reduction leaves a nonzero residual at q^" +
                                   std::to_string(*r.ord_index()) + " (truncation " +
                                   std::to_string(r.trunc_index()) + ")");
    }
    while (out.coeffs.size() > 1 && out.coeffs.back().is_zero()) {
        out.coeffs.pop_back();
    }
    return out;
}

FracQSeries evaluate_j_polynomial(const JPolynomial& p, long T)
{
    const long K = static_cast<long>(p.coeffs.size()) - 1;
    const auto pw = j_powers(K, T);
    FracQSeries acc(p.coeffs.front().order(), 1, T);
    for (long k = 0; k <= K; ++k) {
        acc = series_add(acc, series_scale(pw[static_cast<std::size_t>(k)],
                                           p.coeffs[static_cast<std::size_t>(k)]));
    }
    return truncate_series(acc, BigRational(T));
}

std::vector<OrbitMember> conjugate_orbit(int level, long n, long T)
{
    const FamilyDescriptor g = siegel_generator(level, n);
    const auto cosets = cosets_mod_pm_gamma(level);
    std::vector<std::optional<FracQSeries>> tmp(cosets.size());
    detail::parallel_for(cosets.size(),
                         [&](std::size_t i) { tmp[i] = conjugate_series(g, cosets[i], T); });
    std::vector<OrbitMember> out;
    for (std::size_t i = 0; i < cosets.size(); ++i) {
        out.push_back(OrbitMember{cosets[i], std::move(*tmp[i])});
    }
    return out;
}

long model_precision(int level, long n, long margin)
{
    const FamilyDescriptor g = siegel_generator(level, n);
    const auto cosets = cosets_mod_pm_gamma(level);
    long deepest = 0;
    for (const auto& c : cosets) {
        const BigRational o = product_conjugate_order(g, c);
        if (o < 0) {
            deepest = std::max(deepest, ceil_rational(-o));
        }
    }
    return static_cast<long>(cosets.size()) * deepest + margin;
}

namespace {

ModelResult model_attempt(int level, long n, long T)
{
    const FamilyDescriptor g = siegel_generator(level, n);
    const auto orbit = conjugate_orbit(level, n, T);
    const auto count = orbit.size();

    ModelResult res;
    res.precision = T;
    long pole_sum = 0;
    for (const auto& m : orbit) {
        res.orbit_orders.push_back(product_conjugate_order(g, m.gamma));
        if (res.orbit_orders.back() < 0) {
            pole_sum += ceil_rational(-res.orbit_orders.back());
        }
    }

    // prod (x - s), coefficients indexed by x-degree
    const long one_trunc = (T + pole_sum + 1) * level;
    std::vector<FracQSeries> poly{
        FracQSeries::constant(CycloElem(level, BigRational(1)), level, one_trunc)};
    for (const auto& m : orbit) {
        std::vector<std::optional<FracQSeries>> next(poly.size() + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            FracQSeries prod = series_neg(series_mul(m.series, poly[i]));
            next[i] = next[i] ? series_add(*next[i], prod) : prod;
            next[i + 1] = next[i + 1] ? series_add(*next[i + 1], poly[i]) : poly[i];
        }
        poly.clear();
        for (auto& s : next) {
            poly.push_back(std::move(*s));
        }
    }

    for (std::size_t i = 0; i < poly.size(); ++i) {
        auto rational = project_series(poly[i], 1);
        if (!rational) {
            throw ConsistencyError("elementary symmetric function of degree " +
                                   std::to_string(count - i) +
                                   " has a non-vanishing cyclotomic part");
        }
        const JPolynomial jp = j_reduce(*rational);
        for (std::size_t k = 0; k < jp.coeffs.size(); ++k) {
            const BigRational& c = jp.coeffs[k].rational_part();
            if (c == 0) {
                continue;
            }
            if (c.get_den() != 1) {
                throw ConsistencyError("non-integral model coefficient " + to_string(c));
            }
            res.poly.coeffs[{static_cast<int>(i), static_cast<int>(k)}] = c.get_num();
        }
    }
    if (res.poly.at(static_cast<int>(count), 0) != 1 || res.poly.x_degree() != static_cast<int>(count)) {
        throw ConsistencyError("model polynomial is not monic of x-degree " + std::to_string(count));
    }

    // Root identity f(g, j) = 0 for the identity conjugate, with a margin of 8.
    const long ymax = res.poly.y_degree();
    const BigRational o_id = res.orbit_orders.front();
    const long loss = o_id < 0 ? ceil_rational(-o_id) * static_cast<long>(count) : 0;
    const long t_chk = 8 + ymax + loss;
    const FracQSeries gq = conjugate_series(g, orbit.front().gamma, t_chk);
    const auto jp = j_powers(ymax, t_chk);
    std::vector<FracQSeries> gpow{
        FracQSeries::constant(CycloElem(level, BigRational(1)), level, (t_chk + loss + 1) * level)};
    for (std::size_t i = 1; i <= count; ++i) {
        gpow.push_back(series_mul(gpow.back(), gq));
    }
    std::optional<FracQSeries> total;
    for (const auto& [e, c] : res.poly.coeffs) {
        FracQSeries term = series_scale(series_mul(gpow[static_cast<std::size_t>(e.first)],
                                                   jp[static_cast<std::size_t>(e.second)]),
                                        BigRational(c));
        total = total ? series_add(*total, term) : term;
    }
    if (!total->is_zero_to_precision()) {
        throw ConsistencyError("model polynomial does not vanish at (g, j): residual at q^" +
                               to_string(*ord_q(*total).value));
    }
    res.residual_trunc = total->trunc_index() / total->exp_den();
    return res;
}

} // namespace

ModelResult model_polynomial(int level, long n, long T)
{
    const long t0 = std::max(T, model_precision(level, n, 8));
    try {
        return model_attempt(level, n, t0);
    } catch (const NotAJPolynomialError&) {
        ModelResult r = model_attempt(level, n, std::max(T, model_precision(level, n, 16)));
        r.retries = 1;
        return r;
    }
}

BivarIntPoly model_polynomial_only(int level, long n)
{
    return model_polynomial(level, n).poly;
}

std::string factored(const BigInt& c0)
{
    if (c0 == 0) {
        return "0";
    }
    BigInt c = abs(c0);
    std::string out = c0 < 0 ? "-" : "";
    if (c == 1) {
        return out + "1";
    }
    bool first = true;
    auto emit = [&](const std::string& base, unsigned long e) {
        out += first ? "" : "*";
        first = false;
        out += base;
        if (e > 1) {
            out += "^" + std::to_string(e);
        }
    };
    for (unsigned long p = 2; p < 100000 && c > 1; p += (p == 2 ? 1 : 2)) {
        unsigned long e = 0;
        while (mpz_divisible_ui_p(c.get_mpz_t(), p)) {
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
            ++e;
        }
        if (e > 0) {
            emit(std::to_string(p), e);
        }
    }
    if (c > 1) {
        emit(c.get_str(), 1);
    }
    return out;
}

namespace {

std::string power_text(const char* var, int e)
{
    if (e == 0) {
        return "";
    }
    if (e == 1) {
        return var;
    }
    return std::string(var) + "^" + std::to_string(e);
}

// c * var^e with the sign folded into the returned string.
std::string monomial_text(const BigInt& c, const char* var, int e)
{
    const std::string vp = power_text(var, e);
    if (vp.empty()) {
        return factored(c);
    }
    if (c == 1) {
        return vp;
    }
    if (c == -1) {
        return "-" + vp;
    }
    return factored(c) + "*" + vp;
}

} // namespace

std::string format_model(const BivarIntPoly& p)
{
    std::string out;
    for (int i = p.x_degree(); i >= 0; --i) {
        const auto yc = p.x_coefficient(i);
        std::vector<std::pair<int, BigInt>> terms;
        for (int k = static_cast<int>(yc.size()) - 1; k >= 0; --k) {
            if (yc[static_cast<std::size_t>(k)] != 0) {
                terms.emplace_back(k, yc[static_cast<std::size_t>(k)]);
            }
        }
        if (terms.empty()) {
            continue;
        }
        std::string body;
        const std::string xp = power_text("x", i);
        if (terms.size() == 1) {
            const auto& [k, c] = terms.front();
            if (k == 0) {
                body = monomial_text(c, "x", i);
            } else {
                body = monomial_text(c, "y", k) + (xp.empty() ? "" : "*" + xp);
            }
        } else {
            std::string inner;
            for (const auto& [k, c] : terms) {
                std::string m = monomial_text(c, "y", k);
                if (inner.empty()) {
                    inner = m;
                } else if (m.front() == '-') {
                    inner += " - " + m.substr(1);
                } else {
                    inner += " + " + m;
                }
            }
            body = "(" + inner + ")" + (xp.empty() ? "" : "*" + xp);
        }
        if (out.empty()) {
            out = body + "\n";
        } else if (body.front() == '-') {
            out += "- " + body.substr(1) + "\n";
        } else {
            out += "+ " + body + "\n";
        }
    }
    return out;
}

std::string model_to_json(const BivarIntPoly& p)
{
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) {
        j[std::to_string(it->first.first) + "," + std::to_string(it->first.second)] =
            it->second.get_str();
    }
    return j.dump(2);
}

std::pair<Complex, Real> evaluate_bivar(const BivarIntPoly& p, const Complex& x, const Complex& y)
{
    Complex total;
    Real largest = 0;
    for (const auto& [e, c] : p.coeffs) {
        Complex m = pow(x, e.first) * pow(y, e.second);
        m *= Complex(Real(c.get_str()));
        const Real a = abs(m);
        if (a > largest) {
            largest = a;
        }
        total += m;
    }
    return {total, largest};
}

// ---------------------------------------------------------------------------
// Stabilizers

namespace {

StabilizerReport scan_against_identity(int level, long n, long T,
                                       const std::vector<MatModN>& cosets,
                                       const std::vector<FracQSeries>& series)
{
    StabilizerReport r;
    r.level = level;
    r.n = n;
    r.precision = T;
    bool all = true;
    for (std::size_t i = 1; i < cosets.size(); ++i) {
        auto cert = distinctness_certificate(series[i], series[0]);
        all = all && std::holds_alternative<Distinct>(cert);
        r.certificates.push_back(CosetCertificate{cosets[i], std::move(cert)});
    }
    r.verdict = all ? StabilizerVerdict::TrivialStabilizer : StabilizerVerdict::Undecided;
    return r;
}

} // namespace

StabilizerReport stabilizer_check_fricke(int level, long T)
{
    const auto cosets = cosets_mod_pm_gamma(level);
    std::vector<std::optional<FracQSeries>> tmp(cosets.size());
    const IndexVector e1{1, 0, level};
    const IndexVector e2{0, 1, level};
    detail::parallel_for(cosets.size(), [&](std::size_t i) {
        tmp[i] = series_sub(fricke_series(act_F3(e1, cosets[i]), T),
                            series_inv(fricke_series(act_F3(e2, cosets[i]), T)));
    });
    std::vector<FracQSeries> series;
    for (auto& s : tmp) {
        series.push_back(std::move(*s));
    }
    StabilizerReport r = scan_against_identity(level, 0, T, cosets, series);
    return r;
}

StabilizerReport stabilizer_check_siegel(int level, long n, long T)
{
    const FamilyDescriptor g = siegel_generator(level, n);
    const auto orbit = conjugate_orbit(level, n, T);
    std::vector<MatModN> cosets;
    std::vector<FracQSeries> series;
    for (const auto& m : orbit) {
        cosets.push_back(m.gamma);
        series.push_back(m.series);
    }
    StabilizerReport r = scan_against_identity(level, n, T, cosets, series);

    const MatModN s = make_mat(0, -1, 1, 0, level);
    for (const auto& c : cosets) {
        r.ord_pairs.emplace_back(product_conjugate_order(g, c),
                                 product_conjugate_order(g, mat_mul(c, s)));
    }
    r.ord_pair_isolates_identity =
        std::count(r.ord_pairs.begin(), r.ord_pairs.end(), r.ord_pairs.front()) == 1;
    auto sorted = r.ord_pairs;
    std::sort(sorted.begin(), sorted.end());
    r.ord_pairs_pairwise_distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();

    bool distinct = true;
    for (std::size_t i = 0; i < series.size() && distinct; ++i) {
        for (std::size_t j = i + 1; j < series.size(); ++j) {
            if (!std::holds_alternative<Distinct>(distinctness_certificate(series[i], series[j]))) {
                distinct = false;
                break;
            }
        }
    }
    r.orbit_pairwise_distinct = distinct;
    return r;
}

const char* to_string(StabilizerVerdict v)
{
    return v == StabilizerVerdict::TrivialStabilizer ? "TrivialStabilizer" : "Undecided";
}

std::string to_text(const StabilizerReport& r)
{
    std::string s = "level " + std::to_string(r.level);
    if (r.n != 0) {
        s += ", n = " + std::to_string(r.n);
    }
    s += ", T = " + std::to_string(r.precision) + "\n";
    for (const auto& c : r.certificates) {
        s += "  " + to_string(c.gamma) + ": ";
        if (const auto* d = std::get_if<Distinct>(&c.cert)) {
            s += "differs at q^" + to_string(d->exponent) + "\n";
        } else {
            s += "undecided to precision\n";
        }
    }
    if (!r.ord_pairs.empty()) {
        s += "ord pair isolates identity: " + std::string(r.ord_pair_isolates_identity ? "yes" : "no") +
             "\n";
        s += "ord pairs pairwise distinct: " +
             std::string(r.ord_pairs_pairwise_distinct ? "yes" : "no") + "\n";
        s += "orbit pairwise distinct: " + std::string(r.orbit_pairwise_distinct ? "yes" : "no") + "\n";
    }
    s += "verdict: " + std::string(to_string(r.verdict)) + "\n";
    return s;
}

} // namespace fricke
