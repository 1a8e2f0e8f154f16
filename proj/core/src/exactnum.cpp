#include "fricke/exactnum.hpp"

#include "fricke/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace fricke {

std::string to_string(const BigInt& x)
{
    return x.get_str();
}

std::string to_string(const BigRational& x)
{
    if (x.get_den() == 1) {
        return x.get_num().get_str();
    }
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

BigRational parse_rational(std::string_view text)
{
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (s.empty()) {
        throw UsageError("empty rational literal");
    }
    if (s.front() == '+') {
        s.erase(s.begin());
    }
    BigRational r;
    if (r.set_str(s, 10) != 0) {
        throw UsageError("malformed rational literal: " + std::string(text));
    }
    if (r.get_den() == 0) {
        throw DivisionByZeroError("rational literal with zero denominator");
    }
    r.canonicalize();
    return r;
}

BigRational make_rational(long num, long den)
{
    if (den == 0) {
        throw DivisionByZeroError("rational with zero denominator");
    }
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

long mod_floor(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

long gcd_long(long a, long b)
{
    return std::gcd(a, b);
}

long lcm_long(long a, long b)
{
    return std::lcm(a, b);
}

long euler_phi(long n)
{
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) {
                n /= p;
            }
            result -= result / p;
        }
    }
    if (n > 1) {
        result -= result / n;
    }
    return result;
}

long inverse_mod(long a, long m)
{
    if (m == 1) {
        return 0;
    }
    long old_r = mod_floor(a, m), r = m;
    long old_s = 1, s = 0;
    while (r != 0) {
        long q = old_r / r;
        long t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) {
        throw UsageError("element " + std::to_string(a) + " is not invertible modulo " +
                         std::to_string(m));
    }
    return mod_floor(old_s, m);
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials and fields

namespace {

using IntPoly = std::vector<BigInt>;

void trim(IntPoly& p)
{
    while (p.size() > 1 && p.back() == 0) {
        p.pop_back();
    }
}

// Exact division by a monic integer polynomial.
IntPoly divide_monic(IntPoly num, const IntPoly& den)
{
    const std::size_t dd = den.size() - 1;
    if (num.size() <= dd) {
        return {BigInt(0)};
    }
    IntPoly quot(num.size() - dd);
    for (std::size_t k = num.size(); k-- > dd;) {
        BigInt c = num[k];
        quot[k - dd] = c;
        if (c != 0) {
            for (std::size_t i = 0; i <= dd; ++i) {
                num[k - dd + i] -= c * den[i];
            }
        }
    }
    trim(num);
    if (!(num.size() == 1 && num[0] == 0)) {
        throw ConsistencyError("inexact cyclotomic division");
    }
    return quot;
}

} // namespace

std::vector<BigInt> cyclotomic_polynomial(int n)
{
    if (n <= 0) {
        throw UsageError("cyclotomic polynomial order must be positive");
    }
    static std::mutex mu;
    static std::map<int, IntPoly> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(n); it != cache.end()) {
            return it->second;
        }
    }
    IntPoly p(static_cast<std::size_t>(n) + 1, BigInt(0));
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d == 0) {
            p = divide_monic(std::move(p), cyclotomic_polynomial(d));
        }
    }
    std::lock_guard lock(mu);
    cache.emplace(n, p);
    return p;
}

CycloField::CycloField(int order) : order_(order), degree_(static_cast<int>(euler_phi(order)))
{
    modulus_ = cyclotomic_polynomial(order);
    const auto deg = static_cast<std::size_t>(degree_);
    powers_.reserve(static_cast<std::size_t>(order));
    std::vector<long> cur(deg, 0);
    cur[0] = 1;
    for (int k = 0; k < order; ++k) {
        powers_.push_back(cur);
        // multiply by z and reduce by the monic modulus
        long top = cur[deg - 1];
        for (std::size_t i = deg - 1; i > 0; --i) {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if (top != 0) {
            for (std::size_t i = 0; i < deg; ++i) {
                cur[i] -= top * modulus_[i].get_si();
            }
        }
    }
}

const CycloField& CycloField::get(int order)
{
    if (order <= 0) {
        throw UsageError("cyclotomic order must be positive");
    }
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CycloField>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[order];
    if (!slot) {
        slot.reset(new CycloField(order));
    }
    return *slot;
}

const std::vector<long>& CycloField::power(long k) const
{
    return powers_[static_cast<std::size_t>(mod_floor(k, order_))];
}

// ---------------------------------------------------------------------------
// CycloElem

CycloElem::CycloElem() : CycloElem(1) {}

CycloElem::CycloElem(int order)
    : order_(order), coeffs_(static_cast<std::size_t>(CycloField::get(order).degree()))
{
}

CycloElem::CycloElem(int order, BigRational value) : CycloElem(order)
{
    value.canonicalize();
    coeffs_[0] = std::move(value);
}

CycloElem::CycloElem(int order, std::vector<BigRational> coeffs)
    : order_(order), coeffs_(std::move(coeffs))
{
    if (coeffs_.size() != static_cast<std::size_t>(CycloField::get(order).degree())) {
        throw UsageError("coefficient vector length must equal phi(order)");
    }
    for (auto& c : coeffs_) {
        c.canonicalize();
    }
}

CycloElem CycloElem::zeta_power(int order, long k)
{
    const auto& field = CycloField::get(order);
    const auto& p = field.power(k);
    CycloElem r(order);
    for (std::size_t i = 0; i < p.size(); ++i) {
        r.coeffs_[i] = p[i];
    }
    return r;
}

bool CycloElem::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigRational& c) { return c == 0; });
}

bool CycloElem::is_one() const
{
    return is_rational() && coeffs_[0] == 1;
}

bool CycloElem::is_rational() const
{
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                       [](const BigRational& c) { return c == 0; });
}

BigInt CycloElem::denominator() const
{
    BigInt d = 1;
    for (const auto& c : coeffs_) {
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
    }
    return d;
}

BigRational CycloElem::coeff_norm1() const
{
    BigRational s = 0;
    for (const auto& c : coeffs_) {
        s += abs(c);
    }
    return s;
}

void CycloElem::require_same_order(const CycloElem& o, const char* op) const
{
    if (order_ != o.order_) {
        throw UsageError(std::string("cyclotomic ") + op + ": order mismatch (" +
                         std::to_string(order_) + " vs " + std::to_string(o.order_) + ")");
    }
}

CycloElem& CycloElem::operator+=(const CycloElem& o)
{
    require_same_order(o, "add");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += o.coeffs_[i];
    }
    return *this;
}

CycloElem& CycloElem::operator-=(const CycloElem& o)
{
    require_same_order(o, "sub");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] -= o.coeffs_[i];
    }
    return *this;
}

CycloElem& CycloElem::operator*=(const BigRational& r)
{
    for (auto& c : coeffs_) {
        c *= r;
    }
    return *this;
}

CycloElem& CycloElem::operator*=(const CycloElem& o)
{
    *this = cyclo_mul(*this, o);
    return *this;
}

bool operator==(const CycloElem& a, const CycloElem& b)
{
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
CycloElem operator-(CycloElem a) { return a *= BigRational(-1); }
CycloElem operator*(CycloElem a, const BigRational& r) { return a *= r; }
CycloElem operator*(const BigRational& r, CycloElem a) { return a *= r; }
CycloElem operator*(const CycloElem& a, const CycloElem& b) { return cyclo_mul(a, b); }

CycloElem cyclo_mul(const CycloElem& a, const CycloElem& b)
{
    if (a.order() != b.order()) {
        throw UsageError("cyclo_mul: order mismatch (" + std::to_string(a.order()) + " vs " +
                         std::to_string(b.order()) + ")");
    }
    const auto& field = CycloField::get(a.order());
    const int deg = field.degree();
    if (deg == 1) {
        return CycloElem(a.order(), a.coeff(0) * b.coeff(0));
    }
    // Clear denominators, multiply over Z, reduce by the monic modulus.
    const BigInt da = a.denominator();
    const BigInt db = b.denominator();
    std::vector<BigInt> ia(static_cast<std::size_t>(deg)), ib(static_cast<std::size_t>(deg));
    for (int i = 0; i < deg; ++i) {
        const auto& ca = a.coeff(i);
        const auto& cb = b.coeff(i);
        ia[i] = ca.get_num() * (da / ca.get_den());
        ib[i] = cb.get_num() * (db / cb.get_den());
    }
    std::vector<BigInt> prod(static_cast<std::size_t>(2 * deg - 1));
    for (int i = 0; i < deg; ++i) {
        if (ia[i] == 0) {
            continue;
        }
        for (int j = 0; j < deg; ++j) {
            mpz_addmul(prod[i + j].get_mpz_t(), ia[i].get_mpz_t(), ib[j].get_mpz_t());
        }
    }
    const auto& mod = field.modulus();
    for (int k = 2 * deg - 2; k >= deg; --k) {
        if (prod[k] == 0) {
            continue;
        }
        const BigInt c = prod[k];
        for (int i = 0; i < deg; ++i) {
            mpz_submul(prod[k - deg + i].get_mpz_t(), c.get_mpz_t(), mod[i].get_mpz_t());
        }
        prod[k] = 0;
    }
    const BigInt den = da * db;
    std::vector<BigRational> out(static_cast<std::size_t>(deg));
    for (int i = 0; i < deg; ++i) {
        out[i] = BigRational(prod[i], den);
    }
    return CycloElem(a.order(), std::move(out));
}

CycloElem cyclo_lift(const CycloElem& a, int target_order)
{
    if (target_order <= 0 || target_order % a.order() != 0) {
        throw UsageError("cyclo_lift: target order " + std::to_string(target_order) +
                         " is not a multiple of " + std::to_string(a.order()));
    }
    if (target_order == a.order()) {
        return a;
    }
    const long step = target_order / a.order();
    const auto& field = CycloField::get(target_order);
    std::vector<BigRational> out(static_cast<std::size_t>(field.degree()));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const auto& c = a.coeffs()[i];
        if (c == 0) {
            continue;
        }
        const auto& p = field.power(static_cast<long>(i) * step);
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (p[j] != 0) {
                out[j] += c * p[j];
            }
        }
    }
    return CycloElem(target_order, std::move(out));
}

std::optional<CycloElem> cyclo_project(const CycloElem& a, int target_order)
{
    if (target_order <= 0 || a.order() % target_order != 0) {
        throw UsageError("cyclo_project: target order must divide the element's order");
    }
    const int small_deg = CycloField::get(target_order).degree();
    const int big_deg = CycloField::get(a.order()).degree();
    // Columns: images of the small power basis; augmented with a.
    std::vector<std::vector<BigRational>> rows(static_cast<std::size_t>(big_deg),
                                               std::vector<BigRational>(small_deg + 1));
    for (int i = 0; i < small_deg; ++i) {
        CycloElem basis = cyclo_lift(CycloElem::zeta_power(target_order, i), a.order());
        for (int r = 0; r < big_deg; ++r) {
            rows[r][i] = basis.coeff(r);
        }
    }
    for (int r = 0; r < big_deg; ++r) {
        rows[r][small_deg] = a.coeff(r);
    }
    // Gauss-Jordan elimination.
    int pivot_row = 0;
    std::vector<int> pivot_col_of_row;
    for (int col = 0; col < small_deg && pivot_row < big_deg; ++col) {
        int sel = -1;
        for (int r = pivot_row; r < big_deg; ++r) {
            if (rows[r][col] != 0) {
                sel = r;
                break;
            }
        }
        if (sel < 0) {
            continue;
        }
        std::swap(rows[sel], rows[pivot_row]);
        const BigRational inv = 1 / rows[pivot_row][col];
        for (auto& x : rows[pivot_row]) {
            x *= inv;
        }
        for (int r = 0; r < big_deg; ++r) {
            if (r != pivot_row && rows[r][col] != 0) {
                const BigRational f = rows[r][col];
                for (int c = 0; c <= small_deg; ++c) {
                    rows[r][c] -= f * rows[pivot_row][c];
                }
            }
        }
        pivot_col_of_row.push_back(col);
        ++pivot_row;
    }
    for (int r = pivot_row; r < big_deg; ++r) {
        if (rows[r][small_deg] != 0) {
            return std::nullopt;
        }
    }
    std::vector<BigRational> out(static_cast<std::size_t>(small_deg));
    for (int r = 0; r < pivot_row; ++r) {
        out[pivot_col_of_row[r]] = rows[r][small_deg];
    }
    return CycloElem(target_order, std::move(out));
}

namespace {

using QPoly = std::vector<BigRational>;

void trim(QPoly& p)
{
    while (p.size() > 1 && p.back() == 0) {
        p.pop_back();
    }
}

bool is_zero_poly(const QPoly& p)
{
    return p.size() == 1 && p[0] == 0;
}

QPoly sub(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        r[i] -= b[i];
    }
    trim(r);
    return r;
}

QPoly mul(const QPoly& a, const QPoly& b)
{
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] += a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

void divmod(const QPoly& num, const QPoly& den, QPoly& quot, QPoly& rem)
{
    rem = num;
    trim(rem);
    const std::size_t dd = den.size() - 1;
    if (rem.size() - 1 < dd || is_zero_poly(rem)) {
        quot = {BigRational(0)};
        return;
    }
    quot.assign(rem.size() - dd, BigRational(0));
    const BigRational lead_inv = 1 / den.back();
    for (std::size_t k = rem.size(); k-- > dd;) {
        if (rem[k] == 0) {
            continue;
        }
        const BigRational c = rem[k] * lead_inv;
        quot[k - dd] = c;
        for (std::size_t i = 0; i <= dd; ++i) {
            rem[k - dd + i] -= c * den[i];
        }
    }
    rem.resize(std::max<std::size_t>(dd, 1));
    trim(rem);
    trim(quot);
}

} // namespace

CycloElem cyclo_inv(const CycloElem& a)
{
    if (a.is_zero()) {
        throw DivisionByZeroError("cyclo_inv of zero");
    }
    const int order = a.order();
    const auto& field = CycloField::get(order);
    if (field.degree() == 1) {
        return CycloElem(order, 1 / a.coeff(0));
    }
    QPoly r0(field.modulus().begin(), field.modulus().end());
    QPoly r1(a.coeffs().begin(), a.coeffs().end());
    trim(r1);
    QPoly s0{BigRational(0)}, s1{BigRational(1)};
    while (!is_zero_poly(r1)) {
        QPoly q, r;
        divmod(r0, r1, q, r);
        QPoly s = sub(s0, mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.size() != 1) {
        throw ConsistencyError("cyclo_inv: element shares a factor with the modulus");
    }
    const BigRational c = r0[0];
    QPoly q, s;
    QPoly modq(field.modulus().begin(), field.modulus().end());
    divmod(s0, modq, q, s);
    std::vector<BigRational> out(static_cast<std::size_t>(field.degree()));
    for (std::size_t i = 0; i < s.size(); ++i) {
        out[i] = s[i] / c;
    }
    return CycloElem(order, std::move(out));
}

CycloElem cyclo_pow(const CycloElem& a, long e)
{
    if (e < 0) {
        return cyclo_pow(cyclo_inv(a), -e);
    }
    CycloElem acc(a.order(), BigRational(1));
    CycloElem base = a;
    while (e > 0) {
        if (e & 1) {
            acc = cyclo_mul(acc, base);
        }
        e >>= 1;
        if (e > 0) {
            base = cyclo_mul(base, base);
        }
    }
    return acc;
}

CycloElem galois_sigma(const CycloElem& a, long d)
{
    const int order = a.order();
    if (gcd_long(mod_floor(d, order), order) != 1) {
        throw UsageError("galois_sigma: d = " + std::to_string(d) + " is not a unit modulo " +
                         std::to_string(order));
    }
    const auto& field = CycloField::get(order);
    std::vector<BigRational> out(static_cast<std::size_t>(field.degree()));
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const auto& c = a.coeffs()[i];
        if (c == 0) {
            continue;
        }
        const auto& p = field.power(static_cast<long>(i) * d);
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (p[j] != 0) {
                out[j] += c * p[j];
            }
        }
    }
    return CycloElem(order, std::move(out));
}

std::pair<CycloElem, CycloElem> to_common_order(const CycloElem& a, const CycloElem& b)
{
    const int m = static_cast<int>(lcm_long(a.order(), b.order()));
    return {cyclo_lift(a, m), cyclo_lift(b, m)};
}

Complex embed_complex_current(const CycloElem& a)
{
    Complex acc;
    const Real step = Real(1) / a.order();
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const auto& c = a.coeffs()[i];
        if (c == 0) {
            continue;
        }
        Real cr = Real(c.get_num().get_str()) / Real(c.get_den().get_str());
        Complex z = exp_2pi_i(step * static_cast<long>(i));
        acc += Complex(cr * z.re, cr * z.im);
    }
    return acc;
}

Complex embed_complex(const CycloElem& a, int prec_bits)
{
    PrecisionScope scope(prec_bits);
    return embed_complex_current(a);
}

std::string to_string(const CycloElem& a)
{
    std::string out;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const BigRational& c = a.coeffs()[i];
        if (c == 0) {
            continue;
        }
        const bool neg = c < 0;
        const BigRational mag = neg ? BigRational(-c) : c;
        if (out.empty()) {
            out += neg ? "-" : "";
        } else {
            out += neg ? " - " : " + ";
        }
        if (i == 0) {
            out += to_string(mag);
            continue;
        }
        if (mag != 1) {
            out += to_string(mag) + "*";
        }
        out += "z";
        if (i > 1) {
            out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

CycloElem parse_cyclo(std::string_view text, int order)
{
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s += ch;
        }
    }
    if (s.empty()) {
        throw UsageError("empty cyclotomic literal");
    }
    const auto& field = CycloField::get(order);
    std::vector<BigRational> out(static_cast<std::size_t>(field.degree()));
    std::size_t pos = 0;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        }
        std::size_t end = s.find_first_of("+-", pos);
        std::string tok = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? s.size() : end;
        if (tok.empty()) {
            throw UsageError("malformed cyclotomic literal: " + std::string(text));
        }
        BigRational coeff = 1;
        long power = 0;
        const auto zpos = tok.find('z');
        if (zpos == std::string::npos) {
            coeff = parse_rational(tok);
        } else {
            if (zpos > 0) {
                if (tok[zpos - 1] != '*') {
                    throw UsageError("malformed cyclotomic term: " + tok);
                }
                coeff = parse_rational(tok.substr(0, zpos - 1));
            }
            power = 1;
            if (zpos + 1 < tok.size()) {
                if (tok[zpos + 1] != '^') {
                    throw UsageError("malformed cyclotomic term: " + tok);
                }
                power = std::stol(tok.substr(zpos + 2));
            }
        }
        coeff *= sign;
        const auto& p = field.power(power);
        for (std::size_t j = 0; j < p.size(); ++j) {
            out[j] += coeff * p[j];
        }
    }
    return CycloElem(order, std::move(out));
}

std::optional<long> root_of_unity_order(const CycloElem& a, long max_order)
{
    if (a.is_zero()) {
        return std::nullopt;
    }
    CycloElem p = a;
    for (long k = 1; k <= max_order; ++k) {
        if (p.is_one()) {
            return k;
        }
        p = cyclo_mul(p, a);
    }
    return std::nullopt;
}

} // namespace fricke
