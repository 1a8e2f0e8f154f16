#include "fricke/cm.hpp"

#include "fricke/errors.hpp"
#include "fricke/modforms.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <sstream>
#include <utility>

namespace fricke {

namespace {

// Fundamental -200 <= d < 0.
constexpr std::pair<long, int> kClassNumbers[] = {
    {-3, 1},    {-4, 1},    {-7, 1},    {-8, 1},    {-11, 1},   {-15, 2},   {-19, 1},
    {-20, 2},   {-23, 3},   {-24, 2},   {-31, 3},   {-35, 2},   {-39, 4},   {-40, 2},
    {-43, 1},   {-47, 5},   {-51, 2},   {-52, 2},   {-55, 4},   {-56, 4},   {-59, 3},
    {-67, 1},   {-68, 4},   {-71, 7},   {-79, 5},   {-83, 3},   {-84, 4},   {-87, 6},
    {-88, 2},   {-91, 2},   {-95, 8},   {-103, 5},  {-104, 6},  {-107, 3},  {-111, 8},
    {-115, 2},  {-116, 6},  {-119, 10}, {-120, 4},  {-123, 2},  {-127, 5},  {-131, 5},
    {-132, 4},  {-136, 4},  {-139, 3},  {-143, 10}, {-148, 2},  {-151, 7},  {-152, 6},
    {-155, 4},  {-159, 10}, {-163, 1},  {-164, 8},  {-167, 11}, {-168, 4},  {-179, 5},
    {-183, 8},  {-184, 4},  {-187, 2},  {-191, 13}, {-195, 4},  {-199, 9},
};

bool squarefree(long m)
{
    m = m < 0 ? -m : m;
    for (long p = 2; p * p <= m; ++p) {
        if (m % (p * p) == 0) {
            return false;
        }
    }
    return m != 0;
}

Real to_real(const BigRational& x)
{
    return Real(x.get_num().get_str()) / Real(x.get_den().get_str());
}

// exp(2 pi i x tau)
Complex exp_2pi_i_tau(const Real& x, const Complex& tau)
{
    const Real w = 2 * pi() * x;
    return exp(Complex(-w * tau.im, w * tau.re));
}

Real q_abs(const ImagQuadData& K)
{
    return boost::multiprecision::exp(-pi() * boost::multiprecision::sqrt(Real(-K.d)));
}

void check_tail(const Real& tail, double tol)
{
    if (tail > tol) {
        throw PrecisionError("series tail bound " + to_string(tail, 6) + " exceeds tolerance " +
                             to_string(Real(tol), 6) + "; increase T");
    }
}

CMValue eval_siegel(const IndexVector& v, long m, const ImagQuadData& K, long T, double tol)
{
    const SiegelSymbol s = siegel_symbol(v, T);
    const Complex tau = K.tau();
    const int n = v.level;
    const Complex q_root = exp_2pi_i_tau(Real(1) / n, tau);
    const Complex unit = evaluate_series(s.unit, q_root);

    CMValue out;
    out.tail_bound = boost::multiprecision::pow(q_abs(K), T);
    check_tail(out.tail_bound, tol);
    out.value = exp_2pi_i(to_real(frac_part(s.phase * m))) *
                exp_2pi_i_tau(to_real(s.qexp * m), tau) *
                pow(embed_complex_current(s.lead), m) * pow(unit, m);
    return out;
}

Complex lattice_point(const Complex& c, const Complex& tau)
{
    const Real m2 = c.im / tau.im;
    const Real m1 = c.re - m2 * tau.re;
    const Real r1 = boost::multiprecision::round(m1);
    const Real r2 = boost::multiprecision::round(m2);
    return Complex(r1 + r2 * tau.re, r2 * tau.im);
}

} // namespace

bool is_fundamental_discriminant(long d)
{
    if (d == 0 || d == 1) {
        return false;
    }
    const long r = mod_floor(d, 4);
    if (r == 1) {
        return squarefree(d);
    }
    if (r == 0) {
        const long m = mod_floor(d / 4, 4);
        return (m == 2 || m == 3) && squarefree(d / 4);
    }
    return false;
}

std::optional<int> class_number_lookup(long d)
{
    for (const auto& [dk, h] : kClassNumbers) {
        if (dk == d) {
            return h;
        }
    }
    return std::nullopt;
}

Complex ImagQuadData::tau() const
{
    Complex s = sqrt_negative(d);
    return Complex((Real(d) + s.re) / 2, s.im / 2);
}

ImagQuadData make_field(long d)
{
    if (d >= 0) {
        throw UsageError("discriminant " + std::to_string(d) + " is not negative");
    }
    if (!is_fundamental_discriminant(d)) {
        throw UsageError("discriminant " + std::to_string(d) + " is not fundamental");
    }
    const auto h = class_number_lookup(d);
    if (!h) {
        throw UsageError("discriminant " + std::to_string(d) +
                         " is outside the class-number table (|d| <= 200)");
    }
    ImagQuadData K;
    K.d = d;
    K.B = -d;
    K.C = (d * d - d) / 4;
    K.class_number = *h;
    if (K.B * K.B - 4 * K.C != d) {
        throw ConsistencyError("B^2 - 4C != d");
    }
    return K;
}

ReciprocityGroup reciprocity_group(const ImagQuadData& K, int level)
{
    if (level < 2) {
        throw UsageError("level N must be at least 2");
    }
    ReciprocityGroup g;
    g.level = level;
    const long n = level;
    const long B = mod_floor(K.B, n);
    const long C = mod_floor(K.C, n);
    for (long s = 0; s < n; ++s) {
        for (long t = 0; t < n; ++t) {
            const long det = mod_floor(t * t - B * s * t + C * s * s, n);
            if (gcd_long(det, n) != 1) {
                continue;
            }
            g.elements.push_back({s, t, make_mat(t - B * s, -C * s, s, t, level)});
        }
    }
    for (const auto& e : g.elements) {
        const long ns = mod_floor(-e.s, n);
        const long nt = mod_floor(-e.t, n);
        if (std::make_pair(e.s, e.t) <= std::make_pair(ns, nt)) {
            g.pm_classes.push_back(e);
        }
    }
    return g;
}

CMValue eval_series_at_cm(const FracQSeries& s, const ImagQuadData& K, int prec_bits, double tol)
{
    PrecisionScope scope(prec_bits);
    const QOrder o = ord_q(s);
    if (!o.value) {
        throw PrecisionError("series is zero to precision; increase T");
    }
    CMValue out;
    out.tail_bound = boost::multiprecision::pow(q_abs(K), to_real(s.trunc() - *o.value));
    check_tail(out.tail_bound, tol);
    const Complex q_root = exp_2pi_i_tau(Real(1) / s.exp_den(), K.tau());
    out.value = evaluate_series(s, q_root);
    return out;
}

CMValue eval_j_at_cm(const ImagQuadData& K, int prec_bits, long T, double tol)
{
    return eval_series_at_cm(j_series(T), K, prec_bits, tol);
}

CMValue eval_at_cm(const FamilyDescriptor& f, const IndexVector& v, const ImagQuadData& K,
                   int prec_bits, long T, double tol)
{
    if (f.kind == FamilyKind::SiegelPow) {
        if (v.level != f.level) {
            throw UsageError("index level does not match the family level");
        }
        PrecisionScope scope(prec_bits);
        return eval_siegel(v, f.exponent, K, T, tol);
    }
    return eval_series_at_cm(family_series(f, v, T), K, prec_bits, tol);
}

CMReport cm_conjugates(const FamilyDescriptor& f, long n, const ImagQuadData& K,
                       const CMOptions& opts)
{
    if (K.d == -3 || K.d == -4) {
        throw UsageError("Q(sqrt(-1)) and Q(sqrt(-3)) have extra units; the reciprocity "
                         "group description does not apply");
    }
    if (f.kind == FamilyKind::Product) {
        throw UsageError("cm conjugates need a family indexed by v");
    }
    const int level = f.level;
    PrecisionScope scope(opts.prec_bits);

    CMReport r;
    r.d = K.d;
    r.level = level;
    r.n = n;
    r.family = describe(f);
    r.class_number = K.class_number;

    const ReciprocityGroup W = reciprocity_group(K, level);
    for (const auto& e : W.pm_classes) {
        const IndexVector v = make_index(e.s, e.t, level);
        const CMValue h = eval_at_cm(f, v, K, opts.prec_bits, opts.T, opts.tol);
        if (e.s == 0 && e.t == 1 && abs(h.value) < opts.zero_tol) {
            throw ZeroValueError("h_[0,1/N](tau_K) vanishes numerically");
        }
        r.st.emplace_back(e.s, e.t);
        r.values.push_back(pow(h.value, n));
    }

    r.min_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        for (std::size_t k = i + 1; k < r.values.size(); ++k) {
            const Real dist = abs(r.values[i] - r.values[k]);
            if (dist < r.min_distance) {
                r.min_distance = dist;
            }
        }
    }
    r.distinct = r.min_distance > opts.tol;
    if (!r.distinct) {
        r.note = "coincident conjugates: tau_K may lie in the exceptional set, or precision "
                 "is insufficient";
    }

    r.poly.assign(1, Complex(1));
    for (const auto& x : r.values) {
        std::vector<Complex> next(r.poly.size() + 1);
        for (std::size_t i = 0; i < r.poly.size(); ++i) {
            next[i + 1] += r.poly[i];
            next[i] -= r.poly[i] * x;
        }
        r.poly = std::move(next);
    }

    if (K.class_number == 1) {
        const Complex tau = K.tau();
        Real worst = 0;
        for (const auto& c : r.poly) {
            Real res = abs(c - lattice_point(c, tau));
            if (res > worst) {
                worst = res;
            }
            r.residuals.push_back(std::move(res));
        }
        r.near_integral = worst < opts.integral_tol;
    }
    return r;
}

Real model_residual_at_cm(const BivarIntPoly& poly, int level, long n, const ImagQuadData& K,
                          int prec_bits, long T)
{
    PrecisionScope scope(prec_bits);
    const long m = 12L * level * n;
    const Complex g = eval_siegel(make_index(1, 0, level), m, K, T, 1.0).value *
                      eval_siegel(make_index(0, 1, level), 2 * m, K, T, 1.0).value;
    const Complex j = eval_series_at_cm(j_series(T), K, prec_bits, 1.0).value;
    const auto [value, largest] = evaluate_bivar(poly, g, j);
    return abs(value) / largest;
}

std::string to_text(const CMReport& r)
{
    std::ostringstream os;
    os << "d_K = " << r.d << ", N = " << r.level << ", family " << r.family << ", n = " << r.n
       << ", class number " << r.class_number << "\n";
    os << "conjugates: " << r.values.size() << "\n";
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        os << "  [" << r.st[i].first << "/" << r.level << "," << r.st[i].second << "/" << r.level
           << "]  " << to_string(r.values[i]) << "\n";
    }
    os << "min distance: "
       << (r.values.size() < 2 ? std::string("inf") : to_string(r.min_distance, 10)) << "\n";
    os << "distinct: " << (r.distinct ? "yes" : "no") << "\n";
    if (r.near_integral) {
        Real worst = 0;
        for (const auto& x : r.residuals) {
            worst = std::max(worst, x);
        }
        os << "max lattice residual: " << to_string(worst, 10) << "\n";
        os << "near-integral: " << (*r.near_integral ? "yes" : "no") << "\n";
    } else {
        os << "near-integral: not tested (class number > 1)\n";
    }
    if (!r.note.empty()) {
        os << "note: " << r.note << "\n";
    }
    return os.str();
}

std::string to_json(const CMReport& r)
{
    nlohmann::ordered_json j;
    j["d_K"] = r.d;
    j["N"] = r.level;
    j["n"] = r.n;
    j["family"] = r.family;
    j["class_number"] = r.class_number;
    auto vals = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        vals.push_back({{"s", r.st[i].first},
                        {"t", r.st[i].second},
                        {"re", to_string(r.values[i].re, 30)},
                        {"im", to_string(r.values[i].im, 30)}});
    }
    j["values"] = vals;
    if (r.values.size() < 2) {
        j["min_distance"] = nullptr;
    } else {
        j["min_distance"] = to_string(r.min_distance, 12);
    }
    j["distinct"] = r.distinct;
    auto poly = nlohmann::ordered_json::array();
    for (const auto& c : r.poly) {
        poly.push_back({{"re", to_string(c.re, 30)}, {"im", to_string(c.im, 30)}});
    }
    j["poly"] = poly;
    if (r.near_integral) {
        auto res = nlohmann::ordered_json::array();
        for (const auto& x : r.residuals) {
            res.push_back(to_string(x, 12));
        }
        j["residuals"] = res;
        j["near_integral"] = *r.near_integral;
    } else {
        j["residuals"] = nullptr;
        j["near_integral"] = nullptr;
    }
    if (!r.note.empty()) {
        j["note"] = r.note;
    }
    return j.dump(2);
}

} // namespace fricke
