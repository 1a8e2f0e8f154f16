#include "fricke/primitivity.hpp"

#include "fricke/errors.hpp"
#include "parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <tuple>

namespace fricke {

namespace {

using ojson = nlohmann::ordered_json;

struct Members {
    std::vector<IndexVector> classes;
    std::vector<FracQSeries> series;
};

Members build_members(const FamilyDescriptor& f, long T, const CheckOptions& opts)
{
    if (f.kind == FamilyKind::Product) {
        throw UsageError("primitivity checks need an indexed family");
    }
    if (f.level > opts.max_level) {
        throw UsageError("level " + std::to_string(f.level) + " exceeds the configured bound " +
                         std::to_string(opts.max_level));
    }
    Members m;
    m.classes = index_classes(f.level);
    std::vector<std::optional<FracQSeries>> tmp(m.classes.size());
    detail::parallel_for(
        m.classes.size(), [&](std::size_t i) { tmp[i] = family_series(f, m.classes[i], T); },
        opts.parallel);
    for (auto& s : tmp) {
        m.series.push_back(std::move(*s));
    }
    return m;
}

std::vector<std::pair<std::size_t, std::size_t>> pair_list(const Members& m,
                                                           const CheckOptions& opts)
{
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::size_t n = m.classes.size();
    if (opts.orbit_reduction) {
        const IndexVector e1 = index_class(IndexVector{1, 0, m.classes.front().level});
        std::size_t i0 = 0;
        while (!(m.classes[i0] == e1)) {
            ++i0;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i0) {
                pairs.emplace_back(std::min(i0, j), std::max(i0, j));
            }
        }
        return pairs;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

// h_{a v} = f_{a v} - f_{a^2 v} = f_{a v} - f_{+-v} = -h_v when a^2 = +-1 mod N.
bool diff_sign_identity(const FamilyDescriptor& f, const IndexVector& u, const IndexVector& v)
{
    if (f.kind != FamilyKind::Diff) {
        return false;
    }
    const long sq = mod_floor(f.diff_a * f.diff_a, f.level);
    if (sq != 1 && sq != f.level - 1) {
        return false;
    }
    auto scaled = [&](const IndexVector& w) {
        return index_class(IndexVector{f.diff_a * w.a, f.diff_a * w.b, w.level});
    };
    return scaled(v) == index_class(u) || scaled(u) == index_class(v);
}

ojson index_json(const IndexVector& v)
{
    return to_string(v);
}

ojson cyclo_json(const CycloElem& c)
{
    ojson j;
    j["order"] = c.order();
    j["value"] = to_string(c);
    return j;
}

} // namespace

RatioResult analyze_ratio(const FamilyDescriptor& f, const IndexVector& u, const FracQSeries& hu,
                          const IndexVector& v, const FracQSeries& hv)
{
    if (hu.is_zero_to_precision() || hv.is_zero_to_precision()) {
        return InconclusivePair{"member is zero to precision; raise T"};
    }
    const BigRational ou = *ord_q(hu).value;
    const BigRational ov = *ord_q(hv).value;
    if (ou != ov) {
        BigRational e = ou - ov;
        e.canonicalize();
        return NonConstantRatio{e};
    }
    auto [lu, lv] = to_common_order(hu.leading_coeff(), hv.leading_coeff());
    const CycloElem c = cyclo_mul(lu, cyclo_inv(lv));
    // Scan h_u - c h_v lazily; the first nonzero coefficient is the certificate.
    const int m = static_cast<int>(lcm_long(lcm_long(hu.cyclo_order(), hv.cyclo_order()), c.order()));
    const int d = static_cast<int>(lcm_long(hu.exp_den(), hv.exp_den()));
    const FracQSeries a = lift_series(hu, m, d);
    const FracQSeries b = lift_series(hv, m, d);
    const CycloElem cl = cyclo_lift(c, m);
    const long t = std::min(a.trunc_index(), b.trunc_index());
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    while (ia != a.terms().end() || ib != b.terms().end()) {
        long k;
        CycloElem diff(m);
        if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
            k = ia->first;
            diff = (ia++)->second;
        } else if (ia == a.terms().end() || ib->first < ia->first) {
            k = ib->first;
            diff = -cyclo_mul(cl, (ib++)->second);
        } else {
            k = ia->first;
            diff = (ia++)->second - cyclo_mul(cl, (ib++)->second);
        }
        if (k >= t) {
            break;
        }
        if (!diff.is_zero()) {
            BigRational e = make_rational(k, d) - ov;
            e.canonicalize();
            return NonConstantRatio{e};
        }
    }
    ConstantRatioCandidate cand;
    cand.constant = c;
    const long bound = 12L * f.level * f.level;
    if (cyclo_pow(c, bound).is_one()) {
        cand.root_of_unity_order = root_of_unity_order(c, bound);
    }
    cand.exact = diff_sign_identity(f, u, v) && c == CycloElem(c.order(), BigRational(-1));
    return cand;
}

PrimitivityReport check_primitive(const FamilyDescriptor& f, long T, const CheckOptions& opts)
{
    const Members m = build_members(f, T, opts);
    const auto pairs = pair_list(m, opts);
    std::vector<std::optional<PairCertificate>> certs(pairs.size());
    detail::parallel_for(
        pairs.size(),
        [&](std::size_t k) {
            const auto [i, j] = pairs[k];
            certs[k] = PairCertificate{m.classes[i], m.classes[j],
                                       distinctness_certificate(m.series[i], m.series[j])};
        },
        opts.parallel);

    PrimitivityReport r;
    r.level = f.level;
    r.precision = T;
    r.family = describe(f);
    for (auto& c : certs) {
        if (std::holds_alternative<UndecidedToPrecision>(c->cert)) {
            r.unresolved.emplace_back(c->u, c->v);
        }
        r.certificates.push_back(std::move(*c));
    }
    r.verdict = r.unresolved.empty() ? PrimitivityVerdict::Primitive : PrimitivityVerdict::Undecided;
    return r;
}

TotalPrimitivityReport check_totally_primitive(const FamilyDescriptor& f, long T,
                                               const CheckOptions& opts)
{
    const Members m = build_members(f, T, opts);
    const auto pairs = pair_list(m, opts);
    std::vector<std::optional<RatioAnalysis>> out(pairs.size());
    detail::parallel_for(
        pairs.size(),
        [&](std::size_t k) {
            const auto [i, j] = pairs[k];
            out[k] = RatioAnalysis{
                m.classes[i], m.classes[j],
                analyze_ratio(f, m.classes[i], m.series[i], m.classes[j], m.series[j])};
        },
        opts.parallel);

    TotalPrimitivityReport r;
    r.level = f.level;
    r.precision = T;
    r.family = describe(f);
    bool all_nonconstant = true;
    bool proven_power_collision = false;
    for (auto& a : out) {
        if (const auto* c = std::get_if<ConstantRatioCandidate>(&a->result)) {
            all_nonconstant = false;
            if (c->exact && c->root_of_unity_order) {
                proven_power_collision = true;
            }
        } else if (std::holds_alternative<InconclusivePair>(a->result)) {
            all_nonconstant = false;
        }
        r.ratios.push_back(std::move(*a));
    }
    r.verdict = proven_power_collision ? TotalVerdict::NotTotallyPrimitive
                : all_nonconstant      ? TotalVerdict::TotallyPrimitive
                                       : TotalVerdict::Undecided;
    return r;
}

BigRational order_profile(const FamilyDescriptor& f, const IndexVector& v, long T)
{
    const FracQSeries s = family_series(f, v, T);
    const QOrder o = ord_q(s);
    if (o.is_zero_to_precision()) {
        throw PrecisionError("member " + to_string(v) + " is zero to precision at T = " +
                             std::to_string(T) + "; raise T");
    }
    if (f.kind == FamilyKind::SiegelPow) {
        BigRational expected = bernoulli2(frac_part(v.v1())) * f.exponent / 2;
        expected.canonicalize();
        if (*o.value != expected) {
            throw ConsistencyError("Siegel power order " + to_string(*o.value) +
                                   " differs from the Bernoulli value " + to_string(expected));
        }
    }
    return *o.value;
}

const char* to_string(PrimitivityVerdict v)
{
    switch (v) {
    case PrimitivityVerdict::Primitive:
        return "Primitive";
    case PrimitivityVerdict::NotPrimitive:
        return "NotPrimitive";
    case PrimitivityVerdict::Undecided:
        return "Undecided";
    }
    return "?";
}

const char* to_string(TotalVerdict v)
{
    switch (v) {
    case TotalVerdict::TotallyPrimitive:
        return "TotallyPrimitive";
    case TotalVerdict::NotTotallyPrimitive:
        return "NotTotallyPrimitive";
    case TotalVerdict::Undecided:
        return "Undecided";
    }
    return "?";
}

std::string to_json(const PrimitivityReport& r)
{
    ojson j;
    j["level"] = r.level;
    j["precision"] = r.precision;
    j["family"] = r.family;
    j["verdict"] = to_string(r.verdict);
    auto certs = ojson::array();
    for (const auto& c : r.certificates) {
        ojson e;
        e["u"] = index_json(c.u);
        e["v"] = index_json(c.v);
        if (const auto* d = std::get_if<Distinct>(&c.cert)) {
            e["certificate"] = "Distinct";
            e["exponent"] = to_string(d->exponent);
            e["coeff_u"] = cyclo_json(d->coeff_a);
            e["coeff_v"] = cyclo_json(d->coeff_b);
        } else {
            e["certificate"] = "UndecidedToPrecision";
            e["trunc"] = to_string(std::get<UndecidedToPrecision>(c.cert).trunc);
        }
        certs.push_back(std::move(e));
    }
    j["certificates"] = std::move(certs);
    auto unresolved = ojson::array();
    for (const auto& [u, v] : r.unresolved) {
        unresolved.push_back(ojson::array({index_json(u), index_json(v)}));
    }
    j["unresolved"] = std::move(unresolved);
    return j.dump(2);
}

namespace {

ojson ratio_json(const RatioAnalysis& a)
{
    ojson e;
    e["u"] = index_json(a.u);
    e["v"] = index_json(a.v);
    if (const auto* n = std::get_if<NonConstantRatio>(&a.result)) {
        e["analysis"] = "NonConstantRatio";
        e["exponent"] = to_string(n->exponent);
    } else if (const auto* c = std::get_if<ConstantRatioCandidate>(&a.result)) {
        e["analysis"] = "ConstantRatioCandidate";
        e["constant"] = cyclo_json(c->constant);
        if (c->root_of_unity_order) {
            e["root_of_unity_order"] = *c->root_of_unity_order;
        } else {
            e["root_of_unity_order"] = nullptr;
        }
        e["exact"] = c->exact;
    } else {
        e["analysis"] = "Inconclusive";
        e["reason"] = std::get<InconclusivePair>(a.result).reason;
    }
    return e;
}

std::string ratio_text(const RatioAnalysis& a)
{
    std::string s = to_string(a.u) + " " + to_string(a.v) + ": ";
    if (const auto* c = std::get_if<ConstantRatioCandidate>(&a.result)) {
        s += "constant ratio " + to_string(c->constant);
        if (c->constant.order() > 1 && !c->constant.is_rational()) {
            s += " (z = zeta_" + std::to_string(c->constant.order()) + ")";
        }
        s += c->root_of_unity_order
                 ? ", root of unity of order " + std::to_string(*c->root_of_unity_order)
                 : std::string(", not a root of unity");
        s += c->exact ? ", exact identity" : ", agreement to precision only";
    } else if (const auto* i = std::get_if<InconclusivePair>(&a.result)) {
        s += "inconclusive (" + i->reason + ")";
    } else {
        s += "non-constant ratio at q^" + to_string(std::get<NonConstantRatio>(a.result).exponent);
    }
    return s;
}

} // namespace

std::string to_json(const TotalPrimitivityReport& r)
{
    ojson j;
    j["level"] = r.level;
    j["precision"] = r.precision;
    j["family"] = r.family;
    j["verdict"] = to_string(r.verdict);
    auto ratios = ojson::array();
    for (const auto& a : r.ratios) {
        ratios.push_back(ratio_json(a));
    }
    j["ratios"] = std::move(ratios);
    return j.dump(2);
}

std::string to_text(const PrimitivityReport& r)
{
    std::string s = "family " + r.family + ", T = " + std::to_string(r.precision) + "\n";
    s += "pairs: " + std::to_string(r.certificates.size()) +
         ", distinct: " + std::to_string(r.certificates.size() - r.unresolved.size()) + "\n";
    for (const auto& [u, v] : r.unresolved) {
        s += "undecided " + to_string(u) + " " + to_string(v) + "\n";
    }
    s += "verdict: " + std::string(to_string(r.verdict)) + "\n";
    return s;
}

std::string to_text(const TotalPrimitivityReport& r)
{
    std::size_t nonconst = 0;
    std::string detail;
    for (const auto& a : r.ratios) {
        if (std::holds_alternative<NonConstantRatio>(a.result)) {
            ++nonconst;
        } else {
            detail += ratio_text(a) + "\n";
        }
    }
    std::string s = "family " + r.family + ", T = " + std::to_string(r.precision) + "\n";
    s += "pairs: " + std::to_string(r.ratios.size()) +
         ", non-constant ratios: " + std::to_string(nonconst) + "\n";
    s += detail;
    s += "verdict: " + std::string(to_string(r.verdict)) + "\n";
    return s;
}

} // namespace fricke
