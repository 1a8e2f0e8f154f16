#include "cli.hpp"

#include "fricke/cm.hpp"
#include "fricke/errors.hpp"
#include "fricke/modelcurve.hpp"
#include "fricke/modforms.hpp"
#include "fricke/primitivity.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace fricke::cli {

namespace {

constexpr long kDefaultT = 60;
constexpr int kDefaultPrecBits = 128;
constexpr double kDefaultTol = 1e-6;

struct Config {
    std::string command;
    std::optional<int> level;
    std::optional<long> terms;
    std::optional<long> n;
    std::string family;
    std::optional<std::string> v;
    std::optional<long> dk;
    int prec_bits = kDefaultPrecBits;
    double tol = kDefaultTol;
    bool json = false;
    std::string out_file;
    bool total = false;
    std::string expect;
    int max_level = CheckOptions{}.max_level;
    bool orbit_reduction = false;
};

struct FamilyName {
    std::string base; // fricke, siegel, diff, sgen, j, e4, e6, delta, wp
    long diff_a = 0;
};

FamilyName parse_family(const std::string& s)
{
    if (s.rfind("diff:", 0) == 0) {
        const std::string a = s.substr(5);
        std::size_t used = 0;
        long val = 0;
        try {
            val = std::stol(a, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (a.empty() || used != a.size()) {
            throw UsageError("bad diff family '" + s + "'; expected diff:a");
        }
        return {"diff", val};
    }
    static const char* known[] = {"fricke", "siegel", "sgen", "j", "e4", "e6", "delta", "wp"};
    for (const char* k : known) {
        if (s == k) {
            return {s, 0};
        }
    }
    throw UsageError("unknown family '" + s + "'");
}

int need_level(const Config& c)
{
    if (!c.level) {
        throw UsageError("--N is required for " + c.command);
    }
    return *c.level;
}

IndexVector need_index(const Config& c)
{
    const int level = need_level(c);
    if (!c.v) {
        throw UsageError("--v is required for family " + c.family);
    }
    return parse_index(*c.v, level);
}

// Siegel exponent is 12 n, n defaulting to N.
long siegel_exponent(const Config& c)
{
    return 12 * c.n.value_or(need_level(c));
}

FamilyDescriptor indexed_family(const Config& c)
{
    const FamilyName f = parse_family(c.family);
    const int level = need_level(c);
    if (f.base == "fricke") {
        return fricke_family(level);
    }
    if (f.base == "siegel") {
        return siegel_family(level, siegel_exponent(c));
    }
    if (f.base == "diff") {
        return diff_family(level, f.diff_a);
    }
    throw UsageError("family " + c.family + " is not indexed by v here");
}

FracQSeries qexp_at(const Config& c, long T)
{
    const FamilyName f = parse_family(c.family);
    if (f.base == "j") {
        return j_series(T);
    }
    if (f.base == "e4") {
        return e4_series(T);
    }
    if (f.base == "e6") {
        return e6_series(T);
    }
    if (f.base == "delta") {
        return delta_norm_series(T);
    }
    if (f.base == "wp") {
        return wp_norm_series(need_index(c), T);
    }
    if (f.base == "sgen") {
        const int level = need_level(c);
        return conjugate_series(siegel_generator(level, c.n.value_or(1)), identity_mat(level), T);
    }
    return family_series(indexed_family(c), need_index(c), T);
}

void validate_qexp(const Config& c)
{
    const FamilyName f = parse_family(c.family);
    if (f.base == "fricke" || f.base == "siegel" || f.base == "diff" || f.base == "wp") {
        need_index(c);
    }
    if (f.base == "sgen") {
        need_level(c);
    }
    if (f.base == "siegel" || f.base == "diff" || f.base == "fricke") {
        indexed_family(c);
    }
    if (c.terms && *c.terms < 1) {
        throw UsageError("--terms must be positive");
    }
}

std::string cmd_qexp(const Config& c)
{
    validate_qexp(c);
    const long k = c.terms.value_or(kDefaultT);
    long T = k + 1;
    FracQSeries s = qexp_at(c, T);
    while (s.is_zero_to_precision()) {
        if (T > 4096) {
            throw PrecisionError("series is zero to precision at T = " + std::to_string(T));
        }
        T *= 2;
        s = qexp_at(c, T);
    }
    const BigRational target = *ord_q(s).value + k;
    if (s.trunc() < target) {
        mpz_class up = target.get_num();
        mpz_cdiv_q(up.get_mpz_t(), target.get_num().get_mpz_t(), target.get_den().get_mpz_t());
        s = qexp_at(c, up.get_si() + 1);
    }
    s = truncate_series(s, target);
    return c.json ? to_json(s) + "\n" : to_string(s) + "\n";
}

std::string cmd_family_check(const Config& c)
{
    const FamilyDescriptor f = indexed_family(c);
    CheckOptions opts;
    opts.max_level = c.max_level;
    opts.orbit_reduction = c.orbit_reduction;
    const long T = c.terms.value_or(kDefaultT);
    if (c.total) {
        const auto r = check_totally_primitive(f, T, opts);
        return c.json ? to_json(r) + "\n" : to_text(r);
    }
    const auto r = check_primitive(f, T, opts);
    return c.json ? to_json(r) + "\n" : to_text(r);
}

bool family_check_affirmative(const std::string& report, const Config& c)
{
    const std::string want = c.total ? "TotallyPrimitive" : "Primitive";
    if (c.json) {
        return nlohmann::json::parse(report).at("verdict").get<std::string>() == want;
    }
    return report.find("verdict: " + want + "\n") != std::string::npos;
}

std::string cmd_qn_set(const Config& c)
{
    const auto q = qn_set(need_level(c));
    if (c.json) {
        nlohmann::ordered_json j;
        j["N"] = need_level(c);
        j["Q_N"] = q;
        return j.dump() + "\n";
    }
    std::string s;
    for (std::size_t i = 0; i < q.size(); ++i) {
        s += (i ? " " : "") + std::to_string(q[i]);
    }
    return s + "\n";
}

std::string cmd_model(const Config& c)
{
    const int level = need_level(c);
    const long n = c.n.value_or(1);
    const ModelResult r = model_polynomial(level, n, c.terms.value_or(0));
    return c.json ? model_to_json(r.poly) + "\n" : format_model(r.poly);
}

std::string cmd_cm(const Config& c)
{
    if (!c.dk) {
        throw UsageError("--dk is required for cm");
    }
    const int level = need_level(c);
    const ImagQuadData K = make_field(*c.dk);
    const FamilyName fam = parse_family(c.family);
    FamilyDescriptor f;
    if (fam.base == "siegel") {
        f = siegel_family(level, 12L * level);
    } else if (fam.base == "fricke") {
        f = fricke_family(level);
    } else if (fam.base == "diff") {
        f = diff_family(level, fam.diff_a);
    } else {
        throw UsageError("cm supports families siegel, fricke and diff:a");
    }
    CMOptions opts;
    opts.prec_bits = c.prec_bits;
    opts.tol = c.tol;
    opts.T = c.terms.value_or(kDefaultT);
    const CMReport r = cm_conjugates(f, c.n.value_or(1), K, opts);
    return c.json ? to_json(r) + "\n" : to_text(r);
}

std::string cmd_orbit(const Config& c)
{
    const int level = need_level(c);
    const long T = c.terms.value_or(kDefaultT);
    const FamilyName fam = parse_family(c.family);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::ostringstream os;
    if (fam.base == "sgen") {
        const long n = c.n.value_or(1);
        for (const auto& m : conjugate_orbit(level, n, T)) {
            const auto o = ord_q(m.series);
            const std::string ord = o.value ? to_string(*o.value) : "zero to precision";
            const std::string lead =
                o.value ? to_string(m.series.leading_coeff()) : std::string("0");
            os << to_string(m.gamma) << "  ord " << ord << "  lead " << lead << "\n";
            rows.push_back({{"gamma", to_string(m.gamma)}, {"ord", ord}, {"lead", lead}});
        }
    } else {
        const FamilyDescriptor f = indexed_family(c);
        const IndexVector v = need_index(c);
        for (const auto& g : cosets_mod_pm_gamma(level)) {
            const IndexVector w = act_F3(v, g);
            const BigRational ord = order_profile(f, w, T);
            os << to_string(g) << "  " << to_string(w) << "  ord " << to_string(ord) << "\n";
            rows.push_back({{"gamma", to_string(g)}, {"v", to_string(w)}, {"ord", to_string(ord)}});
        }
    }
    if (c.json) {
        nlohmann::ordered_json j;
        j["N"] = level;
        j["family"] = c.family;
        j["orbit"] = rows;
        return j.dump(2) + "\n";
    }
    return os.str();
}

std::string header(const Config& c)
{
    std::ostringstream os;
    os << "# fricke " << c.command << ": T=" << c.terms.value_or(kDefaultT)
       << " prec_bits=" << c.prec_bits << " tol=" << c.tol;
    if (c.level) {
        os << " N=" << *c.level;
    }
    return os.str();
}

void add_common(CLI::App* sub, Config& c, bool with_family)
{
    sub->add_option("--N", c.level, "level N")->check(CLI::Range(2, 1000));
    sub->add_option("--terms", c.terms, "truncation / number of terms (default 60)");
    sub->add_option("--n", c.n, "exponent parameter n");
    if (with_family) {
        sub->add_option("--family", c.family,
                        "fricke|siegel|diff:a|sgen|j|e4|e6|delta|wp");
        sub->add_option("--v", c.v, "index vector a/N,b/N");
    }
    sub->add_option("--prec-bits", c.prec_bits, "working precision in bits")
        ->check(CLI::Range(32, 100000));
    sub->add_option("--tol", c.tol, "distinctness / tail tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--json", c.json, "JSON output");
    sub->add_option("--out", c.out_file, "write output to FILE");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Config c;
    CLI::App app{"Fricke families, modular curve models and CM values", "fricke"};
    app.require_subcommand(1);

    auto* qexp = app.add_subcommand("qexp", "print a q-expansion");
    add_common(qexp, c, true);
    auto* check = app.add_subcommand("family-check", "primitivity certificates");
    add_common(check, c, true);
    check->add_flag("--total", c.total, "check total primitivity");
    check->add_option("--expect", c.expect, "exit 1 unless the verdict is affirmative")
        ->check(CLI::IsMember({"primitive"}));
    check->add_option("--max-level", c.max_level, "largest accepted N");
    check->add_flag("--orbit-reduction", c.orbit_reduction, "compare against [1/N,0] only");
    auto* qn = app.add_subcommand("qn-set", "the set Q_N for odd N");
    add_common(qn, c, false);
    auto* model = app.add_subcommand("model", "plane model f_N(x, y) of X(N)");
    add_common(model, c, false);
    auto* cm = app.add_subcommand("cm", "conjugates at the CM point");
    add_common(cm, c, true);
    cm->add_option("--dk", c.dk, "negative fundamental discriminant");
    auto* orbit = app.add_subcommand("orbit", "conjugates over SL2(Z/N)/{+-1}");
    add_common(orbit, c, true);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Ok;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << (app.get_subcommands().empty() ? app.help()
                                                   : app.get_subcommands().front()->help());
            return Ok;
        }
        err << "error: " << e.what() << "\n";
        return Usage;
    }

    CLI::App* sub = app.get_subcommands().front();
    c.command = sub->get_name();
    if (c.family.empty()) {
        c.family = c.command == "orbit" ? "sgen" : (c.command == "qexp" ? "j" : "siegel");
    }

    std::string text;
    try {
        if (c.command == "qexp") {
            text = cmd_qexp(c);
        } else if (c.command == "family-check") {
            text = cmd_family_check(c);
        } else if (c.command == "qn-set") {
            text = cmd_qn_set(c);
        } else if (c.command == "model") {
            text = cmd_model(c);
        } else if (c.command == "cm") {
            text = cmd_cm(c);
        } else {
            text = cmd_orbit(c);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return Usage;
    } catch (const PrecisionError& e) {
        err << "precision error: " << e.what() << "\n";
        return Precision;
    } catch (const ZeroValueError& e) {
        err << "zero value: " << e.what() << "\n";
        return Negative;
    } catch (const DivisionByZeroError& e) {
        err << "usage error: " << e.what() << "\n";
        return Usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return Internal;
    }

    err << header(c) << "\n";
    if (!c.out_file.empty()) {
        std::ofstream f(c.out_file, std::ios::binary);
        if (!f) {
            err << "usage error: cannot open " << c.out_file << "\n";
            return Usage;
        }
        f << text;
    } else {
        out << text;
    }
    if (c.command == "family-check" && !c.expect.empty() && !family_check_affirmative(text, c)) {
        return Negative;
    }
    return Ok;
}

} // namespace fricke::cli
