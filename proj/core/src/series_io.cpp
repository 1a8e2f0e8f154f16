#include "fricke/errors.hpp"
#include "fricke/qseries.hpp"

#include <json.hpp>

namespace fricke {

namespace {

std::string q_power(const BigRational& e)
{
    if (e == 0) {
        return "";
    }
    if (e == 1) {
        return "q";
    }
    if (e.get_den() == 1) {
        return "q^" + to_string(e);
    }
    return "q^(" + to_string(e) + ")";
}

std::string term_text(const CycloElem& c, const BigRational& e, bool first)
{
    const std::string qp = q_power(e);
    std::string out;
    if (c.is_rational()) {
        const BigRational& r = c.rational_part();
        const bool neg = r < 0;
        const BigRational mag = neg ? BigRational(-r) : r;
        out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (qp.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += qp;
        } else {
            out += to_string(mag) + "*" + qp;
        }
        return out;
    }
    out += first ? "(" : " + (";
    out += to_string(c) + ")";
    if (!qp.empty()) {
        out += "*" + qp;
    }
    return out;
}

BigRational parse_q_power(const std::string& s)
{
    if (s == "q") {
        return 1;
    }
    if (s.size() < 3 || s[0] != 'q' || s[1] != '^') {
        throw UsageError("malformed q-power: " + s);
    }
    std::string e = s.substr(2);
    if (!e.empty() && e.front() == '(') {
        if (e.back() != ')') {
            throw UsageError("malformed q-power: " + s);
        }
        e = e.substr(1, e.size() - 2);
    }
    return parse_rational(e);
}

std::vector<std::string> split_terms(std::string_view text)
{
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == '(') {
            ++depth;
        } else if (ch == ')') {
            --depth;
        }
        if (depth == 0 && ch == ' ' && i + 2 < text.size() &&
            (text[i + 1] == '+' || text[i + 1] == '-') && text[i + 2] == ' ') {
            parts.push_back(cur);
            cur = text[i + 1] == '-' ? "-" : "";
            i += 2;
            continue;
        }
        cur += ch;
    }
    parts.push_back(cur);
    return parts;
}

} // namespace

std::string to_string(const FracQSeries& a)
{
    std::string out;
    for (const auto& [k, c] : a.terms()) {
        out += term_text(c, make_rational(k, a.exp_den()), out.empty());
    }
    const BigRational t = a.trunc();
    const std::string tail = t == 0 ? "O(1)" : "O(" + q_power(t) + ")";
    return out.empty() ? tail : out + " + " + tail;
}

FracQSeries parse_series(std::string_view text, int cyclo_order, int exp_den)
{
    std::vector<std::pair<BigRational, CycloElem>> raw;
    std::optional<BigRational> trunc;
    for (std::string tok : split_terms(text)) {
        while (!tok.empty() && tok.front() == ' ') {
            tok.erase(tok.begin());
        }
        while (!tok.empty() && tok.back() == ' ') {
            tok.pop_back();
        }
        if (tok.empty()) {
            throw UsageError("empty term in series text");
        }
        if (tok.rfind("O(", 0) == 0) {
            if (tok.back() != ')') {
                throw UsageError("malformed truncation marker: " + tok);
            }
            const std::string inner = tok.substr(2, tok.size() - 3);
            trunc = inner == "1" ? BigRational(0) : parse_q_power(inner);
            continue;
        }
        if (trunc) {
            throw UsageError("terms after the truncation marker");
        }
        BigRational sign = 1;
        if (tok.front() == '-') {
            sign = -1;
            tok.erase(tok.begin());
        }
        CycloElem coeff(cyclo_order, BigRational(1));
        std::string rest;
        if (tok.front() == '(') {
            const auto close = tok.find(')');
            if (close == std::string::npos) {
                throw UsageError("unbalanced parenthesis in series text");
            }
            coeff = parse_cyclo(tok.substr(1, close - 1), cyclo_order);
            rest = tok.substr(close + 1);
            if (!rest.empty()) {
                if (rest.front() != '*') {
                    throw UsageError("malformed series term: " + tok);
                }
                rest.erase(rest.begin());
            }
        } else if (tok.front() == 'q') {
            rest = tok;
        } else {
            const auto star = tok.find('*');
            coeff = CycloElem(cyclo_order, parse_rational(tok.substr(0, star)));
            rest = star == std::string::npos ? "" : tok.substr(star + 1);
        }
        const BigRational e = rest.empty() ? BigRational(0) : parse_q_power(rest);
        raw.emplace_back(e, coeff * sign);
    }
    if (!trunc) {
        throw UsageError("series text lacks an O(q^T) truncation marker");
    }
    auto to_index = [exp_den](const BigRational& e) {
        BigRational s = e * exp_den;
        if (s.get_den() != 1) {
            throw UsageError("exponent " + to_string(e) + " is not in (1/" +
                             std::to_string(exp_den) + ")Z");
        }
        return s.get_num().get_si();
    };
    std::vector<FracQSeries::Term> terms;
    for (auto& [e, c] : raw) {
        terms.emplace_back(to_index(e), std::move(c));
    }
    const long t = to_index(*trunc);
    for (const auto& term : terms) {
        if (term.first >= t) {
            throw UsageError("term at or past the truncation marker");
        }
    }
    return FracQSeries::from_terms(cyclo_order, exp_den, t, std::move(terms));
}

std::string to_json(const FracQSeries& a)
{
    nlohmann::ordered_json j;
    j["cyclo_order"] = a.cyclo_order();
    j["exp_den"] = a.exp_den();
    j["trunc"] = to_string(a.trunc());
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [k, c] : a.terms()) {
        nlohmann::ordered_json t;
        t["exp"] = to_string(make_rational(k, a.exp_den()));
        auto coeff = nlohmann::ordered_json::array();
        for (const auto& x : c.coeffs()) {
            coeff.push_back(to_string(x));
        }
        t["coeff"] = std::move(coeff);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

FracQSeries series_from_json(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("invalid series JSON: ") + e.what());
    }
    try {
        const int m = j.at("cyclo_order").get<int>();
        const int d = j.at("exp_den").get<int>();
        auto to_index = [d](const BigRational& e) {
            BigRational s = e * d;
            if (s.get_den() != 1) {
                throw UsageError("exponent not in (1/D)Z");
            }
            return s.get_num().get_si();
        };
        const long t = to_index(parse_rational(j.at("trunc").get<std::string>()));
        std::vector<FracQSeries::Term> terms;
        for (const auto& jt : j.at("terms")) {
            std::vector<BigRational> coords;
            for (const auto& x : jt.at("coeff")) {
                coords.push_back(parse_rational(x.get<std::string>()));
            }
            terms.emplace_back(to_index(parse_rational(jt.at("exp").get<std::string>())),
                               CycloElem(m, std::move(coords)));
        }
        return FracQSeries::from_terms(m, d, t, std::move(terms));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed series JSON: ") + e.what());
    }
}

} // namespace fricke
