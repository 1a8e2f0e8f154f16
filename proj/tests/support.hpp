#pragma once

#include "fricke/exactnum.hpp"
#include "fricke/qseries.hpp"

#include <random>
#include <vector>

namespace fricke::testing {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20261015);
    return gen;
}

inline long rand_int(long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng());
}

inline BigRational rand_rational(long range = 9, long max_den = 4)
{
    return make_rational(rand_int(-range, range), rand_int(1, max_den));
}

inline CycloElem rand_cyclo(int order)
{
    const int deg = CycloField::get(order).degree();
    std::vector<BigRational> c;
    for (int i = 0; i < deg; ++i) {
        c.push_back(rand_int(0, 2) == 0 ? BigRational(0) : rand_rational());
    }
    return CycloElem(order, std::move(c));
}

inline CycloElem rand_nonzero_cyclo(int order)
{
    for (;;) {
        CycloElem c = rand_cyclo(order);
        if (!c.is_zero()) {
            return c;
        }
    }
}

// Random series with indices in [lo, trunc_index), sparse.
inline FracQSeries rand_series(int order, int den, long lo, long trunc_index, bool nonzero_lead = true)
{
    std::vector<FracQSeries::Term> terms;
    for (long k = lo; k < trunc_index; ++k) {
        if ((k == lo && nonzero_lead) || rand_int(0, 2) == 0) {
            terms.emplace_back(k, k == lo && nonzero_lead ? rand_nonzero_cyclo(order)
                                                          : rand_cyclo(order));
        }
    }
    return FracQSeries::from_terms(order, den, trunc_index, std::move(terms));
}

inline FracQSeries series_of(std::vector<std::pair<long, long>> index_coeff, int den,
                             long trunc_index, int order = 1)
{
    std::vector<FracQSeries::Term> terms;
    for (auto [k, c] : index_coeff) {
        terms.emplace_back(k, CycloElem(order, BigRational(c)));
    }
    return FracQSeries::from_terms(order, den, trunc_index, std::move(terms));
}

inline bool same_series(const FracQSeries& a, const FracQSeries& b)
{
    return a.trunc() == b.trunc() && agree_to(a, b, a.trunc());
}

} // namespace fricke::testing
