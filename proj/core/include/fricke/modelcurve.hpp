#pragma once

// Plane models f_N(x, y) of X(N) with f_N(g, j) = 0, where
// g = g_{[1/N,0]}^(12Nn) g_{[0,1/N]}^(24Nn), plus the finite-group checks
// that g and f_{[1/N,0]} - 1/f_{[0,1/N]} have trivial stabilizer in
// SL2(Z/N)/{+-I}.

#include "fricke/famgroup.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fricke {

// (x-degree, y-degree) -> coefficient; no zero entries.
struct BivarIntPoly {
    std::map<std::pair<int, int>, BigInt> coeffs;

    int x_degree() const;
    int y_degree() const;
    // Coefficient of x^i as a list indexed by y-degree.
    std::vector<BigInt> x_coefficient(int i) const;
    BigInt at(int i, int k) const;
};

// Coefficients in Q(zeta_M) indexed by j-degree.
struct JPolynomial {
    std::vector<CycloElem> coeffs;
};

struct OrbitMember {
    MatModN gamma;
    FracQSeries series;
};

// g^gamma for every coset representative gamma of SL2(Z/N)/{+-I}, identity first.
std::vector<OrbitMember> conjugate_orbit(int level, long n, long T);

// Cancels leading q^-k terms against c j^k. The input must have integral
// exponents and be a polynomial in j; anything left over below the truncation
// raises NotAJPolynomialError.
JPolynomial j_reduce(const FracQSeries& s);
// sum c_k j^k to truncation T.
FracQSeries evaluate_j_polynomial(const JPolynomial& p, long T);

struct ModelResult {
    BivarIntPoly poly;
    long precision = 0;     // truncation used for the orbit members
    long residual_trunc = 0; // the root identity was checked below this exponent
    std::vector<BigRational> orbit_orders;
    int retries = 0;
};

// Required orbit truncation: (coset count) * (max pole order) + margin.
long model_precision(int level, long n, long margin = 8);
// Expands prod (x - g^gamma), j-reduces each coefficient and checks the root
// identity. T below model_precision is raised automatically; one retry with a
// doubled margin is made before NotAJPolynomialError escapes.
ModelResult model_polynomial(int level, long n, long T = 0);
BivarIntPoly model_polynomial_only(int level, long n);

// "2^8*3^2" style, with a leading '-' for negative values. Prime factors are
// found by trial division up to 10^5; any larger cofactor is printed whole.
std::string factored(const BigInt& c);
// One line per x-power, descending, each x-coefficient as a y-polynomial in
// descending degree with factored coefficients.
std::string format_model(const BivarIntPoly& p);
std::string model_to_json(const BivarIntPoly& p);

// Value of p(x, y) and the largest monomial modulus |c x^i y^k|.
std::pair<Complex, Real> evaluate_bivar(const BivarIntPoly& p, const Complex& x, const Complex& y);

enum class StabilizerVerdict { TrivialStabilizer, Undecided };

struct CosetCertificate {
    MatModN gamma;
    DistinctnessCertificate cert;
};

struct StabilizerReport {
    int level = 0;
    long n = 0;
    long precision = 0;
    StabilizerVerdict verdict = StabilizerVerdict::Undecided;
    std::vector<CosetCertificate> certificates; // non-identity cosets
    // Siegel only: (ord g^gamma, ord g^(gamma S)) with S = [0,-1;1,0].
    std::vector<std::pair<BigRational, BigRational>> ord_pairs;
    bool ord_pair_isolates_identity = false;
    bool ord_pairs_pairwise_distinct = false;
    bool orbit_pairwise_distinct = false;
};

StabilizerReport stabilizer_check_fricke(int level, long T = 40);
StabilizerReport stabilizer_check_siegel(int level, long n, long T = 40);

const char* to_string(StabilizerVerdict v);
std::string to_text(const StabilizerReport& r);

} // namespace fricke
