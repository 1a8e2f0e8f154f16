#pragma once

// Matrices mod N, index actions, and the families the library knows how to
// expand.
//
// Matrices act on indices through the transpose: h_v^alpha = h_{alpha^T v}.
// This is a right action, act_F3(v, alpha * beta) = act_F3(act_F3(v, alpha), beta),
// matching (h^alpha)^beta = h^(alpha beta).

#include "fricke/modforms.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace fricke {

struct MatModN {
    long a = 1, b = 0, c = 0, d = 1;
    int level = 2;

    MatModN reduced() const;
    long det() const; // in [0, N)
    MatModN transpose() const;
    MatModN negated() const;
    bool invertible() const;
    // Equality up to sign, i.e. in GL2(Z/N)/{+-I}.
    bool equal_mod_pm(const MatModN& o) const;

    friend bool operator==(const MatModN& x, const MatModN& y);
};

MatModN make_mat(long a, long b, long c, long d, int level);
MatModN identity_mat(int level);
MatModN mat_mul(const MatModN& x, const MatModN& y);
MatModN mat_inverse(const MatModN& x);
std::string to_string(const MatModN& m);

// Canonical representative of {M, -M}: the lexicographically smaller entry tuple.
MatModN pm_canonical(const MatModN& m);

// alpha^T v reduced into [0,1)^2 (not +- canonicalized).
IndexVector act_F3(const IndexVector& v, const MatModN& alpha);

// alpha = diag(1, det alpha) * s with det s = 1.
struct GL2Decomposition {
    MatModN g_part;
    MatModN sl_part;
};
GL2Decomposition gl2_decompose(const MatModN& alpha);

std::vector<MatModN> enumerate_sl2(int level);
// One representative per +-class of SL2(Z/N), identity first, then
// lexicographic order of the canonical entries.
std::vector<MatModN> cosets_mod_pm_gamma(int level);

// Q_N = {a in [1, N/2] : a != +-1 mod N, a^2 = +-1 mod N}; N odd.
std::vector<long> qn_set(int level);

// u ~ v iff u = +-v mod Z^2. The canonical representative is the
// lexicographically least (a, b) among v and -v reduced into [0, N).
IndexVector index_class(const IndexVector& v);
// All classes of V_N (gcd(a, b, N) = 1), sorted.
std::vector<IndexVector> index_classes(int level);

enum class FamilyKind { Fricke, SiegelPow, Diff, Product };

// g = prod g_{w_slot}^exponent with w_0 = [1/N, 0], w_1 = [0, 1/N]; its
// conjugate under alpha replaces each w_slot by alpha^T w_slot.
struct ProductFactor {
    int slot = 0;
    long exponent = 0;
};

struct FamilyDescriptor {
    FamilyKind kind = FamilyKind::Fricke;
    int level = 2;
    long exponent = 0;                   // SiegelPow
    long diff_a = 0;                     // Diff: h_v = f_v - f_{a v}
    std::vector<ProductFactor> factors;  // Product
};

FamilyDescriptor fricke_family(int level);
// exponent must be a nonzero multiple of 12N.
FamilyDescriptor siegel_family(int level, long exponent);
// Requires N odd and a in Q_N.
FamilyDescriptor diff_family(int level, long a);
FamilyDescriptor product_family(int level, std::vector<ProductFactor> factors);
// g_{[1/N,0]}^(12Nn) g_{[0,1/N]}^(24Nn), the X(N) generator used for the model.
FamilyDescriptor siegel_generator(int level, long n);
std::string describe(const FamilyDescriptor& f);

// Member h_v to truncation T. UsageError for Product families (which are not
// indexed by v), for a level mismatch, or for v outside V_N.
FracQSeries family_series(const FamilyDescriptor& f, const IndexVector& v, long T);
// Conjugate h_v^alpha through the index action (F3).
FracQSeries galois_conjugate_series(const FamilyDescriptor& f, const IndexVector& v,
                                    const MatModN& alpha, long T);
// Conjugate g^alpha of a Product family, to truncation T.
FracQSeries conjugate_series(const FamilyDescriptor& f, const MatModN& alpha, long T);
// ord_q of g^alpha for a Product family, from the Bernoulli formula.
BigRational product_conjugate_order(const FamilyDescriptor& f, const MatModN& alpha);

// Generators whose action is directly computable on q-expansions:
// diag(1, d) acts by sigma_d on coefficients, [1,1;0,1] by tau -> tau + 1.
struct Generator {
    enum Kind { Diag, Translate } kind = Translate;
    long d = 1;
};
MatModN generator_matrix(const Generator& g, int level);
// Applies the word left to right to the series of h_v.
FracQSeries conjugate_via_generators(const FamilyDescriptor& f, const IndexVector& v,
                                     const std::vector<Generator>& word, long T);

} // namespace fricke
