#pragma once

// Primitivity and total primitivity of a family at finite precision.
//
// A Distinct certificate (first differing coefficient) proves h_u != h_v, and a
// NonConstantRatio certificate (a nonzero coefficient of h_u/h_v away from
// q^0) proves that no power of h_u equals the same power of h_v. Agreement of
// all known coefficients is never reported as a proof; it becomes Undecided
// unless an exact identity of the family explains it.

#include "fricke/famgroup.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fricke {

struct CheckOptions {
    int max_level = 12;
    // Compare only pairs ([1/N,0], w); valid because every built-in family
    // satisfies the index action, so h_u = h_v iff h_{e1} = h_{alpha^T v}
    // for alpha^T u = e1.
    bool orbit_reduction = false;
    bool parallel = true;
};

struct PairCertificate {
    IndexVector u;
    IndexVector v;
    DistinctnessCertificate cert;
};

enum class PrimitivityVerdict { Primitive, NotPrimitive, Undecided };

struct PrimitivityReport {
    int level = 0;
    long precision = 0;
    std::string family;
    PrimitivityVerdict verdict = PrimitivityVerdict::Undecided;
    std::vector<PairCertificate> certificates; // sorted by (u, v)
    std::vector<std::pair<IndexVector, IndexVector>> unresolved;
};

struct NonConstantRatio {
    // Exponent of a nonzero non-constant coefficient of h_u / h_v.
    BigRational exponent;
};
struct ConstantRatioCandidate {
    CycloElem constant;
    std::optional<long> root_of_unity_order; // nullopt: not a root of unity
    // h_u = constant * h_v follows from an exact identity of the family, not
    // only from agreement to precision.
    bool exact = false;
};
struct InconclusivePair {
    std::string reason;
};
using RatioResult = std::variant<NonConstantRatio, ConstantRatioCandidate, InconclusivePair>;

struct RatioAnalysis {
    IndexVector u;
    IndexVector v;
    RatioResult result;
};

enum class TotalVerdict { TotallyPrimitive, NotTotallyPrimitive, Undecided };

struct TotalPrimitivityReport {
    int level = 0;
    long precision = 0;
    std::string family;
    TotalVerdict verdict = TotalVerdict::Undecided;
    std::vector<RatioAnalysis> ratios; // sorted by (u, v)
};

PrimitivityReport check_primitive(const FamilyDescriptor& f, long T,
                                  const CheckOptions& opts = {});
TotalPrimitivityReport check_totally_primitive(const FamilyDescriptor& f, long T,
                                               const CheckOptions& opts = {});
// Ratio analysis for one pair of members.
RatioResult analyze_ratio(const FamilyDescriptor& f, const IndexVector& u,
                          const FracQSeries& hu, const IndexVector& v, const FracQSeries& hv);

// ord_q of h_v; PrecisionError when the member is zero to precision. For
// SiegelPow(m) the value is checked against (m/2) B2(<v1>).
BigRational order_profile(const FamilyDescriptor& f, const IndexVector& v, long T = 40);

const char* to_string(PrimitivityVerdict v);
const char* to_string(TotalVerdict v);
std::string to_json(const PrimitivityReport& r);
std::string to_json(const TotalPrimitivityReport& r);
std::string to_text(const PrimitivityReport& r);
std::string to_text(const TotalPrimitivityReport& r);

} // namespace fricke
