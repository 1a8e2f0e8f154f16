#pragma once

// Values of family members at the CM point tau_K = (d_K + sqrt(d_K))/2 and
// their conjugates under W_{K,N} = {[t - B s, -C s; s, t]}, the matrix group
// that realizes Gal(K_(N)/H_K) through Shimura reciprocity.
//
// All evaluation runs under a PrecisionScope; the MPFR default precision is
// process-global, so these functions evaluate sequentially.

#include "fricke/famgroup.hpp"
#include "fricke/modelcurve.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fricke {

bool is_fundamental_discriminant(long d);
// Built-in table for fundamental -200 <= d < 0.
std::optional<int> class_number_lookup(long d);

struct ImagQuadData {
    long d = 0;
    long B = 0; // x^2 + B x + C is the minimal polynomial of tau_K
    long C = 0;
    int class_number = 0;

    // (d + sqrt(d)) / 2 at the current precision.
    Complex tau() const;
};

// UsageError unless d is a negative fundamental discriminant in the table.
ImagQuadData make_field(long d);

struct ReciprocityElement {
    long s = 0;
    long t = 0;
    MatModN gamma;
};

struct ReciprocityGroup {
    int level = 0;
    std::vector<ReciprocityElement> elements;   // sorted by (s, t)
    std::vector<ReciprocityElement> pm_classes; // first of each {g, -g}, sorted by (s, t)
};

// det = t^2 - B s t + C s^2 must be a unit mod N.
ReciprocityGroup reciprocity_group(const ImagQuadData& K, int level);

struct CMValue {
    Complex value;
    Real tail_bound; // |q|^(T - ord), relative
};

// Series evaluated at q^(1/D) = e^(2 pi i tau / D); PrecisionError when the
// tail bound exceeds tol.
CMValue eval_series_at_cm(const FracQSeries& s, const ImagQuadData& K, int prec_bits,
                          double tol = 1e-6);
// j(tau_K) from the j series truncated at T.
CMValue eval_j_at_cm(const ImagQuadData& K, int prec_bits, long T, double tol = 1e-6);
// Member h_v at tau_K. Siegel powers are evaluated in factored form
// e^(2 pi i m r) q^(m rho) lead^m unit^m.
CMValue eval_at_cm(const FamilyDescriptor& f, const IndexVector& v, const ImagQuadData& K,
                   int prec_bits, long T, double tol = 1e-6);

struct CMOptions {
    int prec_bits = 128;
    long T = 30;
    double tol = 1e-6;          // distinctness and tail tolerance
    double integral_tol = 1e-4; // lattice residual tolerance
    double zero_tol = 1e-30;
};

struct CMReport {
    long d = 0;
    int level = 0;
    long n = 0;
    std::string family;
    int class_number = 0;
    std::vector<std::pair<long, long>> st; // (s, t) for each conjugate
    std::vector<Complex> values;
    Real min_distance;
    bool distinct = false;
    // prod (x - value), low degree first
    std::vector<Complex> poly;
    // Only for class number 1: distance of each coefficient from Z + Z tau_K.
    std::vector<Real> residuals;
    std::optional<bool> near_integral;
    std::string note;
};

// Conjugates h_{[s/N, t/N]}(tau_K)^n over W_{K,N}/{+-1}, starting from
// v = [0, 1/N]. Rejects d = -3, -4. ZeroValueError when h_{[0,1/N]}(tau_K)
// vanishes numerically.
CMReport cm_conjugates(const FamilyDescriptor& f, long n, const ImagQuadData& K,
                       const CMOptions& opts = {});

// |f(g(tau_K), j(tau_K))| / (largest monomial) for the level-N model.
Real model_residual_at_cm(const BivarIntPoly& poly, int level, long n, const ImagQuadData& K,
                          int prec_bits, long T);

std::string to_text(const CMReport& r);
std::string to_json(const CMReport& r);

} // namespace fricke
