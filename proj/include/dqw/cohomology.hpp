#pragma once

#include "dqw/hochschild.hpp"
#include "dqw/koszul.hpp"

#include <string>
#include <vector>

namespace dqw {

/// Finite-dimensional window onto the cochain complex: polynomial
/// coefficients of degree <= max_coeff_degree, symbols of total order
/// <= max_operator_order, on the local model of dims (m, k, n).
struct Truncation {
    int m = 1;
    int k = 1;
    int n = 1;
    int max_coeff_degree = 0;   // d
    int max_operator_order = 0; // o (ignored for function modules)
    ModuleTag tag = ModuleTag::Functions;
};

/// Differential on Hom(K_k, M) in the exterior-basis presentation: trivial
/// for function modules; for operator modules it differentiates the base part
/// of the symbol and wedges the matching base covector.
KoszulCochain koszul_cochain_differential(const KoszulCochain& phi);

/// Contraction homotopy: together with the differential it acts as
/// (base symbol order + base form degree) * id on each graded slice.
KoszulCochain koszul_cochain_contraction(const KoszulCochain& phi);

struct ClassReduction {
    KoszulCochain harmonic;
    bool exact_part_verified = false;
};

/// Splits a closed cochain into its weight-zero part and an exact remainder
/// with an explicitly verified primitive.
ClassReduction reduce_koszul_class(const KoszulCochain& phi);

struct DegreeDims {
    int degree = 0;
    long long cochain_dim = 0;
    long long kernel_dim = 0;
    long long image_from_below = 0;
    long long homology = 0;
    long long closed_form = 0;
};

struct CohomologyReport {
    Truncation trunc;
    std::vector<DegreeDims> degrees;
    std::vector<KoszulCochain> representatives; // weight-zero basis generators
    bool all_match = false;
    std::string table() const;
};

/// Exact kernel/image ranks by fraction-free elimination on the graded
/// blocks of the cochain complex, with the closed-form prediction
/// C(m-k, j) * #(vertical symbols) * #(coefficients) alongside.
CohomologyReport truncated_cohomology(const Truncation& t);

/// The same computation rendered as a per-degree comparison table.
CohomologyReport hkr_compare(const Truncation& t);

/// Closed-form dimension of degree j under the truncation.
long long closed_form_dimension(const Truncation& t, int degree);

/// Exact rank of an integer matrix by fraction-free (Bareiss) elimination.
long long bareiss_rank(std::vector<std::vector<long long>> mat);

} // namespace dqw
