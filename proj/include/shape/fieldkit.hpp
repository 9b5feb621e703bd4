#ifndef SHAPE_FIELDKIT_HPP
#define SHAPE_FIELDKIT_HPP

// Cyclic degree-ℓ fields inside ℚ(ζ_f): enumeration by conductor,
// discriminant-certified integral bases and trace Gram matrices.

#include "shape/cyclotomic.hpp"
#include "shape/exactlat.hpp"
#include "shape/field_spec.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace shape {

/// Validates and normalizes (sorts) the subgroup.
FieldSpec make_field_spec(int ell, std::int64_t conductor, std::vector<std::int64_t> subgroup);

/// All fields with conductor ∏p (times ℓ² if wild), ordered
/// lexicographically by their sorted subgroup. Throws BadPrime(p) for
/// p ≢ 1 (mod ℓ) and NotOddPrime for a bad ℓ.
std::vector<FieldSpec> enumerate_fields(int ell, const std::vector<std::int64_t> &ramified_tame,
                                        bool wild);

/// Factors f and enumerates; throws BadConductor/BadPrime when no cyclic
/// degree-ℓ field can have conductor f.
std::vector<FieldSpec> fields_with_conductor(int ell, std::int64_t f);

struct DiscRad {
    Int disc;
    Int rad;
};

/// disc = n^{ℓ-1}·ℓ^{2(ℓ-1)δ}, rad = ℓ^δ·n with δ = 1 iff wild.
DiscRad disc_rad(const FieldSpec &spec);

enum class BasisKind {
    NormalPeriods, // e_1..e_ℓ, Galois-conjugate Gaussian periods (tame)
    SaturatedPowers, // ℤ[η] saturated in ℤ[ζ_f] (wild, f = ℓ²)
};

const char *basis_kind_name(BasisKind k);

struct BasisChoice {
    std::int64_t coset_rep = 1;
    std::int64_t generator = 0; // 0: smallest residue outside H
};

struct IntegralBasis {
    FieldSpec spec;
    BasisKind kind = BasisKind::NormalPeriods;
    std::int64_t generator = 0; // σ_g generates Gal(L/ℚ)
    std::int64_t coset_rep = 1;
    std::vector<CycElem> elements;
    GramMatrix trace_gram; // tr(b_i b_j), certified det = disc
    IntVector traces;      // tr(b_i)
    IntVector one;         // coordinates of 1
};

/// Throws WildCompositeUnsupported for f = ℓ²·m, m > 1, and
/// CertificationFailed if det(trace Gram) differs from the discriminant.
IntegralBasis integral_basis(const FieldSpec &spec, BasisChoice choice = {});

struct LagrangianResult {
    bool holds = false;
    Int a;                      // tr(e_1²)
    Int b;                      // common value of tr(e_1 e_j), j ≥ 2, when it holds
    std::vector<Int> off_diag;  // tr(e_1 e_j), j = 2..ℓ
};

LagrangianResult lagrangian_check(const IntegralBasis &basis);
LagrangianResult lagrangian_check(const FieldSpec &spec);

/// ⟨O⁰_L, q_L⟩ on an explicit basis.
struct TraceLattice {
    FieldSpec spec;
    BasisKind kind = BasisKind::NormalPeriods;
    std::string description;
    IntMatrix coords; // ℓ × (ℓ-1): trace-zero basis in integral-basis coordinates
    GramMatrix gram;

    std::size_t rank() const { return gram.rank(); }
};

TraceLattice trace_zero_gram(const IntegralBasis &basis);
TraceLattice trace_zero_gram(const FieldSpec &spec, BasisChoice choice = {});

} // namespace shape

#endif
