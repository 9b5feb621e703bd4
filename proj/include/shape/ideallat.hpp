#ifndef SHAPE_IDEALLAT_HPP
#define SHAPE_IDEALLAT_HPP

// Ideal lattices over ℤ[ζ_ℓ]: the module ⟨1-ζ⟩^k with pairing
// (x, y) ↦ tr(β·x·ȳ) for a totally real β.

#include "shape/cyclotomic.hpp"
#include "shape/exactlat.hpp"

#include <cstdint>

namespace shape {

struct SpecialElements {
    int ell = 0;
    CycElem alpha; // (ζ - ζ⁻¹)^{2(ℓ-1)} / ℓ²
    CycElem beta;  // (2 - ζ² - ζ⁻²) / ℓ
    CycElem delta; // (2 - ζ - ζ⁻¹) / ℓ
    CycElem gamma; // unit with δ/β = γ·γ̄
    CycElem eta0;  // ∏_{a=1}^{(ℓ-1)/2} (1 - ζ^a), η₀·η̄₀ = ℓ
    CycElem eta;   // (ζ - ζ⁻¹)^{ℓ-2} / η₀, α/β = η·η̄
};

/// Builds and verifies all identities exactly; a failed identity throws
/// CertificationFailed.
SpecialElements special_elements(int ell);

struct IdealLatticeSpec {
    int ell = 0;
    int k = 0;     // ideal power; basis (1-ζ)^k ζ^i, 0 ≤ i ≤ ℓ-2
    CycElem beta;  // totally real
};

/// (1-ζ)^k·ζ^i for i = 0..ℓ-2.
std::vector<CycElem> ideal_basis(int ell, int k);

/// Throws NotTotallyReal, or NotIntegral when a pairing value is not an
/// integer.
GramMatrix ideal_lattice_gram(const IdealLatticeSpec &spec);

/// Craig lattice A^{(k)}_{ℓ-1}: ⟨1-ζ⟩^k with tr(x ȳ / ℓ).
GramMatrix craig_gram(int ell, int k);

/// Root lattice A_n: diag 2, off-diagonal -1.
GramMatrix root_gram_An(std::size_t n);

/// Gram of ⟨ℤ[ζ_ℓ], (m/ℓ)(ζ - ζ⁻¹)^{2(ℓ-1)}⟩; m must be a product of
/// distinct primes ≡ 1 (mod ℓ).
GramMatrix conner_perlis_gram(int ell, std::int64_t m);

struct EmbeddingCertificate {
    CycElem multiplier;
    IntMatrix matrix; // columns: multiplier·(source basis) in target coordinates
    Int index;
    bool isometric_onto = false;
};

/// x ↦ multiplier·x from the source lattice into the target lattice.
/// Requires source.beta = target.beta·γ·γ̄ for γ = multiplier.
EmbeddingCertificate build_embedding(const IdealLatticeSpec &source, const IdealLatticeSpec &target,
                                     const CycElem &multiplier);

} // namespace shape

#endif
