#ifndef SHAPE_SHAPELAB_HPP
#define SHAPE_SHAPELAB_HPP

// Shapes of cyclic degree-ℓ fields and the tame/wild dichotomy checker.

#include "shape/exactlat.hpp"
#include "shape/fieldkit.hpp"

#include <optional>
#include <string>
#include <vector>

namespace shape {

enum class SourcePath { Direct, ConnerPerlis };

const char *source_path_name(SourcePath p);

struct Verdicts {
    bool integral_after_rad = false;
    bool even = false;
    bool primitive = false;
    bool det_ok = false;
    std::optional<bool> shape_matches_expected; // set by verify_main_theorem
    std::optional<bool> embedding_ok;           // set by verify_main_theorem
    // wild f = ℓ² only: direct q_L is isometric to the Conner–Perlis model
    std::optional<bool> model_agrees;

    bool all_true() const;
    friend bool operator==(const Verdicts &, const Verdicts &) = default;
};

struct TameValues {
    Int a;
    Int b;
    bool lagrangian = false;
    bool matches_closed_form = false; // a = (1+(ℓ-1)rad)/ℓ, b = (1-rad)/ℓ
    friend bool operator==(const TameValues &, const TameValues &) = default;
};

struct ShapeReport {
    FieldSpec spec;
    Int disc;
    Int rad;
    SourcePath source = SourcePath::Direct;
    std::string basis;       // description of the O⁰ basis the Grams refer to
    GramMatrix gram_qL;      // q_L
    GramMatrix gram_scaled;  // q_L / rad, the doubled Gram of Q_L
    QuadForm shape;          // Q_L
    Verdicts verdicts;
    std::optional<TameValues> tame;
    // Uᵀ·expected·U = gram_scaled
    std::optional<IntMatrix> shape_witness;
    // Eᵀ·A_{ℓ-1}·E = gram_scaled
    std::optional<IntMatrix> embedding;
    std::optional<Int> embedding_index;
    std::vector<std::string> notes;

    friend bool operator==(const ShapeReport &, const ShapeReport &) = default;
};

ShapeReport shape_of(const FieldSpec &spec);

struct ExpectedShape {
    QuadForm form;
    GramMatrix doubled; // A_{ℓ-1} (tame) or ℓI - J (wild)
};

ExpectedShape expected_shape(int ell, bool wild);

ShapeReport verify_main_theorem(const FieldSpec &spec);

struct BsComparison {
    GramMatrix bs_gram;
    bool equals_ell_times_O0 = false;
    QuadForm bs_shape;
    bool shapes_equivalent = false;
};

/// Compares O⁰_L with the trace-zero part of ℤ + ℓ·O_L.
BsComparison bs_compare(const FieldSpec &spec);

struct ScanResult {
    std::vector<ShapeReport> reports;
    // every gram_scaled in a (ℓ, wildness) class is witnessed-isometric to
    // the first one of that class
    bool classes_consistent = true;
};

/// All conductors f ≤ max_conductor admitting a cyclic degree-ℓ field.
std::vector<std::int64_t> admissible_conductors(int ell, std::int64_t max_conductor);

ScanResult scan(int ell, std::int64_t max_conductor, unsigned jobs = 1);

} // namespace shape

#endif
