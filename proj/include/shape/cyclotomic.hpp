#ifndef SHAPE_CYCLOTOMIC_HPP
#define SHAPE_CYCLOTOMIC_HPP

// Exact arithmetic in ℚ(ζ_m).
//
// Elements are stored redundantly: one rational coefficient per residue
// class mod m, so ζ_m^a contributes to slot a. Multiplication is a cyclic
// convolution and the absolute trace is a closed formula per slot; the
// reduction modulo Φ_m is only done when two elements are compared.

#include "shape/exactlat.hpp"
#include "shape/field_spec.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace shape {

class CycElem {
  public:
    CycElem() = default;
    explicit CycElem(std::int64_t m);

    static CycElem constant(std::int64_t m, const Rat &c);
    /// ζ_m^e for any integer e.
    static CycElem zeta_power(std::int64_t m, std::int64_t e);
    static CycElem one(std::int64_t m) { return constant(m, Rat(1)); }

    std::int64_t modulus() const noexcept { return m_; }
    const Rat &coeff(std::int64_t residue) const { return c_.at(residue); }
    Rat &coeff(std::int64_t residue) { return c_.at(residue); }
    const std::vector<Rat> &coeffs() const noexcept { return c_; }

    /// Coefficients on the power basis ζ^0 .. ζ^{φ(m)-1}.
    std::vector<Rat> canonical() const;
    bool is_zero() const;
    /// All canonical coefficients are integers.
    bool is_integral() const;

    CycElem &operator+=(const CycElem &o);
    CycElem &operator-=(const CycElem &o);
    CycElem &operator*=(const Rat &s);

    friend CycElem operator+(CycElem a, const CycElem &b) { return a += b; }
    friend CycElem operator-(CycElem a, const CycElem &b) { return a -= b; }
    friend CycElem operator-(CycElem a) { return a *= Rat(-1); }
    friend CycElem operator*(CycElem a, const Rat &s) { return a *= s; }
    friend CycElem operator*(const Rat &s, CycElem a) { return a *= s; }
    friend CycElem operator*(const CycElem &a, const CycElem &b);
    friend CycElem operator/(CycElem a, const Rat &s) { return a *= Rat(1) / s; }

    /// Equality in ℚ(ζ_m), i.e. of canonical forms.
    friend bool operator==(const CycElem &a, const CycElem &b);

    /// Exact equality of the redundant representation.
    bool same_representation(const CycElem &o) const { return m_ == o.m_ && c_ == o.c_; }

  private:
    std::int64_t m_ = 1;
    std::vector<Rat> c_;
};

CycElem cyc_mul(const CycElem &x, const CycElem &y);
CycElem power(const CycElem &x, unsigned e);

/// σ_a : ζ ↦ ζ^a. σ_{-1} is complex conjugation.
CycElem galois_apply(std::int64_t a, const CycElem &x);
CycElem conjugate(const CycElem &x);

/// Φ_m as integer coefficients, constant term first.
const std::vector<Int> &cyclotomic_polynomial(std::int64_t m);

/// Tr_{ℚ(ζ_m)/ℚ}(ζ_m^c) = μ(t)·φ(m)/φ(t), t = m / gcd(c, m).
Int trace_zeta_power(std::int64_t m, std::int64_t c);

/// Absolute trace Tr_{ℚ(ζ_m)/ℚ}.
Rat trace_Q(const CycElem &x);

/// Tr_{L/ℚ}(x) for x in the fixed field L of spec.subgroup; throws
/// NotInSubfield if x is not fixed by every σ_h, h ∈ H.
Rat subfield_trace(const CycElem &x, const FieldSpec &spec);

/// x is fixed by σ_h for every h in the list.
bool fixed_by(const CycElem &x, const std::vector<std::int64_t> &residues);

struct NormInfo {
    Rat norm;
    bool is_unit = false;
};

/// Product of all conjugates; requires x ∈ ℤ[ζ_m] (NotIntegral).
NormInfo norm_and_unit(const CycElem &x);

/// Absolute norm of any element of ℚ(ζ_m).
Rat norm(const CycElem &x);

/// x / y in ℚ(ζ_m): multiply by the other conjugates of y over N(y).
CycElem exact_divide(const CycElem &x, const CycElem &y);

/// tr(x·ζ^i) ∈ ℤ for i = 0 .. φ(m)-1.
bool in_inverse_different(const CycElem &x);

/// η = Σ_{h∈H} ζ_f^{h·rep}; H must be a subgroup of (ℤ/f)* of prime index.
CycElem gaussian_period(std::int64_t f, const std::vector<std::int64_t> &subgroup,
                        std::int64_t coset_rep);

std::string rat_to_string(const Rat &r);

} // namespace shape

#endif
