#include "shape/errors.hpp"

namespace shape {

const char *errc_name(Errc e) noexcept {
    switch (e) {
    case Errc::ModulusMismatch: return "ModulusMismatch";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::NotInSubfield: return "NotInSubfield";
    case Errc::NotIntegral: return "NotIntegral";
    case Errc::NotTotallyReal: return "NotTotallyReal";
    case Errc::BadSubgroup: return "BadSubgroup";
    case Errc::BadPrime: return "BadPrime";
    case Errc::NotOddPrime: return "NotOddPrime";
    case Errc::BadConductor: return "BadConductor";
    case Errc::RankMismatch: return "RankMismatch";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::NotSquare: return "NotSquare";
    case Errc::NotSymmetric: return "NotSymmetric";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotAMorphism: return "NotAMorphism";
    case Errc::NotInTarget: return "NotInTarget";
    case Errc::WildCompositeUnsupported: return "WildCompositeUnsupported";
    case Errc::CertificationFailed: return "CertificationFailed";
    }
    return "Unknown";
}

bool is_input_error(Errc e) noexcept { return e != Errc::CertificationFailed; }

} // namespace shape
