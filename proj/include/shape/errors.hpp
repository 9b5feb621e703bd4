#ifndef SHAPE_ERRORS_HPP
#define SHAPE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace shape {

enum class Errc {
    // input / validation
    ModulusMismatch,
    NotCoprime,
    NotInSubfield,
    NotIntegral,
    NotTotallyReal,
    BadSubgroup,
    BadPrime,
    NotOddPrime,
    BadConductor,
    RankMismatch,
    NotPositiveDefinite,
    NotSquare,
    NotSymmetric,
    DimensionMismatch,
    NotAMorphism,
    NotInTarget,
    WildCompositeUnsupported,
    // internal
    CertificationFailed,
};

const char *errc_name(Errc e) noexcept;

/// True for errors caused by bad caller input; false for internal
/// certification failures (a math or implementation bug).
bool is_input_error(Errc e) noexcept;

class ShapeError : public std::runtime_error {
  public:
    ShapeError(Errc code, const std::string &what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

} // namespace shape

#endif
