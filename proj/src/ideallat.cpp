#include "shape/ideallat.hpp"

#include "shape/errors.hpp"
#include "shape/numtheory.hpp"

namespace shape {

namespace {

void require_odd_prime(int ell) {
    if (ell < 3 || !nt::is_prime(ell))
        throw ShapeError(Errc::NotOddPrime, std::to_string(ell) + " is not an odd prime");
}

void certify(bool ok, const char *what) {
    if (!ok) throw ShapeError(Errc::CertificationFailed, what);
}

CycElem z(int ell, std::int64_t e) { return CycElem::zeta_power(ell, e); }

CycElem one_minus_zeta_pow(int ell, int k) {
    return power(CycElem::one(ell) - z(ell, 1), static_cast<unsigned>(k));
}

// coordinates of x on the power basis ζ^0..ζ^{ℓ-2}; x must be in ℤ[ζ]
IntVector power_coords(const CycElem &x, Errc failure) {
    IntVector out;
    for (const auto &c : x.canonical()) {
        if (c.get_den() != 1) throw ShapeError(failure, "element is not in the target module");
        out.push_back(c.get_num());
    }
    return out;
}

} // namespace

SpecialElements special_elements(int ell) {
    require_odd_prime(ell);
    const Rat l(ell);
    SpecialElements s;
    s.ell = ell;
    const CycElem one = CycElem::one(ell);
    const CycElem diff = z(ell, 1) - z(ell, -1); // ζ - ζ⁻¹

    s.alpha = power(diff, 2 * (ell - 1)) / (l * l);
    s.beta = (one * Rat(2) - z(ell, 2) - z(ell, -2)) / l;
    s.delta = (one * Rat(2) - z(ell, 1) - z(ell, -1)) / l;
    const int half = (ell + 1) / 2;
    s.gamma = exact_divide(z(ell, half) - z(ell, -half), diff);
    s.eta0 = one;
    for (int a = 1; a <= (ell - 1) / 2; ++a) s.eta0 = s.eta0 * (one - z(ell, a));
    s.eta = exact_divide(power(diff, static_cast<unsigned>(ell - 2)), s.eta0);

    certify(s.gamma.is_integral() && s.eta0.is_integral() && s.eta.is_integral(),
            "gamma, eta0 and eta must be algebraic integers");
    for (const CycElem *e : {&s.alpha, &s.beta, &s.delta}) {
        certify(conjugate(*e) == *e, "alpha, beta, delta must be totally real");
        certify(in_inverse_different(*e), "alpha, beta, delta must lie in the inverse different");
    }
    certify(norm_and_unit(s.gamma).is_unit, "gamma must be a unit");
    certify(s.eta0 * conjugate(s.eta0) == CycElem::constant(ell, l), "eta0 * conj(eta0) = ell");
    certify(s.delta == s.beta * s.gamma * conjugate(s.gamma), "delta / beta = gamma * conj(gamma)");
    certify(s.alpha == s.beta * s.eta * conjugate(s.eta), "alpha / beta = eta * conj(eta)");
    return s;
}

std::vector<CycElem> ideal_basis(int ell, int k) {
    if (k < 0) throw ShapeError(Errc::DimensionMismatch, "ideal power must be non-negative");
    const CycElem base = one_minus_zeta_pow(ell, k);
    std::vector<CycElem> b;
    for (int i = 0; i + 1 < ell; ++i) b.push_back(base * z(ell, i));
    return b;
}

GramMatrix ideal_lattice_gram(const IdealLatticeSpec &spec) {
    require_odd_prime(spec.ell);
    if (spec.beta.modulus() != spec.ell)
        throw ShapeError(Errc::ModulusMismatch, "beta must live in Q(zeta_ell)");
    if (!(conjugate(spec.beta) == spec.beta))
        throw ShapeError(Errc::NotTotallyReal, "beta is not fixed by complex conjugation");
    const auto basis = ideal_basis(spec.ell, spec.k);
    const std::size_t n = basis.size();
    std::vector<CycElem> conj;
    for (const auto &b : basis) conj.push_back(conjugate(b));
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const CycElem bx = spec.beta * basis[i];
        for (std::size_t j = i; j < n; ++j) {
            Rat t = trace_Q(bx * conj[j]);
            if (t.get_den() != 1)
                throw ShapeError(Errc::NotIntegral, "pairing value " + rat_to_string(t) + " is not an integer");
            g(i, j) = g(j, i) = t.get_num();
        }
    }
    return GramMatrix(std::move(g));
}

GramMatrix craig_gram(int ell, int k) {
    require_odd_prime(ell);
    if (k < 1 || k > ell - 1) throw ShapeError(Errc::DimensionMismatch, "Craig lattice needs 1 <= k <= ell-1");
    return ideal_lattice_gram({ell, k, CycElem::constant(ell, Rat(1, ell))});
}

GramMatrix root_gram_An(std::size_t n) {
    if (n < 1) throw ShapeError(Errc::DimensionMismatch, "A_n needs n >= 1");
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = 2;
        if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
    }
    return GramMatrix(std::move(g));
}

GramMatrix conner_perlis_gram(int ell, std::int64_t m) {
    require_odd_prime(ell);
    if (m < 1) throw ShapeError(Errc::BadPrime, "m_L must be positive");
    for (auto [p, e] : nt::factor(m)) {
        if (p == ell || p % ell != 1)
            throw ShapeError(Errc::BadPrime, "BadPrime(" + std::to_string(p) + "): must be 1 mod " +
                                                 std::to_string(ell));
        if (e != 1) throw ShapeError(Errc::BadPrime, "m_L must be squarefree");
    }
    const CycElem diff = z(ell, 1) - z(ell, -1);
    CycElem mu = power(diff, 2 * (ell - 1)) * Rat(m, ell);
    return ideal_lattice_gram({ell, 0, mu});
}

EmbeddingCertificate build_embedding(const IdealLatticeSpec &source, const IdealLatticeSpec &target,
                                     const CycElem &multiplier) {
    if (source.ell != target.ell || multiplier.modulus() != source.ell)
        throw ShapeError(Errc::ModulusMismatch, "source, target and multiplier must share ell");
    if (multiplier.is_zero()) throw ShapeError(Errc::NotAMorphism, "multiplier is zero");
    if (!(source.beta == target.beta * multiplier * conjugate(multiplier)))
        throw ShapeError(Errc::NotAMorphism, "source beta != target beta * gamma * conj(gamma)");

    const int ell = source.ell;
    const CycElem target_gen = one_minus_zeta_pow(ell, target.k);
    std::vector<IntVector> cols;
    for (const auto &b : ideal_basis(ell, source.k))
        cols.push_back(power_coords(exact_divide(multiplier * b, target_gen), Errc::NotInTarget));

    EmbeddingCertificate cert;
    cert.multiplier = multiplier;
    cert.matrix = IntMatrix::from_columns(cols, static_cast<std::size_t>(ell - 1));

    const GramMatrix gs = ideal_lattice_gram(source);
    const GramMatrix gt = ideal_lattice_gram(target);
    if (!(congruence(gt, cert.matrix) == gs))
        throw ShapeError(Errc::NotAMorphism, "matrix^T G_target matrix != G_source");

    cert.index = 1;
    for (const auto &d : smith_invariants(cert.matrix)) cert.index *= d;
    certify(cert.index * cert.index * gt.determinant() == gs.determinant(),
            "embedding index disagrees with the determinant ratio");
    cert.isometric_onto = cert.index == 1;
    return cert;
}

} // namespace shape
