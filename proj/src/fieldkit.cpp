#include "shape/fieldkit.hpp"

#include "shape/errors.hpp"
#include "shape/numtheory.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace shape {

using nt::i64;

// ---------------------------------------------------------------------------
// FieldSpec

bool FieldSpec::wild() const { return ell > 0 && conductor % (static_cast<i64>(ell) * ell) == 0; }

std::vector<i64> FieldSpec::tame_primes() const {
    std::vector<i64> ps;
    for (auto [p, e] : nt::factor(conductor))
        if (p != ell) ps.push_back(p);
    return ps;
}

i64 FieldSpec::n_L() const {
    i64 n = 1;
    for (auto p : tame_primes()) n *= p;
    return n;
}

namespace {

void require_odd_prime(int ell) {
    if (ell < 3 || !nt::is_prime(ell))
        throw ShapeError(Errc::NotOddPrime, std::to_string(ell) + " is not an odd prime");
}

void require_tame_prime(int ell, i64 p) {
    if (!nt::is_prime(p)) throw ShapeError(Errc::BadPrime, std::to_string(p) + " is not prime");
    if (p == ell) throw ShapeError(Errc::BadPrime, "tame prime list must not contain ell");
    if (p % ell != 1)
        throw ShapeError(Errc::BadPrime, "BadPrime(" + std::to_string(p) + "): a ramified prime p != " +
                                             std::to_string(ell) + " must satisfy p = 1 mod " +
                                             std::to_string(ell));
}

// Splits f into its tame primes and wildness, validating the shape of f.
std::pair<std::vector<i64>, bool> conductor_parts(int ell, i64 f) {
    if (f < 2) throw ShapeError(Errc::BadConductor, "conductor must be at least 2");
    std::vector<i64> tame;
    bool wild = false;
    for (auto [p, e] : nt::factor(f)) {
        if (p == ell) {
            if (e != 2)
                throw ShapeError(Errc::BadConductor, "ell must divide the conductor exactly twice or not at all");
            wild = true;
            continue;
        }
        require_tame_prime(ell, p);
        if (e != 1) throw ShapeError(Errc::BadConductor, "tame part of the conductor must be squarefree");
        tame.push_back(p);
    }
    return {tame, wild};
}

bool is_subset(const std::vector<i64> &small, const std::set<i64> &big) {
    return std::all_of(small.begin(), small.end(), [&](i64 x) { return big.count(x) > 0; });
}

} // namespace

void validate(const FieldSpec &spec) {
    require_odd_prime(spec.ell);
    const i64 f = spec.conductor;
    conductor_parts(spec.ell, f);

    std::set<i64> h;
    for (auto a : spec.subgroup) {
        if (a < 0 || a >= f || std::gcd(a, f) != 1)
            throw ShapeError(Errc::BadSubgroup, std::to_string(a) + " is not a reduced unit mod " +
                                                    std::to_string(f));
        h.insert(a);
    }
    if (h.size() != spec.subgroup.size()) throw ShapeError(Errc::BadSubgroup, "duplicate residues");
    if (!h.count(1)) throw ShapeError(Errc::BadSubgroup, "subgroup must contain 1");
    for (auto a : h)
        for (auto b : h)
            if (!h.count(nt::mulmod(a, b, f)))
                throw ShapeError(Errc::BadSubgroup, "residues are not closed under multiplication");
    if (static_cast<i64>(h.size()) * spec.ell != nt::euler_phi(f))
        throw ShapeError(Errc::BadSubgroup, "subgroup index must equal ell");

    // exact conductor: for each maximal proper divisor d = f/p the kernel of
    // (ℤ/f)* → (ℤ/d)* must not lie inside H
    for (auto [p, e] : nt::factor(f)) {
        const i64 d = f / p;
        std::vector<i64> kernel;
        for (auto x : nt::units(f))
            if (x % d == 1 % d) kernel.push_back(x);
        if (is_subset(kernel, h))
            throw ShapeError(Errc::BadConductor, "fixed field has conductor dividing " + std::to_string(d));
    }
}

FieldSpec make_field_spec(int ell, i64 conductor, std::vector<i64> subgroup) {
    for (auto &a : subgroup) a = nt::mod(a, conductor);
    std::sort(subgroup.begin(), subgroup.end());
    FieldSpec s{ell, conductor, std::move(subgroup)};
    validate(s);
    return s;
}

// ---------------------------------------------------------------------------
// enumeration through characters (ℤ/f)* → ℤ/ℓ

namespace {

struct CyclicComponent {
    i64 modulus;
    std::vector<int> dlog_mod_ell; // indexed by residue mod `modulus`
};

CyclicComponent make_component(i64 q, int ell) {
    CyclicComponent c{q, std::vector<int>(static_cast<std::size_t>(q), -1)};
    const i64 g = nt::primitive_root(q);
    const i64 order = nt::euler_phi(q);
    i64 x = 1;
    for (i64 d = 0; d < order; ++d) {
        c.dlog_mod_ell[x] = static_cast<int>(d % ell);
        x = nt::mulmod(x, g, q);
    }
    return c;
}

} // namespace

std::vector<FieldSpec> enumerate_fields(int ell, const std::vector<i64> &ramified_tame, bool wild) {
    require_odd_prime(ell);
    std::vector<i64> primes = ramified_tame;
    std::sort(primes.begin(), primes.end());
    if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
        throw ShapeError(Errc::BadPrime, "tame primes must be distinct");
    for (auto p : primes) require_tame_prime(ell, p);

    i64 f = 1;
    std::vector<CyclicComponent> comps;
    if (wild) {
        comps.push_back(make_component(static_cast<i64>(ell) * ell, ell));
        f *= static_cast<i64>(ell) * ell;
    }
    for (auto p : primes) {
        comps.push_back(make_component(p, ell));
        f *= p;
    }
    if (comps.empty()) return {};

    // characters with every component nontrivial, up to scaling: fix a_0 = 1
    const std::size_t k = comps.size();
    std::vector<int> a(k, 1);
    const auto unit_list = nt::units(f);
    std::vector<FieldSpec> out;
    for (;;) {
        std::vector<i64> h;
        for (auto x : unit_list) {
            long s = 0;
            for (std::size_t i = 0; i < k; ++i) s += static_cast<long>(a[i]) * comps[i].dlog_mod_ell[x % comps[i].modulus];
            if (s % ell == 0) h.push_back(x);
        }
        out.push_back(FieldSpec{ell, f, std::move(h)});
        // next tuple (a_1..a_{k-1}) over {1..ℓ-1}
        std::size_t i = 1;
        while (i < k && a[i] == ell - 1) a[i++] = 1;
        if (i >= k) break;
        ++a[i];
    }
    std::sort(out.begin(), out.end(),
              [](const FieldSpec &x, const FieldSpec &y) { return x.subgroup < y.subgroup; });
    for (const auto &s : out) validate(s);
    return out;
}

std::vector<FieldSpec> fields_with_conductor(int ell, i64 f) {
    require_odd_prime(ell);
    auto [tame, wild] = conductor_parts(ell, f);
    return enumerate_fields(ell, tame, wild);
}

DiscRad disc_rad(const FieldSpec &spec) {
    const Int n = Int(static_cast<long>(spec.n_L()));
    const unsigned ell = static_cast<unsigned>(spec.ell);
    Int disc, rad = n;
    mpz_pow_ui(disc.get_mpz_t(), n.get_mpz_t(), ell - 1);
    if (spec.wild()) {
        Int w;
        mpz_ui_pow_ui(w.get_mpz_t(), ell, 2 * (ell - 1));
        disc *= w;
        rad *= ell;
    }
    return {disc, rad};
}

// ---------------------------------------------------------------------------
// integral bases

const char *basis_kind_name(BasisKind k) {
    switch (k) {
    case BasisKind::NormalPeriods: return "normal-period";
    case BasisKind::SaturatedPowers: return "saturated-period-power";
    }
    return "unknown";
}

namespace {

Int integer_trace(const CycElem &x, const FieldSpec &spec) {
    Rat t = subfield_trace(x, spec);
    if (t.get_den() != 1)
        throw ShapeError(Errc::CertificationFailed, "trace of an integral element is not an integer");
    return t.get_num();
}

i64 default_generator(const FieldSpec &spec) {
    std::set<i64> h(spec.subgroup.begin(), spec.subgroup.end());
    for (auto x : nt::units(spec.conductor))
        if (!h.count(x)) return x;
    throw ShapeError(Errc::BadSubgroup, "subgroup is the whole unit group");
}

// ℤ[η] can have index > 1 in O_L (it is 7 for f = 25). O_L = L ∩ ℤ[ζ_f]
// lies in (1/d)·ℤ[η], d the index, so it is (1/d)·{w : C·w ≡ 0 mod d}
// with C the ζ-coordinates of the powers.
void saturate(IntegralBasis &ib, const std::vector<CycElem> &powers, const FieldSpec &spec) {
    const std::size_t n = powers.size();
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            g(i, j) = g(j, i) = integer_trace(powers[i] * powers[j], spec);
    const Int ratio = det_exact(g) / disc_rad(spec).disc;
    if (ratio * disc_rad(spec).disc != det_exact(g) || !mpz_perfect_square_p(ratio.get_mpz_t()))
        throw ShapeError(Errc::CertificationFailed, "power order has non-square index");
    Int d;
    mpz_sqrt(d.get_mpz_t(), ratio.get_mpz_t());

    const std::size_t phi = static_cast<std::size_t>(nt::euler_phi(spec.conductor));
    IntMatrix sys(phi, n + phi);
    for (std::size_t j = 0; j < n; ++j) {
        auto c = powers[j].canonical();
        for (std::size_t r = 0; r < c.size(); ++r) {
            if (c[r].get_den() != 1) throw ShapeError(Errc::CertificationFailed, "power of eta is not integral");
            sys(r, j) = c[r].get_num();
        }
    }
    for (std::size_t r = 0; r < phi; ++r) sys(r, n + r) = d;
    const IntMatrix k = int_kernel(sys);
    IntMatrix w(n, k.cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < k.cols(); ++c) w(i, c) = k(i, c);
    const HnfResult h = hnf(w);
    if (h.rank != n) throw ShapeError(Errc::CertificationFailed, "saturation lost rank");

    ib.elements.clear();
    for (std::size_t c = 0; c < n; ++c) {
        CycElem x(spec.conductor);
        for (std::size_t i = 0; i < n; ++i) x = x + powers[i] * Rat(h.h(i, c));
        ib.elements.push_back(x / Rat(d));
    }
    // 1 = d·e_0 in the new basis; H is lower triangular
    ib.one = IntVector(n, Int(0));
    IntVector rhs(n, Int(0));
    rhs[0] = d;
    for (std::size_t i = 0; i < n; ++i) {
        Int s = rhs[i];
        for (std::size_t c = 0; c < i; ++c) s -= h.h(i, c) * ib.one[c];
        if (s % h.h(i, i) != 0) throw ShapeError(Errc::CertificationFailed, "1 is not in the saturated order");
        ib.one[i] = s / h.h(i, i);
    }
}

} // namespace

IntegralBasis integral_basis(const FieldSpec &spec, BasisChoice choice) {
    validate(spec);
    const i64 f = spec.conductor;
    const i64 ell2 = static_cast<i64>(spec.ell) * spec.ell;
    if (spec.wild() && f != ell2)
        throw ShapeError(Errc::WildCompositeUnsupported,
                         "no direct integral basis for wild conductor " + std::to_string(f));

    IntegralBasis ib;
    ib.spec = spec;
    ib.coset_rep = choice.coset_rep;
    ib.generator = choice.generator ? nt::mod(choice.generator, f) : default_generator(spec);
    if (std::binary_search(spec.subgroup.begin(), spec.subgroup.end(), ib.generator))
        throw ShapeError(Errc::BadSubgroup, "generator lies in the subgroup");

    const std::size_t n = static_cast<std::size_t>(spec.ell);
    CycElem eta = gaussian_period(f, spec.subgroup, choice.coset_rep);
    if (spec.wild()) {
        ib.kind = BasisKind::SaturatedPowers;
        std::vector<CycElem> powers{CycElem::one(f)};
        for (std::size_t i = 1; i < n; ++i) powers.push_back(powers.back() * eta);
        saturate(ib, powers, spec);
    } else {
        ib.kind = BasisKind::NormalPeriods;
        ib.elements.push_back(eta);
        for (std::size_t i = 1; i < n; ++i)
            ib.elements.push_back(galois_apply(ib.generator, ib.elements.back()));
        // Σ e_i = Σ_{a ∈ (ℤ/f)*} ζ^a = μ(f) = ±1 for squarefree f
        ib.one = IntVector(n, Int(nt::moebius(f)));
    }

    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            g(i, j) = g(j, i) = integer_trace(ib.elements[i] * ib.elements[j], spec);
    ib.trace_gram = GramMatrix(std::move(g));
    for (const auto &e : ib.elements) ib.traces.push_back(integer_trace(e, spec));

    const DiscRad dr = disc_rad(spec);
    const Int det = ib.trace_gram.determinant();
    if (det != dr.disc)
        throw ShapeError(Errc::CertificationFailed, "det of trace Gram " + det.get_str() +
                                                        " differs from discriminant " + dr.disc.get_str());
    return ib;
}

LagrangianResult lagrangian_check(const IntegralBasis &basis) {
    if (basis.kind != BasisKind::NormalPeriods)
        throw ShapeError(Errc::WildCompositeUnsupported, "Lagrangian check needs a normal basis");
    LagrangianResult r;
    const auto &g = basis.trace_gram;
    r.a = g(0, 0);
    for (std::size_t j = 1; j < g.rank(); ++j) r.off_diag.push_back(g(0, j));
    r.holds = std::all_of(r.off_diag.begin(), r.off_diag.end(),
                          [&](const Int &v) { return v == r.off_diag.front(); });
    if (r.holds) r.b = r.off_diag.front();
    return r;
}

LagrangianResult lagrangian_check(const FieldSpec &spec) { return lagrangian_check(integral_basis(spec)); }

TraceLattice trace_zero_gram(const IntegralBasis &basis) {
    const std::size_t n = basis.elements.size();
    TraceLattice tl;
    tl.spec = basis.spec;
    tl.kind = basis.kind;
    if (basis.kind == BasisKind::NormalPeriods) {
        // all e_i share the trace ±1, so w_i = e_i - e_{i+1} spans O⁰
        for (std::size_t i = 1; i < n; ++i)
            if (basis.traces[i] != basis.traces[0] || abs(basis.traces[0]) != 1)
                throw ShapeError(Errc::CertificationFailed, "period traces are not a common unit");
        tl.coords = IntMatrix(n, n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            tl.coords(i, i) = 1;
            tl.coords(i + 1, i) = -1;
        }
        tl.description = "w_i = e_i - e_{i+1}, e_{i+1} = sigma_" + std::to_string(basis.generator) +
                         "(e_i), e_1 = Gaussian period of coset " + std::to_string(basis.coset_rep);
        auto lag = lagrangian_check(basis);
        if (lag.holds && !(lag.a > lag.b))
            throw ShapeError(Errc::CertificationFailed, "a > b fails for a totally real field");
    } else {
        IntMatrix row(1, n);
        for (std::size_t i = 0; i < n; ++i) row(0, i) = basis.traces[i];
        IntMatrix k = int_kernel(row);
        LllResult red = lll_reduce(congruence(basis.trace_gram, k));
        tl.coords = k * red.transform;
        tl.description = "LLL-reduced kernel of the trace on O_L = Z[zeta_f] meet Q(eta), eta the Gaussian period";
    }
    tl.gram = congruence(basis.trace_gram, tl.coords);
    if (tl.gram.rank() != n - 1 || !tl.gram.is_positive_definite())
        throw ShapeError(Errc::CertificationFailed, "trace-zero Gram is not positive definite of rank ell-1");
    return tl;
}

TraceLattice trace_zero_gram(const FieldSpec &spec, BasisChoice choice) {
    return trace_zero_gram(integral_basis(spec, choice));
}

} // namespace shape
