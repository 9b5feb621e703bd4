#include "shape/shapelab.hpp"

#include "shape/errors.hpp"
#include "shape/ideallat.hpp"
#include "shape/numtheory.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace shape {

const char *source_path_name(SourcePath p) {
    return p == SourcePath::Direct ? "direct" : "conner_perlis";
}

bool Verdicts::all_true() const {
    return integral_after_rad && even && primitive && det_ok && shape_matches_expected.value_or(false) &&
           embedding_ok.value_or(false) && model_agrees.value_or(true);
}

namespace {

Int int_pow(long base, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
    return r;
}

} // namespace

ShapeReport shape_of(const FieldSpec &spec) {
    validate(spec);
    const int ell = spec.ell;
    const bool wild = spec.wild();
    ShapeReport r;
    r.spec = spec;
    const DiscRad dr = disc_rad(spec);
    r.disc = dr.disc;
    r.rad = dr.rad;

    const bool direct = !wild || spec.conductor == static_cast<std::int64_t>(ell) * ell;
    if (direct) {
        const IntegralBasis ib = integral_basis(spec);
        const TraceLattice tl = trace_zero_gram(ib);
        r.source = SourcePath::Direct;
        r.basis = tl.description;
        r.gram_qL = tl.gram;
        if (!wild) {
            const LagrangianResult lag = lagrangian_check(ib);
            TameValues tv;
            tv.a = lag.a;
            tv.lagrangian = lag.holds;
            tv.b = lag.holds ? lag.b : Int(0);
            tv.matches_closed_form = lag.holds && ell * lag.a == 1 + (ell - 1) * r.rad &&
                                     ell * lag.b == 1 - r.rad;
            r.tame = tv;
        }
    } else {
        r.source = SourcePath::ConnerPerlis;
        r.basis = "power basis zeta^i of Z[zeta_ell] with pairing tr(mu_L x conj(y))";
        r.gram_qL = conner_perlis_gram(ell, spec.m_L());
        r.notes.push_back("wild conductor with tame primes: q_L taken from the Conner-Perlis model");
    }

    Verdicts &v = r.verdicts;
    const Int content = r.gram_qL.content();
    v.integral_after_rad = mpz_divisible_p(content.get_mpz_t(), r.rad.get_mpz_t()) != 0;
    if (v.integral_after_rad) {
        r.gram_scaled = r.gram_qL.divided_by(r.rad);
        v.even = r.gram_scaled.is_even();
        if (v.even) {
            r.shape = QuadForm::from_doubled_gram(r.gram_scaled);
            v.primitive = classify_form(r.shape).primitive;
        }
    }
    const Int det_q = r.gram_qL.determinant();
    const Int want_q = wild ? Int(r.disc / ell) : Int(ell * r.disc);
    const Int want_scaled = wild ? int_pow(ell, static_cast<unsigned long>(ell - 2)) : Int(ell);
    v.det_ok = det_q == want_q && (!v.integral_after_rad || r.gram_scaled.determinant() == want_scaled) &&
               v.integral_after_rad;
    return r;
}

ExpectedShape expected_shape(int ell, bool wild) {
    if (ell < 3 || !nt::is_prime(ell)) throw ShapeError(Errc::NotOddPrime, std::to_string(ell));
    const std::size_t n = static_cast<std::size_t>(ell - 1);
    QuadForm q(n);
    for (std::size_t i = 0; i < n; ++i) {
        q.coeff(i, i) = wild ? (ell - 1) / 2 : 1;
        for (std::size_t j = i + 1; j < n; ++j)
            if (wild || j == i + 1) q.coeff(i, j) = -1;
    }
    return {q, q.doubled_gram()};
}

namespace {

// Embedding of (1/rad)·q_L into A_{ℓ-1} through I_α → I_δ ≅ A_{ℓ-1}.
void build_wild_embedding(ShapeReport &r) {
    const int ell = r.spec.ell;
    const SpecialElements se = special_elements(ell);
    const IdealLatticeSpec src{ell, 0, se.alpha};
    const IdealLatticeSpec dst{ell, 0, se.delta};
    const GramMatrix g_alpha = ideal_lattice_gram(src);
    const GramMatrix g_delta = ideal_lattice_gram(dst);
    const GramMatrix a = root_gram_An(static_cast<std::size_t>(ell - 1));

    auto to_alpha = is_isometric(g_alpha, r.gram_scaled);
    auto to_delta = is_isometric(a, g_delta);
    if (!to_alpha || !to_delta) {
        r.verdicts.embedding_ok = false;
        r.notes.push_back("missing isometry in the I_alpha -> I_delta -> A chain");
        return;
    }
    const EmbeddingCertificate cert = build_embedding(src, dst, exact_divide(se.eta, se.gamma));
    IntMatrix e = to_delta->transform * cert.matrix * to_alpha->transform;
    const Int index = abs(det_exact(e));
    const Int expected = int_pow(ell, static_cast<unsigned long>((ell - 3) / 2));
    r.embedding = e;
    r.embedding_index = index;
    r.verdicts.embedding_ok = congruence(a, e) == r.gram_scaled && index == cert.index && index == expected;
}

} // namespace

ShapeReport verify_main_theorem(const FieldSpec &spec) {
    ShapeReport r = shape_of(spec);
    const int ell = spec.ell;
    const bool wild = spec.wild();
    const bool usable = r.verdicts.integral_after_rad && r.gram_scaled.is_positive_definite() &&
                        r.gram_scaled.rank() == static_cast<std::size_t>(ell - 1);
    if (!usable) {
        r.verdicts.shape_matches_expected = false;
        r.verdicts.embedding_ok = false;
        return r;
    }
    const ExpectedShape ex = expected_shape(ell, wild);
    auto w = is_isometric(ex.doubled, r.gram_scaled);
    r.verdicts.shape_matches_expected = w.has_value();
    if (w) r.shape_witness = w->transform;

    if (!wild) {
        // the expected tame Gram is A_{ℓ-1} itself
        r.verdicts.embedding_ok = w.has_value();
        if (w) {
            r.embedding = w->transform;
            r.embedding_index = 1;
        }
    } else {
        build_wild_embedding(r);
        if (r.source == SourcePath::Direct)
            r.verdicts.model_agrees = is_isometric(r.gram_qL, conner_perlis_gram(ell, 1)).has_value();
    }
    return r;
}

BsComparison bs_compare(const FieldSpec &spec) {
    const IntegralBasis ib = integral_basis(spec);
    const TraceLattice tl = trace_zero_gram(ib);
    const std::size_t n = ib.elements.size();
    const Int ell = spec.ell;

    // ℤ + ℓ·O_L in integral-basis coordinates
    IntMatrix gens(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        gens(i, i) = ell;
        gens(i, n) = ib.one[i];
    }
    const HnfResult h = hnf(gens);
    const IntMatrix module = h.h.column_block(0, h.rank);

    IntMatrix tr(1, n);
    for (std::size_t i = 0; i < n; ++i) tr(0, i) = ib.traces[i];
    const IntMatrix kernel = int_kernel(tr * module);
    IntMatrix basis = module * kernel;
    const LllResult red = lll_reduce(congruence(ib.trace_gram, basis));
    basis = basis * red.transform;

    BsComparison c;
    c.bs_gram = red.gram;
    const IntMatrix scaled_o0 = ell * tl.coords;
    c.equals_ell_times_O0 = hnf(basis).h == hnf(scaled_o0).h;
    c.bs_shape = QuadForm::from_gram(c.bs_gram).primitive_part();

    const GramMatrix scaled = tl.gram.divided_by(disc_rad(spec).rad);
    c.shapes_equivalent = is_isometric(c.bs_shape.doubled_gram(), scaled).has_value();
    return c;
}

// ---------------------------------------------------------------------------
// scanning

namespace {

bool admissible(int ell, std::int64_t f) {
    if (f < 2) return false;
    for (auto [p, e] : nt::factor(f)) {
        if (p == ell) {
            if (e != 2) return false;
        } else if (e != 1 || p % ell != 1) {
            return false;
        }
    }
    return true;
}

} // namespace

std::vector<std::int64_t> admissible_conductors(int ell, std::int64_t max_conductor) {
    if (ell < 3 || !nt::is_prime(ell)) throw ShapeError(Errc::NotOddPrime, std::to_string(ell));
    std::vector<std::int64_t> out;
    for (std::int64_t f = 2; f <= max_conductor; ++f)
        if (admissible(ell, f)) out.push_back(f);
    return out;
}

ScanResult scan(int ell, std::int64_t max_conductor, unsigned jobs) {
    std::vector<FieldSpec> specs;
    for (auto f : admissible_conductors(ell, max_conductor))
        for (auto &s : fields_with_conductor(ell, f)) specs.push_back(std::move(s));

    ScanResult res;
    res.reports.resize(specs.size());
    std::vector<std::exception_ptr> errors(specs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < specs.size(); i = next++) {
            try {
                res.reports[i] = verify_main_theorem(specs[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(specs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto &t : pool) t.join();
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);

    const ShapeReport *first[2] = {nullptr, nullptr};
    for (const auto &r : res.reports) {
        if (!r.verdicts.integral_after_rad) {
            res.classes_consistent = false;
            continue;
        }
        const ShapeReport *&ref = first[r.spec.wild() ? 1 : 0];
        if (!ref) {
            ref = &r;
            continue;
        }
        if (!is_isometric(ref->gram_scaled, r.gram_scaled)) res.classes_consistent = false;
    }
    return res;
}

} // namespace shape
