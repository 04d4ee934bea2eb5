#include "qdouble/quantalg.hpp"

namespace qdouble {

namespace {

struct Tally {
    CheckResult r;
    explicit Tally(std::string name) {
        r.name = std::move(name);
        r.pass = true;
    }
    void expect(bool ok, const std::string& what) {
        if (!ok && r.pass) {
            r.pass = false;
            r.detail = what;
        }
    }
};

TensorElem as_tensor1(const AlgElem& x) {
    TensorElem t(1);
    for (const auto& [m, c] : x.terms()) t.add({m}, c);
    return t;
}

TensorElem coproduct_free(const Uq& u, const FreeElem& x) {
    TensorElem out(2);
    for (const auto& [c, word] : x.terms) {
        TensorElem p = TensorElem::pure({u.scalar(c), u.one()});
        for (const auto& g : word) p = u.multiply(p, u.coproduct(u.gen(g)));
        out += p;
    }
    return out;
}

Scalar counit_free(const Uq& u, const FreeElem& x) {
    Scalar s;
    for (const auto& [c, word] : x.terms) {
        Scalar p = c;
        for (const auto& g : word) p *= u.counit(u.gen(g));
        s += p;
    }
    return s;
}

}  // namespace

std::vector<CheckResult> hopf_axiom_check(const Uq& u, int maxdeg, int samples, unsigned seed) {
    std::vector<AlgElem> xs;
    for (int r = 0; r < u.rank(); ++r) {
        xs.push_back(u.E(r));
        xs.push_back(u.F(r));
        xs.push_back(u.K_alpha(r));
    }
    for (const auto& b : u.datum().lattice_basis()) xs.push_back(u.K(b));
    std::mt19937 rng(seed);
    for (int i = 0; i < samples; ++i) xs.push_back(u.random_element(rng, maxdeg, 2));

    Tally coassoc("coassociativity"), counit("counit law"), antipode("antipode law"), dstar("Delta(x*) = (*⊗*)Delta(x)"),
        sstar("S∘*∘S∘* = id"), santi("(S⊗S)∘Delta = Delta^op∘S"), rsq("R∘R = id"), rstar("R(x*) = R(x)*"),
        s2("S^2 = Ad(K_{-2rho})"), mult("Delta multiplicative");
    const IWeight two_rho = 2 * u.datum().rho();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const AlgElem& x = xs[i];
        const std::string tag = "element #" + std::to_string(i) + ": " + u.to_string(x);
        TensorElem dx = u.coproduct(x);
        coassoc.expect(u.coproduct_on_leg(dx, 0) == u.coproduct_on_leg(dx, 1), tag);
        counit.expect(u.counit_on_leg(dx, 0) == as_tensor1(x) && u.counit_on_leg(dx, 1) == as_tensor1(x), tag);
        AlgElem eps = u.scalar(u.counit(x));
        TensorElem s_left(2), s_right(2);
        for (const auto& [ms, c] : dx.terms()) {
            s_left += TensorElem::pure({u.antipode(AlgElem(ms[0], c)), AlgElem(ms[1], Scalar(1))});
            s_right += TensorElem::pure({AlgElem(ms[0], c), u.antipode(AlgElem(ms[1], Scalar(1)))});
        }
        antipode.expect(u.multiply_legs(s_left) == eps && u.multiply_legs(s_right) == eps, tag);
        AlgElem xs_ = u.star(x);
        dstar.expect(u.coproduct(xs_) == u.apply_legwise(dx, &Uq::star), tag);
        sstar.expect(u.star(u.antipode(u.star(u.antipode(x)))) == x, tag);
        AlgElem sx = u.antipode(x);
        santi.expect(u.apply_legwise(dx, &Uq::antipode) == u.flip(u.coproduct(sx)), tag);
        AlgElem rx = u.unitary_antipode(x);
        rsq.expect(u.unitary_antipode(rx) == x, tag);
        rstar.expect(u.unitary_antipode(xs_) == u.star(rx), tag);
        s2.expect(u.antipode(sx) == u.multiply(u.multiply(u.K(-two_rho), x), u.K(two_rho)), tag);
        if (i + 1 < xs.size()) {
            const AlgElem& y = xs[i + 1];
            mult.expect(u.coproduct(u.multiply(x, y)) == u.multiply(dx, u.coproduct(y)), tag);
        }
    }

    Tally drel("Delta respects the defining relations"), erel("counit vanishes on the defining relations"),
        nrel("defining relations normalize to zero");
    for (const auto& rel : u.relations()) {
        drel.expect(coproduct_free(u, rel.expr).is_zero(), rel.name);
        erel.expect(counit_free(u, rel.expr).is_zero(), rel.name);
        nrel.expect(u.evaluate_free(rel.expr).is_zero(), rel.name);
    }
    return {coassoc.r, counit.r, antipode.r, dstar.r, sstar.r, santi.r, rsq.r, rstar.r, s2.r, mult.r, drel.r, erel.r, nrel.r};
}

}  // namespace qdouble
