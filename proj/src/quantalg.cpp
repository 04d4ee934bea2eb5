#include "qdouble/quantalg.hpp"

#include <sstream>

namespace qdouble {

int Mono::degree() const { return static_cast<int>(f.size() + e.size()) + (is_zero(k) ? 0 : 1); }

AlgElem::AlgElem(const Mono& m, const Scalar& c) { add(m, c); }

int AlgElem::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

void AlgElem::add(const Mono& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

AlgElem& AlgElem::operator+=(const AlgElem& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

AlgElem& AlgElem::operator-=(const AlgElem& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

AlgElem AlgElem::operator-() const { return scaled(Scalar(-1)); }

AlgElem AlgElem::scaled(const Scalar& c) const {
    AlgElem r;
    if (c.is_zero()) return r;
    for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
    return r;
}

void TensorElem::add(const std::vector<Mono>& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

TensorElem& TensorElem::operator+=(const TensorElem& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

TensorElem& TensorElem::operator-=(const TensorElem& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
}

TensorElem TensorElem::scaled(const Scalar& c) const {
    TensorElem r(arity_);
    for (const auto& [m, x] : terms_) r.add(m, x * c);
    return r;
}

namespace {

void expand_into(TensorElem& out, const std::vector<AlgElem>& legs, const Scalar& c) {
    std::vector<Mono> cur(legs.size());
    std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t i, const Scalar& acc) {
        if (i == legs.size()) {
            out.add(cur, acc);
            return;
        }
        for (const auto& [m, x] : legs[i].terms()) {
            cur[i] = m;
            rec(i + 1, acc * x);
        }
    };
    rec(0, c);
}

}  // namespace

TensorElem TensorElem::pure(const std::vector<AlgElem>& legs) {
    TensorElem t(legs.size());
    expand_into(t, legs, Scalar(1));
    return t;
}

Uq::Uq(std::shared_ptr<const RootDatum> datum, int maxdeg, long serre_perturbation)
    : datum_(std::move(datum)), rewrite_(*datum_, maxdeg, serre_perturbation) {}

AlgElem Uq::one() const { return AlgElem(Mono{{}, IWeight(static_cast<std::size_t>(rank()), 0), {}}, Scalar(1)); }
AlgElem Uq::E(int r) const { return AlgElem(Mono{{}, IWeight(static_cast<std::size_t>(rank()), 0), {r}}, Scalar(1)); }
AlgElem Uq::F(int r) const { return AlgElem(Mono{{r}, IWeight(static_cast<std::size_t>(rank()), 0), {}}, Scalar(1)); }
AlgElem Uq::K(const IWeight& w) const { return AlgElem(Mono{{}, w, {}}, Scalar(1)); }
AlgElem Uq::K_alpha(int r, long power) const { return K(power * datum_->alpha(r)); }
AlgElem Uq::scalar(const Scalar& c) const { return one().scaled(c); }

AlgElem Uq::gen(const Gen& g) const {
    switch (g.kind) {
        case Gen::E:
            return E(g.index);
        case Gen::F:
            return F(g.index);
        case Gen::K:
            return K(g.weight);
    }
    return {};
}

Scalar Uq::q_form(const IWeight& a, const IWeight& b) const { return Scalar::q_power(datum_->form(a, b)); }
Scalar Uq::q_r(int r) const { return Scalar::q_power(datum_->d(r)); }

IWeight Uq::word_weight(const LWord& w) const {
    IWeight s(static_cast<std::size_t>(rank()), 0);
    for (int a : w) s = s + datum_->alpha(a);
    return s;
}

IWeight Uq::weight(const Mono& m) const { return word_weight(m.e) - word_weight(m.f); }

AlgElem Uq::normalize(const Mono& raw, const Scalar& c) const {
    AlgElem out;
    const WordPoly& nf = rewrite_.normal_form(raw.f);
    const WordPoly& ne = rewrite_.normal_form(raw.e);
    for (const auto& [f, cf] : nf)
        for (const auto& [e, ce] : ne) out.add(Mono{f, raw.k, e}, c * cf * ce);
    return out;
}

AlgElem Uq::left_F(int r, const AlgElem& x) const {
    AlgElem out;
    for (const auto& [m, c] : x.terms()) {
        LWord f{r};
        f.insert(f.end(), m.f.begin(), m.f.end());
        out += normalize(Mono{f, m.k, m.e}, c);
    }
    return out;
}

AlgElem Uq::left_K(const IWeight& w, const AlgElem& x) const {
    AlgElem out;
    if (is_zero(w)) return x;
    for (const auto& [m, c] : x.terms()) out.add(Mono{m.f, m.k + w, m.e}, c * q_form(w, word_weight(m.f)).inverse());
    return out;
}

AlgElem Uq::left_E(int r, const AlgElem& x) const {
    AlgElem out;
    const IWeight& ar = datum_->alpha(r);
    const Scalar qr = q_r(r);
    const Scalar cr = (qr - qr.inverse()).inverse();
    for (const auto& [m, c] : x.terms()) {
        LWord e{r};
        e.insert(e.end(), m.e.begin(), m.e.end());
        out += normalize(Mono{m.f, m.k, e}, c * q_form(m.k, ar).inverse());
        for (std::size_t i = 0; i < m.f.size(); ++i) {
            if (m.f[i] != r) continue;
            LWord rest(m.f.begin(), m.f.begin() + static_cast<long>(i));
            LWord after(m.f.begin() + static_cast<long>(i) + 1, m.f.end());
            Scalar qb = q_form(ar, word_weight(after));
            rest.insert(rest.end(), after.begin(), after.end());
            out += normalize(Mono{rest, m.k + ar, m.e}, c * cr * qb.inverse());
            out += normalize(Mono{rest, m.k - ar, m.e}, -(c * cr * qb));
        }
    }
    return out;
}

AlgElem Uq::mul_mono(const Mono& a, const Mono& b) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = mul_cache_.find({a, b});
        if (it != mul_cache_.end()) return it->second;
    }
    AlgElem x(b, Scalar(1));
    for (auto it = a.e.rbegin(); it != a.e.rend(); ++it) x = left_E(*it, x);
    x = left_K(a.k, x);
    for (auto it = a.f.rbegin(); it != a.f.rend(); ++it) x = left_F(*it, x);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    mul_cache_.emplace(std::make_pair(a, b), x);
    return x;
}

AlgElem Uq::multiply(const AlgElem& a, const AlgElem& b) const {
    AlgElem out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) out += mul_mono(ma, mb).scaled(ca * cb);
    return out;
}

AlgElem Uq::power(const AlgElem& a, int n) const {
    AlgElem r = one();
    for (int i = 0; i < n; ++i) r = multiply(r, a);
    return r;
}

AlgElem Uq::evaluate_free(const FreeElem& x) const {
    AlgElem out;
    for (const auto& [c, word] : x.terms) {
        AlgElem p = scalar(c);
        for (const auto& g : word) p = multiply(p, gen(g));
        out += p;
    }
    return out;
}

TensorElem Uq::multiply(const TensorElem& a, const TensorElem& b) const {
    TensorElem out(a.arity());
    std::vector<AlgElem> legs(a.arity());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            for (std::size_t i = 0; i < a.arity(); ++i) legs[i] = mul_mono(ma[i], mb[i]);
            expand_into(out, legs, ca * cb);
        }
    return out;
}

TensorElem Uq::coproduct(const AlgElem& x) const {
    TensorElem out(2);
    const IWeight zero(static_cast<std::size_t>(rank()), 0);
    for (const auto& [m, c] : x.terms()) {
        TensorElem dm(2);
        bool cached = false;
        {
            std::lock_guard<std::mutex> lock(cache_mutex_);
            auto it = coproduct_cache_.find(m);
            if (it != coproduct_cache_.end()) {
                dm = it->second;
                cached = true;
            }
        }
        if (!cached) {
            dm = TensorElem::pure({one(), one()});
            for (int r : m.f) {
                TensorElem g = TensorElem::pure({F(r), K_alpha(r, -1)}) + TensorElem::pure({one(), F(r)});
                dm = multiply(dm, g);
            }
            if (!is_zero(m.k)) dm = multiply(dm, TensorElem::pure({K(m.k), K(m.k)}));
            for (int r : m.e) {
                TensorElem g = TensorElem::pure({E(r), one()}) + TensorElem::pure({K_alpha(r), E(r)});
                dm = multiply(dm, g);
            }
            std::lock_guard<std::mutex> lock(cache_mutex_);
            coproduct_cache_.emplace(m, dm);
        }
        out += dm.scaled(c);
    }
    return out;
}

Scalar Uq::counit(const AlgElem& x) const {
    Scalar s;
    for (const auto& [m, c] : x.terms())
        if (m.f.empty() && m.e.empty()) s += c;
    return s;
}

AlgElem Uq::anti_extend(const AlgElem& x, AlgElem (Uq::*on_gen)(const Gen&) const) const {
    AlgElem out;
    for (const auto& [m, c] : x.terms()) {
        std::vector<Gen> gens;
        for (int r : m.f) gens.push_back({Gen::F, r, {}});
        if (!is_zero(m.k)) gens.push_back({Gen::K, 0, m.k});
        for (int r : m.e) gens.push_back({Gen::E, r, {}});
        AlgElem p = scalar(c.conj());
        for (auto it = gens.rbegin(); it != gens.rend(); ++it) p = multiply(p, (this->*on_gen)(*it));
        out += p;
    }
    return out;
}

AlgElem Uq::antipode_gen(const Gen& g) const {
    switch (g.kind) {
        case Gen::E:
            return -multiply(K_alpha(g.index, -1), E(g.index));
        case Gen::F:
            return -multiply(F(g.index), K_alpha(g.index));
        case Gen::K:
            return K(-g.weight);
    }
    return {};
}

AlgElem Uq::star_gen(const Gen& g) const {
    switch (g.kind) {
        case Gen::E:
            return multiply(F(g.index), K_alpha(g.index));
        case Gen::F:
            return multiply(K_alpha(g.index, -1), E(g.index));
        case Gen::K:
            return K(g.weight);
    }
    return {};
}

AlgElem Uq::unitary_antipode_gen(const Gen& g) const {
    switch (g.kind) {
        case Gen::E:
            return multiply(K_alpha(g.index, -1), E(g.index)).scaled(-q_r(g.index));
        case Gen::F:
            return multiply(F(g.index), K_alpha(g.index)).scaled(-q_r(g.index).inverse());
        case Gen::K:
            return K(-g.weight);
    }
    return {};
}

AlgElem Uq::antipode(const AlgElem& x) const { return anti_extend(x, &Uq::antipode_gen); }
AlgElem Uq::star(const AlgElem& x) const { return anti_extend(x, &Uq::star_gen); }
AlgElem Uq::unitary_antipode(const AlgElem& x) const { return anti_extend(x, &Uq::unitary_antipode_gen); }

TensorElem Uq::coproduct_on_leg(const TensorElem& t, std::size_t leg) const {
    TensorElem out(t.arity() + 1);
    for (const auto& [ms, c] : t.terms()) {
        TensorElem d = coproduct(AlgElem(ms[leg], Scalar(1)));
        for (const auto& [pair, x] : d.terms()) {
            std::vector<Mono> m;
            m.insert(m.end(), ms.begin(), ms.begin() + static_cast<long>(leg));
            m.push_back(pair[0]);
            m.push_back(pair[1]);
            m.insert(m.end(), ms.begin() + static_cast<long>(leg) + 1, ms.end());
            out.add(m, c * x);
        }
    }
    return out;
}

TensorElem Uq::counit_on_leg(const TensorElem& t, std::size_t leg) const {
    TensorElem out(t.arity() - 1);
    for (const auto& [ms, c] : t.terms()) {
        Scalar e = counit(AlgElem(ms[leg], Scalar(1)));
        if (e.is_zero()) continue;
        std::vector<Mono> m = ms;
        m.erase(m.begin() + static_cast<long>(leg));
        out.add(m, c * e);
    }
    return out;
}

AlgElem Uq::multiply_legs(const TensorElem& t) const {
    AlgElem out;
    for (const auto& [ms, c] : t.terms()) out += mul_mono(ms[0], ms[1]).scaled(c);
    return out;
}

TensorElem Uq::apply_legwise(const TensorElem& t, AlgElem (Uq::*f)(const AlgElem&) const) const {
    TensorElem out(t.arity());
    std::vector<AlgElem> legs(t.arity());
    for (const auto& [ms, c] : t.terms()) {
        for (std::size_t i = 0; i < t.arity(); ++i) legs[i] = (this->*f)(AlgElem(ms[i], Scalar(1)));
        expand_into(out, legs, c);
    }
    return out;
}

TensorElem Uq::flip(const TensorElem& t) const {
    TensorElem out(2);
    for (const auto& [ms, c] : t.terms()) out.add({ms[1], ms[0]}, c);
    return out;
}

std::vector<Relation> Uq::relations() const {
    std::vector<Relation> rels;
    const int n = rank();
    const IWeight zero(static_cast<std::size_t>(n), 0);
    auto idx = [](int r) { return std::to_string(r + 1); };
    rels.push_back({"K_0 = 1", {{{Scalar(1), {{Gen::K, 0, zero}}}, {Scalar(-1), {}}}}});
    const auto& basis = datum_->lattice_basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        rels.push_back({"K_b" + std::to_string(i + 1) + " K_-b" + std::to_string(i + 1) + " = 1",
                        {{{Scalar(1), {{Gen::K, 0, basis[i]}, {Gen::K, 0, -basis[i]}}}, {Scalar(-1), {}}}}});
        for (std::size_t j = i; j < basis.size(); ++j)
            rels.push_back({"K_b" + std::to_string(i + 1) + " K_b" + std::to_string(j + 1) + " = K_sum",
                            {{{Scalar(1), {{Gen::K, 0, basis[i]}, {Gen::K, 0, basis[j]}}},
                              {Scalar(-1), {{Gen::K, 0, basis[i] + basis[j]}}}}}});
        for (int r = 0; r < n; ++r) {
            Scalar qf = q_form(basis[i], datum_->alpha(r));
            rels.push_back({"K_b" + std::to_string(i + 1) + " E" + idx(r),
                            {{{Scalar(1), {{Gen::K, 0, basis[i]}, {Gen::E, r, {}}}},
                              {-qf, {{Gen::E, r, {}}, {Gen::K, 0, basis[i]}}}}}});
            rels.push_back({"K_b" + std::to_string(i + 1) + " F" + idx(r),
                            {{{Scalar(1), {{Gen::K, 0, basis[i]}, {Gen::F, r, {}}}},
                              {-qf.inverse(), {{Gen::F, r, {}}, {Gen::K, 0, basis[i]}}}}}});
        }
    }
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
            FreeElem x{{{Scalar(1), {{Gen::E, r, {}}, {Gen::F, s, {}}}}, {Scalar(-1), {{Gen::F, s, {}}, {Gen::E, r, {}}}}}};
            if (r == s) {
                Scalar c = (q_r(r) - q_r(r).inverse()).inverse();
                x.terms.push_back({-c, {{Gen::K, 0, datum_->alpha(r)}}});
                x.terms.push_back({c, {{Gen::K, 0, -datum_->alpha(r)}}});
            }
            rels.push_back({"cross E" + idx(r) + " F" + idx(s), x});
        }
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
            if (r == s) continue;
            const long m = 1 - datum_->cartan(r, s);
            for (auto kind : {Gen::E, Gen::F}) {
                FreeElem x;
                for (long k = 0; k <= m; ++k) {
                    std::vector<Gen> w(static_cast<std::size_t>(m - k), Gen{kind, r, {}});
                    w.push_back({kind, s, {}});
                    w.insert(w.end(), static_cast<std::size_t>(k), Gen{kind, r, {}});
                    Scalar c = qbinom(m, k, datum_->d(r));
                    x.terms.push_back({k % 2 ? -c : c, w});
                }
                rels.push_back({std::string(kind == Gen::E ? "serre E" : "serre F") + idx(r) + "," + idx(s), x});
            }
        }
    return rels;
}

AlgElem Uq::random_element(std::mt19937& rng, int maxlen, int terms) const {
    const int n = rank();
    std::uniform_int_distribution<int> kind(0, 2), letter(0, n - 1), len(1, maxlen), sign(0, 3);
    AlgElem out;
    for (int t = 0; t < terms; ++t) {
        Scalar c;
        switch (sign(rng)) {
            case 0: c = 1; break;
            case 1: c = -2; break;
            case 2: c = Scalar::q_power(1); break;
            default: c = Scalar(1) + Scalar::q_power(-1); break;
        }
        AlgElem p = scalar(c);
        for (int i = 0, l = len(rng); i < l; ++i) {
            int k = kind(rng), r = letter(rng);
            if (k == 0)
                p = multiply(p, E(r));
            else if (k == 1)
                p = multiply(p, F(r));
            else
                p = multiply(p, K_alpha(r, sign(rng) % 2 ? 1 : -1));
        }
        out += p;
    }
    return out;
}

std::string Uq::to_string(const Mono& m) const {
    const bool one_letter = rank() == 1;
    auto lab = [&](char g, int r) { return std::string(1, g) + (one_letter ? "" : std::to_string(r + 1)); };
    std::vector<std::string> parts;
    for (int r : m.f) parts.push_back(lab('F', r));
    if (!is_zero(m.k)) {
        std::string kl;
        for (int r = 0; r < rank() && kl.empty(); ++r) {
            if (m.k == datum_->alpha(r)) kl = "K_α" + std::string(one_letter ? "" : std::to_string(r + 1));
            if (m.k == -datum_->alpha(r)) kl = "K_α" + std::string(one_letter ? "" : std::to_string(r + 1)) + "^-1";
        }
        if (kl.empty()) {
            std::ostringstream os;
            os << "K[";
            for (std::size_t i = 0; i < m.k.size(); ++i) os << (i ? "," : "") << m.k[i];
            os << "]";
            kl = os.str();
        }
        parts.push_back(kl);
    }
    for (int r : m.e) parts.push_back(lab('E', r));
    if (parts.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "·" : "") + parts[i];
    return s;
}

std::string Uq::to_string(const AlgElem& x) const {
    if (x.is_zero()) return "0";
    // E-heavy terms first, reads like the usual way of writing generators
    std::vector<std::pair<Mono, Scalar>> ts(x.terms().begin(), x.terms().end());
    std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        if (a.first.e.size() != b.first.e.size()) return a.first.e.size() > b.first.e.size();
        return a.first.f.size() < b.first.f.size();
    });
    std::string s;
    bool first = true;
    for (const auto& [m, c] : ts) {
        std::string body = to_string(m);
        bool neg = c.is_negative_monomial();
        Scalar mag = neg ? -c : c;
        std::string coef = mag.is_one() ? "" : "(" + mag.to_string() + ")";
        if (!coef.empty() && body == "1") body.clear();
        else if (!coef.empty()) coef += "·";
        if (first)
            s += neg ? "−" : "";
        else
            s += neg ? " − " : " + ";
        s += coef + body;
        first = false;
    }
    return s;
}

}  // namespace qdouble
