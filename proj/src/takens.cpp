#include "cuspfol/takens.hpp"

#include <string>

namespace cuspfol {

namespace {

// Splits a polynomial on (x, z) into z-free and z-linear parts, both
// restricted to the x-prefix. Fails when the z-degree exceeds 1.
struct AffineInZ {
    Polynomial constant; // z^0 part
    Polynomial linear;   // z^1 part
};

AffineInZ split_affine_in_z(const Polynomial& p, const std::string& label)
{
    int zidx = p.context().size() - 1;
    int n = zidx;
    Polynomial c0(p.context()), c1(p.context());
    for (const auto& [e, c] : p.terms()) {
        int zdeg = e[static_cast<size_t>(zidx)];
        if (zdeg == 0) {
            c0.add_term(e, c);
        } else if (zdeg == 1) {
            Exponents stripped = e;
            stripped[static_cast<size_t>(zidx)] = 0;
            c1.add_term(stripped, c);
        } else {
            throw ValidationError(label + " has z-degree " + std::to_string(zdeg) +
                                  ", expected an affine dependence on z");
        }
    }
    return {restrict_prefix(c0, n), restrict_prefix(c1, n)};
}

void require_vanishing(const Polynomial& p, const std::string& label)
{
    if (p.constant_term() != 0)
        throw ValidationError(label + " does not vanish at the origin");
}

} // namespace

LorayNilpotentForm validate_loray(const KForm& w)
{
    if (w.degree() != 1)
        throw StructuralError("nilpotent validation expects a 1-form");
    int count = w.context().size();
    if (count < 2)
        throw StructuralError("nilpotent validation needs at least one x variable and z");
    int n = count - 1;
    const std::string zname = w.context().name(n);

    LorayNilpotentForm out{w.context().prefix(n), {}, {}, Polynomial(w.context().prefix(n))};
    for (int i = 0; i < n; ++i) {
        auto parts = split_affine_in_z(w.coefficient({i}),
                                       "coefficient of d" + w.context().name(i));
        require_vanishing(parts.linear, "a_" + std::to_string(i + 1));
        require_vanishing(parts.constant, "b_" + std::to_string(i + 1));
        out.a.push_back(std::move(parts.linear));
        out.b.push_back(std::move(parts.constant));
    }

    auto q = split_affine_in_z(w.coefficient({n}), "coefficient of d" + zname);
    if (q.linear != Polynomial::constant(out.x_context, 1))
        throw ValidationError("coefficient of d" + zname + " is not monic in " + zname +
                              ": expected exactly " + zname + " + g(x)");
    require_vanishing(q.constant, "g");
    out.g = std::move(q.constant);
    return out;
}

KForm shift_z(const KForm& w, const Polynomial& h)
{
    int n = w.context().size() - 1;
    if (n < 1)
        throw StructuralError("shift needs a product context (x, z)");
    if (h.context() != w.context().prefix(n))
        throw StructuralError("shift polynomial must live in the x variables");
    if (h.constant_term() != 0)
        throw ValidationError("shift polynomial must vanish at the origin");

    std::vector<Polynomial> images;
    for (int i = 0; i < n; ++i)
        images.push_back(Polynomial::variable(w.context(), i));
    images.push_back(Polynomial::variable(w.context(), n) - embed_prefix(h, w.context()));
    return pullback(PolyMap(w.context(), w.context(), std::move(images)), w);
}

std::pair<KForm, KForm> decompose(const KForm& w)
{
    if (w.degree() != 1)
        throw StructuralError("decomposition expects a 1-form");
    int count = w.context().size();
    if (count < 2)
        throw StructuralError("decomposition needs at least one x variable and z");
    int n = count - 1;
    const std::string zname = w.context().name(n);

    Polynomial qz = w.coefficient({n}) - Polynomial::variable(w.context(), n);
    if (!qz.is_zero()) {
        const auto& [e, c] = *qz.terms().begin();
        throw ValidationError("d" + zname + " coefficient is not exactly " + zname +
                              "; residual term has coefficient " + rational_to_string(c) +
                              " — shift first");
    }

    KForm w0(w.context().prefix(n), 1), w1(w.context().prefix(n), 1);
    for (int i = 0; i < n; ++i) {
        auto parts = split_affine_in_z(w.coefficient({i}),
                                       "coefficient of d" + w.context().name(i));
        w0.add_term({i}, parts.constant);
        w1.add_term({i}, parts.linear);
    }
    return {std::move(w0), std::move(w1)};
}

std::pair<Polynomial, Polynomial> to_potentials(const KForm& w0, const KForm& w1)
{
    auto integrate = [](const KForm& w, const char* label) {
        try {
            return integrate_closed_1form(w);
        } catch (const NotClosedError& e) {
            throw NotClosedError(std::string(label) + " is not closed", e.witness_tuple,
                                 e.witness_coefficient);
        }
    };
    return {integrate(w0, "omega_0"), integrate(w1, "omega_1")};
}

bool dependence_check(const Polynomial& f0, const Polynomial& f1)
{
    if (f0.context() != f1.context())
        throw StructuralError("context mismatch in dependence check");
    return wedge(exterior_derivative(KForm::from_polynomial(f0)),
                 exterior_derivative(KForm::from_polynomial(f1)))
        .is_zero();
}

bool verify_primitive(const Polynomial& f, const Polynomial& h0, const Polynomial& h1,
                      const Polynomial& f0, const Polynomial& f1, long long jet)
{
    if (h0.context().size() != 1 || h1.context().size() != 1)
        throw StructuralError("h0 and h1 must be univariate");
    if (f.constant_term() != 0)
        throw ValidationError("primitive candidate f must vanish at the origin");
    auto matches = [&](const Polynomial& h, const Polynomial& fi) {
        return truncate(fi - substitute(h, {f}), jet).is_zero();
    };
    return matches(h0, f0) && matches(h1, f1);
}

NilpotentDecomposition takens_pipeline(const KForm& w)
{
    LorayNilpotentForm loray = validate_loray(w);
    KForm shifted = shift_z(w, loray.g);
    auto [w0, w1] = decompose(shifted);
    auto [f0, f1] = to_potentials(w0, w1);

    const VarContext& full = w.context();
    int zidx = full.size() - 1;
    KForm normal = exterior_derivative(KForm::from_polynomial(embed_prefix(f0, full)));
    KForm zdz(full, 1);
    zdz.add_term({zidx}, Polynomial::variable(full, zidx) - embed_prefix(f1, full));
    normal += zdz;

    bool dependent = dependence_check(f0, f1);
    return {std::move(f0), std::move(f1), std::move(normal), dependent};
}

} // namespace cuspfol
