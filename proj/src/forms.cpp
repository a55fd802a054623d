#include "cuspfol/forms.hpp"

#include <algorithm>
#include <string>

namespace cuspfol {

namespace {

void require_same_context(const KForm& a, const KForm& b, const char* op)
{
    if (a.context() != b.context())
        throw StructuralError(std::string("context mismatch in ") + op);
}

// Merges two strictly increasing tuples, counting transpositions.
// Returns sign 0 on a shared index.
int merge_tuples(const IndexTuple& a, const IndexTuple& b, IndexTuple& out)
{
    out.clear();
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    long long inversions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j])
            return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            // b[j] jumps over the remaining entries of a
            inversions += static_cast<long long>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    out.insert(out.end(), a.begin() + static_cast<long>(i), a.end());
    out.insert(out.end(), b.begin() + static_cast<long>(j), b.end());
    return inversions % 2 == 0 ? 1 : -1;
}

} // namespace

int normalize_tuple(IndexTuple& tuple)
{
    int sign = 1;
    // insertion sort, counting swaps
    for (size_t i = 1; i < tuple.size(); ++i) {
        for (size_t j = i; j > 0 && tuple[j] < tuple[j - 1]; --j) {
            std::swap(tuple[j], tuple[j - 1]);
            sign = -sign;
        }
    }
    for (size_t i = 1; i < tuple.size(); ++i)
        if (tuple[i] == tuple[i - 1])
            return 0;
    return sign;
}

KForm::KForm(VarContext context, int degree) : context_(std::move(context)), degree_(degree)
{
    if (degree < 0)
        throw StructuralError("form degree must be >= 0");
}

KForm KForm::from_polynomial(const Polynomial& p)
{
    KForm w(p.context(), 0);
    if (!p.is_zero())
        w.coeffs_.emplace(IndexTuple{}, p);
    return w;
}

Polynomial KForm::coefficient(const IndexTuple& tuple) const
{
    auto it = coeffs_.find(tuple);
    return it == coeffs_.end() ? Polynomial(context_) : it->second;
}

void KForm::add_term(IndexTuple tuple, const Polynomial& coeff)
{
    if (coeff.context() != context_)
        throw StructuralError("coefficient context mismatch in add_term");
    if (static_cast<int>(tuple.size()) != degree_)
        throw StructuralError("tuple arity does not match form degree");
    for (int idx : tuple)
        if (idx < 0 || idx >= context_.size())
            throw StructuralError("basis index out of range");
    int sign = normalize_tuple(tuple);
    if (sign == 0 || coeff.is_zero())
        return;
    auto it = coeffs_.find(tuple);
    if (it == coeffs_.end()) {
        coeffs_.emplace(std::move(tuple), sign == 1 ? coeff : -coeff);
        return;
    }
    if (sign == 1)
        it->second += coeff;
    else
        it->second -= coeff;
    if (it->second.is_zero())
        coeffs_.erase(it);
}

KForm KForm::operator-() const
{
    KForm out(context_, degree_);
    for (const auto& [t, c] : coeffs_)
        out.coeffs_.emplace(t, -c);
    return out;
}

KForm& KForm::operator+=(const KForm& rhs)
{
    require_same_context(*this, rhs, "form add");
    if (degree_ != rhs.degree_)
        throw StructuralError("cannot add forms of different degree");
    if (this == &rhs) {
        KForm copy = rhs;
        return *this += copy;
    }
    for (const auto& [t, c] : rhs.coeffs_)
        add_term(t, c);
    return *this;
}

KForm& KForm::operator-=(const KForm& rhs)
{
    require_same_context(*this, rhs, "form subtract");
    if (degree_ != rhs.degree_)
        throw StructuralError("cannot subtract forms of different degree");
    if (this == &rhs) {
        coeffs_.clear();
        return *this;
    }
    for (const auto& [t, c] : rhs.coeffs_)
        add_term(t, -c);
    return *this;
}

KForm operator*(const Polynomial& p, const KForm& w)
{
    if (p.context() != w.context())
        throw StructuralError("context mismatch in polynomial * form");
    KForm out(w.context(), w.degree());
    for (const auto& [t, c] : w.coeffs_)
        out.add_term(t, p * c);
    return out;
}

KForm operator*(const Rational& c, const KForm& w)
{
    KForm out(w.context(), w.degree());
    if (c == 0)
        return out;
    for (const auto& [t, coeff] : w.coeffs_)
        out.coeffs_.emplace(t, c * coeff);
    return out;
}

KForm exterior_derivative(const KForm& w)
{
    if (w.degree() >= w.context().size())
        throw StructuralError("exterior derivative overflows the top degree");
    KForm out(w.context(), w.degree() + 1);
    IndexTuple merged;
    for (const auto& [t, c] : w.coefficients()) {
        for (int i = 0; i < w.context().size(); ++i) {
            Polynomial dc = derivative(c, i);
            if (dc.is_zero())
                continue;
            int sign = merge_tuples(IndexTuple{i}, t, merged);
            if (sign == 0)
                continue;
            out.add_term(merged, sign == 1 ? dc : -dc);
        }
    }
    return out;
}

KForm wedge(const KForm& a, const KForm& b)
{
    require_same_context(a, b, "wedge");
    KForm out(a.context(), a.degree() + b.degree());
    IndexTuple merged;
    for (const auto& [ta, ca] : a.coefficients()) {
        for (const auto& [tb, cb] : b.coefficients()) {
            int sign = merge_tuples(ta, tb, merged);
            if (sign == 0)
                continue;
            Polynomial prod = ca * cb;
            out.add_term(merged, sign == 1 ? prod : -prod);
        }
    }
    return out;
}

PolyMap::PolyMap(VarContext source, VarContext target, std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (static_cast<int>(images_.size()) != target_.size())
        throw StructuralError("polynomial map needs one image per target variable");
    for (size_t i = 0; i < images_.size(); ++i) {
        if (images_[i].context() != source_)
            throw StructuralError("image of '" + target_.name(static_cast<int>(i)) +
                                  "' is not written in the source variables");
        if (images_[i].constant_term() != 0)
            throw ValidationError("image of '" + target_.name(static_cast<int>(i)) +
                                  "' does not vanish at the origin");
    }
}

KForm pullback(const PolyMap& map, const KForm& w)
{
    if (w.context() != map.target())
        throw StructuralError("pullback: form does not live in the map's target context");
    // d(phi_i), computed once
    std::vector<KForm> dimages;
    dimages.reserve(map.images().size());
    for (const auto& im : map.images())
        dimages.push_back(exterior_derivative(KForm::from_polynomial(im)));

    KForm out(map.source(), w.degree());
    for (const auto& [t, c] : w.coefficients()) {
        KForm term = KForm::from_polynomial(substitute(c, map.images()));
        for (int idx : t)
            term = wedge(term, dimages[static_cast<size_t>(idx)]);
        out += term;
    }
    return out;
}

std::vector<Exponents> one_form_support(const KForm& w)
{
    if (w.degree() != 1)
        throw StructuralError("support is defined for 1-forms");
    std::map<Exponents, bool, GradedLexLess> seen;
    for (const auto& [t, c] : w.coefficients()) {
        size_t axis = static_cast<size_t>(t[0]);
        for (const auto& [e, coeff] : c.terms()) {
            Exponents shifted = e;
            shifted[axis] += 1;
            seen.emplace(std::move(shifted), true);
        }
    }
    std::vector<Exponents> out;
    out.reserve(seen.size());
    for (const auto& [e, flag] : seen)
        out.push_back(e);
    return out;
}

bool is_integrable(const KForm& w)
{
    if (w.degree() != 1)
        throw StructuralError("integrability is defined for 1-forms");
    return wedge(w, exterior_derivative(w)).is_zero();
}

bool is_invariant_hypersurface(const KForm& w, const Polynomial& surface)
{
    if (w.degree() != 1)
        throw StructuralError("invariance is defined for 1-forms");
    if (surface.context() != w.context())
        throw StructuralError("context mismatch in invariance check");
    if (surface.is_zero())
        throw ValidationError("invariance check against the zero polynomial");
    KForm obstruction = wedge(w, exterior_derivative(KForm::from_polynomial(surface)));
    for (const auto& [t, c] : obstruction.coefficients())
        if (!exact_divide(c, surface))
            return false;
    return true;
}

Polynomial integrate_closed_1form(const KForm& alpha)
{
    if (alpha.degree() != 1)
        throw StructuralError("can only integrate 1-forms");
    KForm da = exterior_derivative(alpha);
    if (!da.is_zero()) {
        const auto& [t, c] = *da.coefficients().begin();
        throw NotClosedError("form is not closed", t, c);
    }
    // Euler: sum_i x_i c_i has (k f)_k as its degree-k part when df = alpha.
    Polynomial euler(alpha.context());
    for (const auto& [t, c] : alpha.coefficients())
        euler += Polynomial::variable(alpha.context(), t[0]) * c;
    Polynomial f(alpha.context());
    for (const auto& [e, c] : euler.terms()) {
        long long k = total_degree(e);
        f.add_term(e, c / Rational(k));
    }
    return f;
}

std::vector<Rational> eval_coefficients(const KForm& w, const std::vector<Rational>& point)
{
    if (static_cast<int>(point.size()) != w.context().size())
        throw StructuralError("evaluation point arity mismatch");
    std::vector<Rational> out;
    out.reserve(w.coefficients().size());
    for (const auto& [t, c] : w.coefficients())
        out.push_back(evaluate(c, point));
    return out;
}

} // namespace cuspfol
