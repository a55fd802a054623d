#ifndef CUSPFOL_FORMS_HPP
#define CUSPFOL_FORMS_HPP

#include "cuspfol/polynomial.hpp"

#include <map>
#include <utility>
#include <vector>

namespace cuspfol {

// Strictly increasing 0-based variable indices; the wedge basis dx_{i1}^...^dx_{ik}.
using IndexTuple = std::vector<int>;

// Sorts a tuple into strictly increasing order. Returns the permutation sign,
// or 0 when an index repeats (the basis element vanishes).
int normalize_tuple(IndexTuple& tuple);

// Differential k-form with polynomial coefficients. Degree 0 wraps a plain
// polynomial (empty tuple key). Degrees above the variable count are allowed
// but can only ever hold the zero form: no strictly increasing tuple exists.
class KForm {
public:
    using CoeffMap = std::map<IndexTuple, Polynomial>;

    KForm(VarContext context, int degree);

    static KForm from_polynomial(const Polynomial& p);

    const VarContext& context() const { return context_; }
    int degree() const { return degree_; }
    const CoeffMap& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    // Zero when absent; tuple must be strictly increasing.
    Polynomial coefficient(const IndexTuple& tuple) const;

    // Accumulates coeff * dx_tuple; the tuple may arrive unsorted and is
    // normalized with its sign (dropped entirely on a repeated index).
    void add_term(IndexTuple tuple, const Polynomial& coeff);

    KForm operator-() const;
    KForm& operator+=(const KForm& rhs);
    KForm& operator-=(const KForm& rhs);

    friend KForm operator+(KForm lhs, const KForm& rhs) { return lhs += rhs; }
    friend KForm operator-(KForm lhs, const KForm& rhs) { return lhs -= rhs; }
    friend KForm operator*(const Polynomial& p, const KForm& w);
    friend KForm operator*(const Rational& c, const KForm& w);

    bool operator==(const KForm&) const = default;

private:
    VarContext context_;
    int degree_;
    CoeffMap coeffs_;
};

// Origin-preserving polynomial map: one image per target variable, written in
// the source variables, each with zero constant term.
class PolyMap {
public:
    PolyMap(VarContext source, VarContext target, std::vector<Polynomial> images);

    const VarContext& source() const { return source_; }
    const VarContext& target() const { return target_; }
    const std::vector<Polynomial>& images() const { return images_; }

private:
    VarContext source_;
    VarContext target_;
    std::vector<Polynomial> images_;
};

KForm exterior_derivative(const KForm& w);
KForm wedge(const KForm& a, const KForm& b);
KForm pullback(const PolyMap& map, const KForm& w);

// Union over i of supp(coefficient of dx_i) shifted by e_i, canonically sorted.
std::vector<Exponents> one_form_support(const KForm& w);

// w ^ dw == 0, exactly.
bool is_integrable(const KForm& w);

// F divides every coefficient of w ^ dF.
bool is_invariant_hypersurface(const KForm& w, const Polynomial& surface);

// Raised by integrate_closed_1form; carries one nonzero coefficient of d(alpha).
class NotClosedError : public ValidationError {
public:
    NotClosedError(std::string what, IndexTuple tuple, Polynomial coefficient)
        : ValidationError(std::move(what)),
          witness_tuple(std::move(tuple)),
          witness_coefficient(std::move(coefficient))
    {
    }

    IndexTuple witness_tuple;
    Polynomial witness_coefficient;
};

// The unique f with f(0) = 0 and df = alpha, built degree by degree from the
// Euler relation: the degree-k part of f is the degree-k part of sum_i x_i c_i
// divided by k.
Polynomial integrate_closed_1form(const KForm& alpha);

// Exact values of every stored coefficient at `point`, in tuple order.
std::vector<Rational> eval_coefficients(const KForm& w, const std::vector<Rational>& point);

} // namespace cuspfol

#endif
