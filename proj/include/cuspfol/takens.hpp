#ifndef CUSPFOL_TAKENS_HPP
#define CUSPFOL_TAKENS_HPP

#include "cuspfol/forms.hpp"
#include "cuspfol/polynomial.hpp"

#include <utility>
#include <vector>

namespace cuspfol {

// A nilpotent 1-form in prenormal shape on (x_1..x_n, z): every dx_i
// coefficient is affine in z and the dz coefficient is z + g(x), with
// a_i, b_i, g all vanishing at the origin:
//   w = sum_i (a_i(x) z + b_i(x)) dx_i + (z + g(x)) dz
struct LorayNilpotentForm {
    VarContext x_context;
    std::vector<Polynomial> a;
    std::vector<Polynomial> b;
    Polynomial g;
};

// Shape check + coefficient extraction. Throws ValidationError naming the
// offending coefficient and its z-degree when the form does not fit.
LorayNilpotentForm validate_loray(const KForm& w);

// Pullback along (x, z) -> (x, z - h(x)); h lives in the x-prefix context
// and must vanish at the origin.
KForm shift_z(const KForm& w, const Polynomial& h);

// Splits w = w0 + z*w1 + z dz into x-variable 1-forms (w0, w1). Requires the
// dz coefficient to be exactly z; shift first if it is not.
std::pair<KForm, KForm> decompose(const KForm& w);

// Integrates both forms to potentials vanishing at the origin. Propagates
// NotClosedError, labelled with the offending form.
std::pair<Polynomial, Polynomial> to_potentials(const KForm& w0, const KForm& w1);

// df0 ^ df1 == 0, exactly.
bool dependence_check(const Polynomial& f0, const Polynomial& f1);

// Checks a user-supplied factorization f_i = h_i(f) up to the given jet
// degree: truncate(f_i - h_i(f), jet) == 0 for i = 0, 1. Never searches.
bool verify_primitive(const Polynomial& f, const Polynomial& h0, const Polynomial& h1,
                      const Polynomial& f0, const Polynomial& f1, long long jet);

struct NilpotentDecomposition {
    Polynomial f0;
    Polynomial f1;
    KForm normal_form; // df0 - f1 dz + z dz, assembled from the potentials
    bool functionally_dependent;
};

// validate -> shift by g -> decompose -> integrate -> dependence check.
NilpotentDecomposition takens_pipeline(const KForm& w);

} // namespace cuspfol

#endif
