#ifndef CUSPFOL_SIGMA_HPP
#define CUSPFOL_SIGMA_HPP

#include "cuspfol/forms.hpp"
#include "cuspfol/newton.hpp"
#include "cuspfol/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cuspfol {

// Sign convention for the cuspidal family. `invariant` uses
//   w = d(z^2 - f^s) + g(f,z) * (s z df - 2 f dz),
// the unique choice for which the cusp z^2 - f^s = 0 is an exact invariant
// hypersurface. `paper_literal` flips the dz term to +2 f dz. Supports and
// polyhedra agree between the two, so every classification output does too.
enum class SignConvention { invariant, paper_literal };

std::string to_string(SignConvention signs);
SignConvention sign_convention_from_string(const std::string& text);

// Member of the cuspidal family with monomial base f = x^P. Variables are
// (x1..xn, z); g is bivariate in (t, z) with g(0,0) = 0.
struct QuasiOrdinaryModel {
    int n = 2;
    int s = 3;
    std::vector<int> P;
    Polynomial g;
    SignConvention signs = SignConvention::invariant;

    QuasiOrdinaryModel(int n, int s, std::vector<int> P, Polynomial g,
                       SignConvention signs = SignConvention::invariant);

    VarContext ambient_context() const; // (x1..xn, z)
    Polynomial base() const;            // x^P in the x variables
    long long weight_sum() const;       // |P|
};

// Same family with an arbitrary base f(x), f(0) = 0, f != 0. The ambient
// context appends "z" to f's context.
struct GeneralCuspidalModel {
    int s = 3;
    Polynomial f;
    Polynomial g;
    SignConvention signs = SignConvention::invariant;

    GeneralCuspidalModel(int s, Polynomial f, Polynomial g,
                         SignConvention signs = SignConvention::invariant);

    VarContext ambient_context() const;
};

// The bivariate context (t, z) every g lives in.
VarContext g_context();

KForm build_omega(const QuasiOrdinaryModel& m);
KForm build_omega(const GeneralCuspidalModel& m);

// z^2 - f^s under invariant signs, z^2 + f^s under paper-literal signs.
Polynomial separatrix(const QuasiOrdinaryModel& m);
Polynomial separatrix(const GeneralCuspidalModel& m);

// The cusp z^2 - f^s regardless of sign convention; this is the hypersurface
// the invariance check is run against.
Polynomial invariant_cusp(const QuasiOrdinaryModel& m);
Polynomial invariant_cusp(const GeneralCuspidalModel& m);

// min{2i + sj} over the support of g; nullopt for g = 0.
std::optional<long long> weighted_order_g(const QuasiOrdinaryModel& m);
std::optional<long long> weighted_order_g(const GeneralCuspidalModel& m);

// phi(u, v) = (c_1 u, ..., c_n u, v); all c_i nonzero.
PolyMap transversal_section(const QuasiOrdinaryModel& m, const std::vector<Rational>& c);

// Delta(u, v) = u^{|P|-1} g(u^{|P|}, v) for the all-ones section.
Polynomial delta_of_section(const QuasiOrdinaryModel& m);

struct OrdIdentityResult {
    bool holds;
    bool degenerate; // g = 0: both sides infinite, holds by convention
    std::optional<long long> lhs;
    std::optional<long long> rhs;
};

// Checks ord_{s|P|,2}(Delta) == |P| * ord_{s,2}(g) + 2|P| - 2, both sides
// computed independently.
OrdIdentityResult ord_identity_check(const QuasiOrdinaryModel& m);

// Closed-form support of the built 1-form, n = 2 only:
// {(0,0,2), (sp, sq, 0)} plus ((i+1)p, (i+1)q, j+1) per g-term.
SupportSet support_enumeration(const QuasiOrdinaryModel& m);

enum class Verdict {
    generalized_surface,
    not_generalized_surface,
    necessary_condition_holds,
    not_generalized_hypersurface,
};

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& text);

struct ClassificationReport {
    int n = 0;
    int s = 0;
    std::vector<int> P;
    std::optional<long long> weighted_order; // nullopt = infinite
    long long threshold = 0;                 // s - 2
    bool newton_equal = false;
    bool termwise_ok = false;
    Verdict verdict = Verdict::not_generalized_surface;
    std::vector<Exponents> omega_support;
    std::vector<Exponents> omega_vertices;
    std::vector<Exponents> separatrix_vertices;

    bool operator==(const ClassificationReport&) const = default;
};

// Runs all three criteria (weighted order vs threshold, termwise bound,
// polyhedron coincidence) and cross-checks them; disagreement raises
// InternalError carrying both witnesses.
ClassificationReport classify(const QuasiOrdinaryModel& m);

} // namespace cuspfol

#endif
