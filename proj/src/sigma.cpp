#include "cuspfol/sigma.hpp"

#include <numeric>
#include <sstream>

namespace cuspfol {

namespace {

// Keeps every derived exponent (s*p_i, (i+1)*|P|, ...) comfortably inside int.
constexpr int max_model_magnitude = 1000;

void validate_g(const Polynomial& g)
{
    if (g.context().size() != 2)
        throw ValidationError("g must be bivariate in (t, z)");
    if (g.constant_term() != 0)
        throw ValidationError("g must not have a constant term");
    if (!g.is_zero() && total_degree(g.terms().rbegin()->first) > max_model_magnitude)
        throw ValidationError("g exceeds the supported degree bound of " +
                              std::to_string(max_model_magnitude));
}

void validate_s(int s)
{
    if (s < 3)
        throw ValidationError("s must be >= 3, got " + std::to_string(s));
    if (s > max_model_magnitude)
        throw ValidationError("s exceeds the supported bound of " +
                              std::to_string(max_model_magnitude));
}

// Shared assembly: d(z^2 - f^s) + g(f, z) * (s z df -/+ 2 f dz) on (x.., z).
KForm assemble_omega(const VarContext& ambient, const Polynomial& f_x, int s,
                     const Polynomial& g, SignConvention signs)
{
    int zidx = ambient.size() - 1;
    Polynomial f = embed_prefix(f_x, ambient);
    Polynomial z = Polynomial::variable(ambient, zidx);

    KForm omega = exterior_derivative(KForm::from_polynomial(z * z - pow(f, s)));

    Polynomial gfz = substitute(g, {f, z});
    if (!gfz.is_zero()) {
        KForm eta = Rational(s) * (z * exterior_derivative(KForm::from_polynomial(f)));
        KForm fdz(ambient, 1);
        fdz.add_term({zidx}, Rational(2) * f);
        if (signs == SignConvention::invariant)
            eta -= fdz;
        else
            eta += fdz;
        omega += gfz * eta;
    }
    return omega;
}

Polynomial assemble_separatrix(const VarContext& ambient, const Polynomial& f_x, int s,
                               SignConvention signs)
{
    int zidx = ambient.size() - 1;
    Polynomial f = embed_prefix(f_x, ambient);
    Polynomial z = Polynomial::variable(ambient, zidx);
    return signs == SignConvention::invariant ? z * z - pow(f, s) : z * z + pow(f, s);
}

std::string format_exponents(const Exponents& e)
{
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < e.size(); ++i)
        os << (i ? "," : "") << e[i];
    os << ")";
    return os.str();
}

} // namespace

std::string to_string(SignConvention signs)
{
    return signs == SignConvention::invariant ? "invariant" : "paper";
}

SignConvention sign_convention_from_string(const std::string& text)
{
    if (text == "invariant")
        return SignConvention::invariant;
    if (text == "paper")
        return SignConvention::paper_literal;
    throw ValidationError("unknown sign convention '" + text + "' (use invariant|paper)");
}

VarContext g_context()
{
    return VarContext({"t", "z"});
}

QuasiOrdinaryModel::QuasiOrdinaryModel(int n_, int s_, std::vector<int> P_, Polynomial g_,
                                       SignConvention signs_)
    : n(n_), s(s_), P(std::move(P_)), g(std::move(g_)), signs(signs_)
{
    if (n < 2)
        throw ValidationError("quasi-ordinary model needs n >= 2");
    if (n + 1 > VarContext::max_variables)
        throw ValidationError("n exceeds the supported variable count");
    validate_s(s);
    if (static_cast<int>(P.size()) != n)
        throw ValidationError("P must have exactly n entries");
    for (int p : P) {
        if (p < 1)
            throw ValidationError("every entry of P must be >= 1");
        if (p > max_model_magnitude)
            throw ValidationError("entries of P exceed the supported bound of " +
                                  std::to_string(max_model_magnitude));
    }
    validate_g(g);
}

VarContext QuasiOrdinaryModel::ambient_context() const
{
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i)
        names.push_back("x" + std::to_string(i));
    names.push_back("z");
    return VarContext(std::move(names));
}

Polynomial QuasiOrdinaryModel::base() const
{
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i)
        names.push_back("x" + std::to_string(i));
    VarContext xctx(std::move(names));
    return Polynomial::monomial(xctx, Exponents(P.begin(), P.end()), 1);
}

long long QuasiOrdinaryModel::weight_sum() const
{
    return std::accumulate(P.begin(), P.end(), 0LL);
}

GeneralCuspidalModel::GeneralCuspidalModel(int s_, Polynomial f_, Polynomial g_,
                                           SignConvention signs_)
    : s(s_), f(std::move(f_)), g(std::move(g_)), signs(signs_)
{
    validate_s(s);
    if (f.is_zero())
        throw ValidationError("base polynomial f must be nonzero");
    if (f.constant_term() != 0)
        throw ValidationError("base polynomial f must vanish at the origin");
    if (f.context().index_of("z"))
        throw ValidationError("base context must not contain the reserved variable 'z'");
    if (f.context().size() + 1 > VarContext::max_variables)
        throw ValidationError("base context exceeds the supported variable count");
    if (total_degree(f.terms().rbegin()->first) > max_model_magnitude)
        throw ValidationError("f exceeds the supported degree bound of " +
                              std::to_string(max_model_magnitude));
    validate_g(g);
}

VarContext GeneralCuspidalModel::ambient_context() const
{
    return f.context().extended("z");
}

KForm build_omega(const QuasiOrdinaryModel& m)
{
    return assemble_omega(m.ambient_context(), m.base(), m.s, m.g, m.signs);
}

KForm build_omega(const GeneralCuspidalModel& m)
{
    return assemble_omega(m.ambient_context(), m.f, m.s, m.g, m.signs);
}

Polynomial separatrix(const QuasiOrdinaryModel& m)
{
    return assemble_separatrix(m.ambient_context(), m.base(), m.s, m.signs);
}

Polynomial separatrix(const GeneralCuspidalModel& m)
{
    return assemble_separatrix(m.ambient_context(), m.f, m.s, m.signs);
}

Polynomial invariant_cusp(const QuasiOrdinaryModel& m)
{
    return assemble_separatrix(m.ambient_context(), m.base(), m.s, SignConvention::invariant);
}

Polynomial invariant_cusp(const GeneralCuspidalModel& m)
{
    return assemble_separatrix(m.ambient_context(), m.f, m.s, SignConvention::invariant);
}

std::optional<long long> weighted_order_g(const QuasiOrdinaryModel& m)
{
    return weighted_order(m.g, WeightVector({2, m.s}));
}

std::optional<long long> weighted_order_g(const GeneralCuspidalModel& m)
{
    return weighted_order(m.g, WeightVector({2, m.s}));
}

PolyMap transversal_section(const QuasiOrdinaryModel& m, const std::vector<Rational>& c)
{
    if (static_cast<int>(c.size()) != m.n)
        throw StructuralError("section needs one scale per x variable");
    for (const auto& ci : c)
        if (ci == 0)
            throw ValidationError("section scales must be nonzero");
    VarContext source({"u", "v"});
    std::vector<Polynomial> images;
    for (const auto& ci : c)
        images.push_back(ci * Polynomial::variable(source, 0));
    images.push_back(Polynomial::variable(source, 1));
    return PolyMap(source, m.ambient_context(), std::move(images));
}

Polynomial delta_of_section(const QuasiOrdinaryModel& m)
{
    VarContext uv({"u", "v"});
    long long total = m.weight_sum();
    Polynomial u_pow = Polynomial::monomial(uv, {static_cast<int>(total), 0}, 1);
    Polynomial composed = substitute(m.g, {u_pow, Polynomial::variable(uv, 1)});
    return Polynomial::monomial(uv, {static_cast<int>(total - 1), 0}, 1) * composed;
}

OrdIdentityResult ord_identity_check(const QuasiOrdinaryModel& m)
{
    if (m.g.is_zero())
        return {true, true, std::nullopt, std::nullopt};
    long long total = m.weight_sum();
    Polynomial delta = delta_of_section(m);
    auto lhs = weighted_order(delta, WeightVector({2, m.s * total}));
    auto gord = weighted_order_g(m);
    long long rhs = total * *gord + 2 * total - 2;
    return {lhs && *lhs == rhs, false, lhs, rhs};
}

SupportSet support_enumeration(const QuasiOrdinaryModel& m)
{
    if (m.n != 2)
        throw StructuralError("closed-form support enumeration is stated for n = 2");
    int p = m.P[0], q = m.P[1];
    std::vector<Exponents> pts;
    pts.push_back({0, 0, 2});
    pts.push_back({m.s * p, m.s * q, 0});
    for (const auto& [e, c] : m.g.terms()) {
        int i = e[0], j = e[1];
        pts.push_back({(i + 1) * p, (i + 1) * q, j + 1});
    }
    return SupportSet(3, std::move(pts));
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::generalized_surface: return "generalized_surface";
    case Verdict::not_generalized_surface: return "not_generalized_surface";
    case Verdict::necessary_condition_holds: return "necessary_condition_holds";
    case Verdict::not_generalized_hypersurface: return "not_generalized_hypersurface";
    }
    throw InternalError("unreachable verdict");
}

Verdict verdict_from_string(const std::string& text)
{
    for (Verdict v : {Verdict::generalized_surface, Verdict::not_generalized_surface,
                      Verdict::necessary_condition_holds, Verdict::not_generalized_hypersurface})
        if (to_string(v) == text)
            return v;
    throw ValidationError("unknown verdict '" + text + "'");
}

ClassificationReport classify(const QuasiOrdinaryModel& m)
{
    ClassificationReport r;
    r.n = m.n;
    r.s = m.s;
    r.P = m.P;
    r.threshold = m.s - 2;
    r.weighted_order = weighted_order_g(m);
    bool ord_ok = !r.weighted_order || *r.weighted_order >= r.threshold;

    // Independent routes: the termwise scan does not reuse weighted_order,
    // and the polyhedron route goes through supports and the hull solver.
    r.termwise_ok = true;
    for (const auto& [e, c] : m.g.terms())
        if (2LL * e[0] + static_cast<long long>(m.s) * e[1] < r.threshold)
            r.termwise_ok = false;

    KForm omega = build_omega(m);
    Polynomial sep = separatrix(m);
    NewtonPolyhedron n_omega = newton_of_1form(omega);
    NewtonPolyhedron n_sep = newton_of_polynomial(sep);
    r.newton_equal = polyhedra_equal(n_omega, n_sep);
    r.omega_support = one_form_support(omega);
    r.omega_vertices = n_omega.vertices();
    r.separatrix_vertices = n_sep.vertices();

    if (ord_ok != r.termwise_ok || ord_ok != r.newton_equal) {
        std::ostringstream os;
        os << "classification criteria disagree: ord>=threshold=" << (ord_ok ? "true" : "false")
           << " termwise=" << (r.termwise_ok ? "true" : "false")
           << " newton_equal=" << (r.newton_equal ? "true" : "false")
           << "; omega vertices:";
        for (const auto& v : r.omega_vertices)
            os << " " << format_exponents(v);
        os << "; separatrix vertices:";
        for (const auto& v : r.separatrix_vertices)
            os << " " << format_exponents(v);
        throw InternalError(os.str());
    }

    if (ord_ok)
        r.verdict = m.n == 2 ? Verdict::generalized_surface : Verdict::necessary_condition_holds;
    else
        r.verdict =
            m.n == 2 ? Verdict::not_generalized_surface : Verdict::not_generalized_hypersurface;
    return r;
}

} // namespace cuspfol
