#ifndef CUSPFOL_TEXTIO_HPP
#define CUSPFOL_TEXTIO_HPP

#include "cuspfol/forms.hpp"
#include "cuspfol/polynomial.hpp"
#include "cuspfol/sigma.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cuspfol {

// Byte offsets into the parsed input, start <= end.
struct SourceSpan {
    size_t start = 0;
    size_t end = 0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, SourceSpan span, std::vector<std::string> expected);

    SourceSpan span;
    std::vector<std::string> expected;
};

// Grammar:
//   poly   := ['-'] term (('+'|'-') term)*
//   term   := coeff ('*' factor)* | factor ('*' factor)*
//   coeff  := nat ['/' nat]
//   factor := var ['^' nat]
// Whitespace-insensitive; '*' is mandatory between coefficient and variable.
Polynomial parse_polynomial(std::string_view text, const VarContext& context);

// Form terms are "(<poly>) d<var>" joined by '+'/'-'; wedge basis elements
// are chained with '^' ("d<var>^d<var>"). All terms must share one degree.
KForm parse_form(std::string_view text, const VarContext& context);

// Canonical output: graded-lexicographic term order, integer coefficients
// without denominator, unit coefficients elided.
std::string print_polynomial(const Polynomial& p);
std::string print_form(const KForm& w);

// Documents: a "vars: ..." header line followed by the expression body.
// Lines starting with '#' are comments.
struct PolynomialDocument {
    VarContext context;
    Polynomial value;
};
struct FormDocument {
    VarContext context;
    KForm value;
};

PolynomialDocument parse_polynomial_document(std::string_view text);
FormDocument parse_form_document(std::string_view text);

// Map documents add a "targets: ..." line and one "name = <poly>" line per
// target variable, each right-hand side written in the source variables.
PolyMap parse_map_document(std::string_view text);

nlohmann::ordered_json report_to_json(const ClassificationReport& report);
ClassificationReport report_from_json(const nlohmann::json& j);

using Model = std::variant<QuasiOrdinaryModel, GeneralCuspidalModel>;

// {"n":2,"s":3,"P":[1,1],"g":"t + t^2*z","signs":"invariant"} builds a
// quasi-ordinary model; replacing "P" with "f" (and optionally "vars")
// builds a general cuspidal one. `default_signs` applies when the
// "signs" key is absent.
Model model_from_json(const nlohmann::json& j, SignConvention default_signs);

} // namespace cuspfol

#endif
