#include "cuspfol/textio.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cuspfol {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int max_exponent = 100000;

bool is_ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Byte cursor with a base offset so that document sections report spans
// relative to the whole document.
class Cursor {
public:
    Cursor(std::string_view text, size_t base) : text_(text), base_(base) {}

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void advance() { ++pos_; }
    size_t offset() const { return base_ + pos_; }

    [[noreturn]] void fail(size_t start, const std::string& message,
                           std::vector<std::string> expected) const
    {
        throw ParseError(message, SourceSpan{start, base_ + std::min(pos_ + 1, text_.size())},
                         std::move(expected));
    }

    [[noreturn]] void fail_here(const std::string& message,
                                std::vector<std::string> expected) const
    {
        fail(offset(), message, std::move(expected));
    }

    std::string_view ident()
    {
        skip_ws();
        size_t start = pos_;
        if (at_end() || !is_ident_start(peek()))
            fail_here("expected an identifier", {"identifier"});
        while (!at_end() && is_ident_char(peek()))
            advance();
        return text_.substr(start, pos_ - start);
    }

    Integer natural()
    {
        skip_ws();
        size_t start = pos_;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail_here("expected a number", {"digit"});
        Integer value = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            value = value * 10 + (peek() - '0');
            advance();
        }
        (void)start;
        return value;
    }

    int exponent()
    {
        skip_ws();
        size_t start = offset();
        Integer v = natural();
        if (v > max_exponent)
            fail(start, "exponent exceeds the supported bound of " +
                            std::to_string(max_exponent),
                 {"smaller exponent"});
        return v.convert_to<int>();
    }

private:
    std::string_view text_;
    size_t base_;
    size_t pos_ = 0;
};

int lookup_variable(Cursor& cur, const VarContext& ctx, std::string_view name, size_t start)
{
    auto idx = ctx.index_of(name);
    if (!idx) {
        std::vector<std::string> expected;
        for (const auto& n : ctx.names())
            expected.push_back(n);
        throw ParseError("unknown variable '" + std::string(name) + "'",
                         SourceSpan{start, start + name.size()}, std::move(expected));
    }
    (void)cur;
    return *idx;
}

// coeff := nat ['/' nat]
Rational parse_coefficient(Cursor& cur)
{
    size_t start = cur.offset();
    Integer num = cur.natural();
    if (cur.peek() == '/') {
        cur.advance();
        size_t dstart = cur.offset();
        Integer den = cur.natural();
        if (den == 0)
            cur.fail(dstart, "zero denominator in coefficient", {"nonzero denominator"});
        (void)start;
        return Rational(num, den);
    }
    return Rational(num);
}

// factor := var ['^' nat]; accumulates into `exps`
void parse_factor(Cursor& cur, const VarContext& ctx, Exponents& exps)
{
    size_t start = cur.offset();
    std::string_view name = cur.ident();
    int idx = lookup_variable(cur, ctx, name, start);
    int e = 1;
    if (cur.peek() == '^') {
        cur.advance();
        e = cur.exponent();
    }
    exps[static_cast<size_t>(idx)] += e;
}

// term := coeff ('*' factor)* | factor ('*' factor)*
void parse_term(Cursor& cur, const VarContext& ctx, int sign, Polynomial& acc)
{
    cur.skip_ws();
    Rational coeff = 1;
    Exponents exps(static_cast<size_t>(ctx.size()), 0);
    bool any = false;

    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
        coeff = parse_coefficient(cur);
        any = true;
    } else if (is_ident_start(cur.peek())) {
        parse_factor(cur, ctx, exps);
        any = true;
    } else {
        cur.fail_here("expected a coefficient or a variable", {"number", "variable"});
    }

    for (;;) {
        cur.skip_ws();
        if (cur.peek() != '*')
            break;
        cur.advance();
        cur.skip_ws();
        parse_factor(cur, ctx, exps);
    }

    // reject implicit multiplication like "2x1" or "x1 x2"
    cur.skip_ws();
    if (!cur.at_end() && (is_ident_start(cur.peek()) ||
                          std::isdigit(static_cast<unsigned char>(cur.peek()))))
        cur.fail_here("missing '*' between factors", {"*", "+", "-", "end of input"});

    (void)any;
    acc.add_term(exps, sign > 0 ? coeff : -coeff);
}

Polynomial parse_polynomial_at(Cursor& cur, const VarContext& ctx)
{
    Polynomial acc(ctx);
    cur.skip_ws();
    int sign = 1;
    if (cur.peek() == '-') {
        sign = -1;
        cur.advance();
    }
    parse_term(cur, ctx, sign, acc);
    for (;;) {
        cur.skip_ws();
        char c = cur.peek();
        if (c != '+' && c != '-')
            break;
        cur.advance();
        parse_term(cur, ctx, c == '+' ? 1 : -1, acc);
    }
    return acc;
}

// basis := 'd' var ('^' 'd' var)*
IndexTuple parse_basis(Cursor& cur, const VarContext& ctx)
{
    IndexTuple tuple;
    for (;;) {
        cur.skip_ws();
        size_t start = cur.offset();
        std::string_view tok = cur.ident();
        if (tok.size() < 2 || tok[0] != 'd')
            throw ParseError("expected a basis covector like d" + ctx.name(0),
                             SourceSpan{start, start + std::max<size_t>(tok.size(), 1)},
                             {"d<variable>"});
        int idx = lookup_variable(cur, ctx, tok.substr(1), start + 1);
        if (std::find(tuple.begin(), tuple.end(), idx) != tuple.end())
            throw ParseError("repeated basis covector '" + std::string(tok) + "'",
                             SourceSpan{start, start + tok.size()}, {"distinct covector"});
        tuple.push_back(idx);
        cur.skip_ws();
        if (cur.peek() != '^')
            break;
        cur.advance();
    }
    return tuple;
}

void expect_end(Cursor& cur)
{
    cur.skip_ws();
    if (!cur.at_end())
        cur.fail_here("unexpected trailing input", {"end of input"});
}

// Document utilities. Header lines and comments are blanked in place so that
// every reported span still points into the original document.
struct DocumentLine {
    size_t begin;
    size_t end; // one past the last char, excluding the newline
};

std::vector<DocumentLine> split_lines(std::string_view text)
{
    std::vector<DocumentLine> lines;
    size_t start = 0;
    for (size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            lines.push_back({start, i});
            start = i + 1;
        }
    }
    return lines;
}

bool is_blank(std::string_view s)
{
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::string_view trimmed(std::string_view s)
{
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

void blank_range(std::string& text, size_t begin, size_t end)
{
    for (size_t i = begin; i < end; ++i)
        text[i] = ' ';
}

VarContext parse_vars_header(std::string_view line, size_t line_begin, const char* keyword)
{
    std::string_view body = trimmed(line);
    std::string prefix = std::string(keyword) + ":";
    if (body.substr(0, prefix.size()) != prefix)
        throw ParseError(std::string("expected a '") + keyword + ":' header line",
                         SourceSpan{line_begin, line_begin + line.size()}, {prefix});
    std::istringstream names_in{std::string(body.substr(prefix.size()))};
    std::vector<std::string> names;
    std::string tok;
    while (names_in >> tok)
        names.push_back(tok);
    if (names.empty())
        throw ParseError(std::string("empty '") + keyword + ":' header",
                         SourceSpan{line_begin, line_begin + line.size()}, {"variable names"});
    try {
        return VarContext(std::move(names));
    } catch (const ValidationError& e) {
        throw ParseError(e.what(), SourceSpan{line_begin, line_begin + line.size()},
                         {"distinct variable names"});
    }
}

// Locates the header line, blanks it and all comment lines, and returns the
// declared context. The mutated text parses as the bare expression while
// offsets stay aligned with the original document.
VarContext strip_header(std::string& text)
{
    auto lines = split_lines(text);
    std::optional<VarContext> ctx;
    for (const auto& line : lines) {
        std::string_view view = std::string_view(text).substr(line.begin, line.end - line.begin);
        if (is_blank(view))
            continue;
        if (trimmed(view).front() == '#') {
            blank_range(text, line.begin, line.end);
            continue;
        }
        if (!ctx) {
            ctx = parse_vars_header(view, line.begin, "vars");
            blank_range(text, line.begin, line.end);
            continue;
        }
    }
    if (!ctx)
        throw ParseError("document is missing a 'vars:' header", SourceSpan{0, text.size()},
                         {"vars: <names>"});
    return *ctx;
}

} // namespace

ParseError::ParseError(const std::string& message, SourceSpan sp, std::vector<std::string> exp)
    : std::runtime_error(message + " at bytes " + std::to_string(sp.start) + ".." +
                         std::to_string(sp.end)),
      span(sp),
      expected(std::move(exp))
{
}

Polynomial parse_polynomial(std::string_view text, const VarContext& context)
{
    Cursor cur(text, 0);
    Polynomial p = parse_polynomial_at(cur, context);
    expect_end(cur);
    return p;
}

KForm parse_form(std::string_view text, const VarContext& context)
{
    Cursor cur(text, 0);
    cur.skip_ws();
    std::optional<KForm> acc;
    int sign = 1;
    if (cur.peek() == '-') {
        sign = -1;
        cur.advance();
    }
    for (;;) {
        cur.skip_ws();
        size_t term_start = cur.offset();
        if (cur.peek() != '(')
            cur.fail_here("expected '(' opening a coefficient", {"("});
        cur.advance();
        Polynomial coeff = parse_polynomial_at(cur, context);
        cur.skip_ws();
        if (cur.peek() != ')')
            cur.fail_here("expected ')' closing the coefficient", {")"});
        cur.advance();
        IndexTuple tuple = parse_basis(cur, context);

        if (!acc)
            acc.emplace(context, static_cast<int>(tuple.size()));
        if (static_cast<int>(tuple.size()) != acc->degree())
            throw ParseError("mixed form degrees in one expression",
                             SourceSpan{term_start, cur.offset()}, {"uniform degree"});
        acc->add_term(std::move(tuple), sign > 0 ? coeff : -coeff);

        cur.skip_ws();
        char c = cur.peek();
        if (c != '+' && c != '-')
            break;
        sign = c == '+' ? 1 : -1;
        cur.advance();
    }
    expect_end(cur);
    return *acc;
}

std::string print_polynomial(const Polynomial& p)
{
    if (p.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        Rational abs = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0)
                os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        std::vector<std::string> factors;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0)
                continue;
            std::string f = p.context().name(static_cast<int>(i));
            if (e[i] > 1)
                f += "^" + std::to_string(e[i]);
            factors.push_back(std::move(f));
        }
        if (factors.empty()) {
            os << rational_to_string(abs);
        } else {
            if (abs != 1)
                os << rational_to_string(abs) << "*";
            for (size_t i = 0; i < factors.size(); ++i)
                os << (i ? "*" : "") << factors[i];
        }
    }
    return os.str();
}

std::string print_form(const KForm& w)
{
    if (w.degree() == 0) {
        auto it = w.coefficients().find(IndexTuple{});
        return print_polynomial(it == w.coefficients().end() ? Polynomial(w.context())
                                                             : it->second);
    }
    if (w.is_zero()) {
        std::ostringstream os;
        os << "(0)";
        for (int k = 0; k < w.degree(); ++k)
            os << (k ? "^d" : " d") << w.context().name(k);
        return os.str();
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : w.coefficients()) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << print_polynomial(c) << ")";
        for (size_t i = 0; i < t.size(); ++i)
            os << (i ? "^d" : " d") << w.context().name(t[i]);
    }
    return os.str();
}

PolynomialDocument parse_polynomial_document(std::string_view text)
{
    std::string body(text);
    VarContext ctx = strip_header(body);
    return {ctx, parse_polynomial(body, ctx)};
}

FormDocument parse_form_document(std::string_view text)
{
    std::string body(text);
    VarContext ctx = strip_header(body);
    return {ctx, parse_form(body, ctx)};
}

PolyMap parse_map_document(std::string_view text)
{
    auto lines = split_lines(text);
    std::optional<VarContext> source, target;
    std::vector<std::pair<std::string, Polynomial>> images;

    for (const auto& line : lines) {
        std::string_view view = std::string_view(text).substr(line.begin, line.end - line.begin);
        if (is_blank(view) || trimmed(view).front() == '#')
            continue;
        if (!source) {
            source = parse_vars_header(view, line.begin, "vars");
            continue;
        }
        if (!target) {
            target = parse_vars_header(view, line.begin, "targets");
            continue;
        }
        size_t eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("expected an image line 'name = <polynomial>'",
                             SourceSpan{line.begin, line.end}, {"name = expression"});
        std::string name{trimmed(view.substr(0, eq))};
        Cursor cur(view.substr(eq + 1), line.begin + eq + 1);
        Polynomial image = parse_polynomial_at(cur, *source);
        expect_end(cur);
        images.emplace_back(std::move(name), std::move(image));
    }
    if (!source || !target)
        throw ParseError("map document needs 'vars:' and 'targets:' headers",
                         SourceSpan{0, text.size()}, {"vars:", "targets:"});

    std::vector<Polynomial> ordered(static_cast<size_t>(target->size()), Polynomial(*source));
    std::vector<bool> assigned(static_cast<size_t>(target->size()), false);
    for (auto& [name, image] : images) {
        auto idx = target->index_of(name);
        if (!idx)
            throw ParseError("image assigned to undeclared target '" + name + "'",
                             SourceSpan{0, text.size()}, target->names());
        if (assigned[static_cast<size_t>(*idx)])
            throw ParseError("duplicate image for target '" + name + "'",
                             SourceSpan{0, text.size()}, {"one image per target"});
        assigned[static_cast<size_t>(*idx)] = true;
        ordered[static_cast<size_t>(*idx)] = std::move(image);
    }
    for (size_t i = 0; i < assigned.size(); ++i)
        if (!assigned[i])
            throw ParseError("missing image for target '" + target->name(static_cast<int>(i)) +
                                 "'",
                             SourceSpan{0, text.size()}, {"image line"});
    return PolyMap(*source, *target, std::move(ordered));
}

namespace {

ordered_json exponents_to_json(const std::vector<Exponents>& points)
{
    ordered_json arr = ordered_json::array();
    for (const auto& p : points)
        arr.push_back(p);
    return arr;
}

std::vector<Exponents> exponents_from_json(const json& arr)
{
    std::vector<Exponents> out;
    for (const auto& p : arr)
        out.push_back(p.get<Exponents>());
    return out;
}

} // namespace

ordered_json report_to_json(const ClassificationReport& r)
{
    ordered_json j;
    j["n"] = r.n;
    j["s"] = r.s;
    j["P"] = r.P;
    if (r.weighted_order)
        j["weighted_order"] = *r.weighted_order;
    else
        j["weighted_order"] = "inf";
    j["threshold"] = r.threshold;
    j["newton_equal"] = r.newton_equal;
    j["termwise_ok"] = r.termwise_ok;
    j["verdict"] = to_string(r.verdict);
    j["omega_support"] = exponents_to_json(r.omega_support);
    j["omega_vertices"] = exponents_to_json(r.omega_vertices);
    j["separatrix_vertices"] = exponents_to_json(r.separatrix_vertices);
    return j;
}

ClassificationReport report_from_json(const json& j)
{
    ClassificationReport r;
    r.n = j.at("n").get<int>();
    r.s = j.at("s").get<int>();
    r.P = j.at("P").get<std::vector<int>>();
    const auto& wo = j.at("weighted_order");
    if (wo.is_string()) {
        if (wo.get<std::string>() != "inf")
            throw ValidationError("weighted_order must be a number or \"inf\"");
        r.weighted_order = std::nullopt;
    } else {
        r.weighted_order = wo.get<long long>();
    }
    r.threshold = j.at("threshold").get<long long>();
    r.newton_equal = j.at("newton_equal").get<bool>();
    r.termwise_ok = j.at("termwise_ok").get<bool>();
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.omega_support = exponents_from_json(j.at("omega_support"));
    r.omega_vertices = exponents_from_json(j.at("omega_vertices"));
    r.separatrix_vertices = exponents_from_json(j.at("separatrix_vertices"));
    return r;
}

Model model_from_json(const json& j, SignConvention default_signs)
{
    if (!j.is_object())
        throw ValidationError("model must be a JSON object");
    SignConvention signs = default_signs;
    if (j.contains("signs"))
        signs = sign_convention_from_string(j.at("signs").get<std::string>());
    Polynomial g = parse_polynomial(j.value("g", "0"), g_context());

    bool has_p = j.contains("P");
    bool has_f = j.contains("f");
    if (has_p == has_f)
        throw ValidationError("model needs exactly one of \"P\" (quasi-ordinary) or \"f\"");

    int s = j.at("s").get<int>();
    if (has_p) {
        int n = j.at("n").get<int>();
        auto P = j.at("P").get<std::vector<int>>();
        return QuasiOrdinaryModel(n, s, std::move(P), std::move(g), signs);
    }

    int n = j.at("n").get<int>();
    if (n < 1)
        throw ValidationError("n must be >= 1");
    std::vector<std::string> names;
    if (j.contains("vars"))
        names = j.at("vars").get<std::vector<std::string>>();
    else
        for (int i = 1; i <= n; ++i)
            names.push_back("x" + std::to_string(i));
    if (static_cast<int>(names.size()) != n)
        throw ValidationError("\"vars\" must list exactly n names");
    VarContext xctx(std::move(names));
    Polynomial f = parse_polynomial(j.at("f").get<std::string>(), xctx);
    return GeneralCuspidalModel(s, std::move(f), std::move(g), signs);
}

} // namespace cuspfol
