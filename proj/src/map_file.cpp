#include "jetcalc/map_file.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "jetcalc/parser.hpp"

namespace jetcalc::cli {
namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Parses `text`, shifting error positions to where it sits in the file.
RationalExpr parse_at(std::string_view text, int line, int column_offset) {
    try {
        return parse_expression(text);
    } catch (const ParseError& e) {
        std::string msg = e.what();
        msg = msg.substr(0, msg.rfind(" at line "));
        throw ParseError(msg, line, column_offset + e.column());
    }
}

bool only_uses(const RationalExpr& e, std::initializer_list<std::string_view> names) {
    for (auto s : e.variables()) {
        bool ok = false;
        for (auto n : names) ok = ok || s.name() == n;
        if (!ok) return false;
    }
    return true;
}

Polynomial var(std::string_view n) { return Polynomial::variable(variable(n)); }

// a u + c with constant a != 0, where u is the only variable.
std::optional<std::pair<Rational, Rational>> affine_in(const Polynomial& p, SymbolId u) {
    if (p.degree(u) != 1) return std::nullopt;
    for (auto s : p.variables())
        if (s != u) return std::nullopt;
    auto c = p.as_univariate(u);
    return std::make_pair(c[1].constant_value(), c[0].constant_value());
}

} // namespace

ConcreteMap invert_forward(const Polynomial& F, const Polynomial& G) {
    const SymbolId x = variable("x"), y = variable("y");
    const Polynomial xt = var("xt"), yt = var("yt");

    if (F.total_degree() <= 1 && G.total_degree() <= 1) {
        auto lin = [&](const Polynomial& p, SymbolId s) {
            auto c = p.as_univariate(s);
            return c.size() > 1 ? c[1].constant_value() : Rational(0);
        };
        const Rational a = lin(F, x), b = lin(F, y), d = lin(G, x), e = lin(G, y);
        const Rational c = F.evaluate({{x, 0}, {y, 0}}), f = G.evaluate({{x, 0}, {y, 0}});
        const Rational det = a * e - b * d;
        if (sgn(det) == 0) throw DomainError("forward affine map is singular");
        ConcreteMap m;
        m.chi = ((xt - Polynomial(c)).scaled(e) - (yt - Polynomial(f)).scaled(b)).scaled(1 / det);
        m.psi = ((yt - Polynomial(f)).scaled(a) - (xt - Polynomial(c)).scaled(d)).scaled(1 / det);
        return m;
    }

    // One component affine in a single variable u, the other e v + h(u).
    struct Shape {
        const Polynomial* first;
        const Polynomial* second;
        const Polynomial* first_target;
        const Polynomial* second_target;
    };
    const Shape shapes[] = {{&F, &G, &xt, &yt}, {&G, &F, &yt, &xt}};
    for (const auto& sh : shapes) {
        for (auto [u, v] : {std::pair{x, y}, std::pair{y, x}}) {
            auto aff = affine_in(*sh.first, u);
            if (!aff) continue;
            if (sh.second->degree(v) != 1) continue;
            auto parts = sh.second->as_univariate(v);
            if (!parts[1].is_constant()) continue;
            const Rational e = parts[1].constant_value();
            const Polynomial& h = parts[0];
            bool h_ok = true;
            for (auto s : h.variables()) h_ok = h_ok && s == u;
            if (!h_ok) continue;
            // u = (t1 - c) / a,  v = (t2 - h(u)) / e
            Polynomial u_expr = (*sh.first_target - Polynomial(aff->second)).scaled(1 / aff->first);
            Polynomial h_of_t = substitute(h, Bindings{{u, RationalExpr(u_expr)}}).num();
            Polynomial v_expr = (*sh.second_target - h_of_t).scaled(1 / e);
            ConcreteMap m;
            m.chi = u == x ? u_expr : v_expr;
            m.psi = u == x ? v_expr : u_expr;
            return m;
        }
    }
    throw DomainError("forward map is neither affine nor triangular; enter it in inverse form instead");
}

ConcreteMap parse_map_text(std::string_view text, bool forward) {
    const std::string_view first_name = forward ? "xt" : "x", second_name = forward ? "yt" : "y";
    std::optional<RationalExpr> first, second;
    std::optional<Point> base;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected '<name> = <expression>'", line_no, 1);
        const std::string_view lhs = trim(line.substr(0, eq));
        const std::string_view rhs_raw = line.substr(eq + 1);
        const int rhs_col = static_cast<int>(eq + 1);

        if (lhs == "base") {
            const std::string_view r = trim(rhs_raw);
            const auto comma = r.find(',');
            if (r.size() < 2 || r.front() != '(' || r.back() != ')' || comma == std::string_view::npos)
                throw ParseError("expected 'base = (<rational>, <rational>)'", line_no, rhs_col + 1);
            const int off = rhs_col + static_cast<int>(rhs_raw.find('('));
            RationalExpr a = parse_at(r.substr(1, comma - 1), line_no, off + 1);
            RationalExpr b = parse_at(r.substr(comma + 1, r.size() - comma - 2), line_no, off + static_cast<int>(comma) + 1);
            if (!a.is_constant() || !b.is_constant())
                throw ParseError("basepoint coordinates must be rational numbers", line_no, rhs_col + 1);
            base = Point{a.constant_value(), b.constant_value()};
            continue;
        }
        if (lhs != first_name && lhs != second_name)
            throw ParseError("unknown assignment target '" + std::string(lhs) + "'", line_no, 1);
        auto& slot = lhs == first_name ? first : second;
        if (slot) throw ParseError("'" + std::string(lhs) + "' is assigned twice", line_no, 1);
        RationalExpr e = parse_at(rhs_raw, line_no, rhs_col);
        if (!e.is_polynomial()) throw ParseError("map components must be polynomials", line_no, rhs_col + 1);
        const bool vars_ok = forward ? only_uses(e, {"x", "y"}) : only_uses(e, {"xt", "yt"});
        if (!vars_ok)
            throw ParseError(std::string("map components may only use ") + (forward ? "x and y" : "xt and yt"), line_no,
                             rhs_col + 1);
        slot = e;
    }
    if (!first || !second)
        throw ParseError("map needs both '" + std::string(first_name) + "' and '" + std::string(second_name) + "'",
                         line_no, 1);

    ConcreteMap m;
    if (forward) {
        try {
            m = invert_forward(first->num(), second->num());
        } catch (const DomainError& e) {
            throw ParseError(e.what(), line_no, 1);
        }
    } else {
        m.chi = first->num();
        m.psi = second->num();
    }
    m.base = base;
    return m;
}

invariance::MapSpec resolve_map(const std::string& spec, bool forward) {
    if (spec == "general") return invariance::GeneralMap{};
    if (spec == "identity") return ConcreteMap::identity();
    if (spec == "swap") return ConcreteMap::swap();
    std::ifstream f(spec);
    if (!f) throw ParseError("cannot open map file '" + spec + "'", 0, 0);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_map_text(ss.str(), forward);
}

} // namespace jetcalc::cli
