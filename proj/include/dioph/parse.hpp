#ifndef DIOPH_PARSE_HPP
#define DIOPH_PARSE_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <dioph/errors.hpp>
#include <dioph/integer.hpp>
#include <dioph/polynomial.hpp>

namespace dioph
{

namespace detail
{

struct Token {
    enum class Type { number, variable, plus, minus, star, caret, lparen, rparen, equals, end };
    Type type;
    std::string text;
    std::size_t pos;
};

// Single-letter equation variables, in index order.
inline constexpr std::string_view letter_variables = "xyzts";

inline std::vector<Token> tokenize(std::string_view s, char indexed_prefix, bool letters)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                ++i;
            }
            out.push_back({Token::Type::number, std::string(s.substr(start, i - start)), start});
            continue;
        }
        if (c == indexed_prefix && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
            ++i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                ++i;
            }
            std::string digits(s.substr(start + 1, i - start - 1));
            if (digits.size() > 1 && digits[0] == '0') {
                throw ParseError(ParseError::Kind::syntax, start, "leading zero in variable index");
            }
            if (digits == "0") {
                throw ParseError(ParseError::Kind::syntax, start, "variable indices start at 1");
            }
            out.push_back({Token::Type::variable, std::string(s.substr(start, i - start)), start});
            continue;
        }
        if (letters && letter_variables.find(c) != std::string_view::npos) {
            out.push_back({Token::Type::variable, std::string(1, c), start});
            ++i;
            continue;
        }
        Token::Type t;
        switch (c) {
        case '+':
            t = Token::Type::plus;
            break;
        case '-':
            t = Token::Type::minus;
            break;
        case '*':
            t = Token::Type::star;
            break;
        case '^':
            t = Token::Type::caret;
            break;
        case '(':
            t = Token::Type::lparen;
            break;
        case ')':
            t = Token::Type::rparen;
            break;
        case '=':
            t = Token::Type::equals;
            break;
        default:
            throw ParseError(ParseError::Kind::syntax, start, std::string("unexpected character '") + c + "'");
        }
        out.push_back({t, std::string(1, c), start});
        ++i;
    }
    out.push_back({Token::Type::end, "", s.size()});
    return out;
}

inline constexpr unsigned max_parsed_exponent = 4096;

class ExpressionParser
{
public:
    ExpressionParser(const std::vector<Token> &tokens, const std::map<std::string, std::size_t> &index, std::size_t nvars)
        : tokens_(tokens), index_(index), nvars_(nvars)
    {
    }

    // Parses `expr ['=' expr]` and returns lhs - rhs.
    Polynomial parse_equation(bool allow_equals)
    {
        Polynomial lhs = expression();
        if (peek().type == Token::Type::equals) {
            if (!allow_equals) {
                fail("'=' not allowed here");
            }
            ++at_;
            Polynomial rhs = expression();
            lhs = lhs - rhs;
        }
        if (peek().type != Token::Type::end) {
            fail("unexpected '" + peek().text + "'");
        }
        return lhs;
    }

private:
    const Token &peek() const
    {
        return tokens_[at_];
    }

    [[noreturn]] void fail(const std::string &msg) const
    {
        throw ParseError(ParseError::Kind::syntax, peek().pos,
                         msg + " at position " + std::to_string(peek().pos));
    }

    Polynomial expression()
    {
        Polynomial acc(nvars_);
        bool negate = false;
        if (peek().type == Token::Type::plus || peek().type == Token::Type::minus) {
            negate = peek().type == Token::Type::minus;
            ++at_;
        }
        Polynomial t = term();
        acc = negate ? acc - t : acc + t;
        while (peek().type == Token::Type::plus || peek().type == Token::Type::minus) {
            negate = peek().type == Token::Type::minus;
            ++at_;
            t = term();
            acc = negate ? acc - t : acc + t;
        }
        return acc;
    }

    Polynomial term()
    {
        Polynomial acc = power();
        for (;;) {
            const auto type = peek().type;
            if (type == Token::Type::star) {
                ++at_;
                acc = acc * power();
            } else if (type == Token::Type::variable || type == Token::Type::lparen) {
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    Polynomial power()
    {
        Polynomial base = atom();
        if (peek().type == Token::Type::caret) {
            ++at_;
            if (peek().type != Token::Type::number) {
                fail("expected exponent");
            }
            const std::string &digits = peek().text;
            if (digits.size() > 4 || std::stoul(digits) > max_parsed_exponent) {
                fail("exponent too large");
            }
            const unsigned e = static_cast<unsigned>(std::stoul(digits));
            ++at_;
            return base.pow(e);
        }
        return base;
    }

    Polynomial atom()
    {
        const Token &t = peek();
        switch (t.type) {
        case Token::Type::number:
            ++at_;
            return Polynomial::constant(Integer(t.text, 10), nvars_);
        case Token::Type::variable:
            ++at_;
            return Polynomial::variable(index_.at(t.text), nvars_);
        case Token::Type::lparen: {
            ++at_;
            Polynomial inner = expression();
            if (peek().type != Token::Type::rparen) {
                fail("expected ')'");
            }
            ++at_;
            return inner;
        }
        default:
            fail(t.type == Token::Type::end ? "unexpected end of input" : "unexpected '" + t.text + "'");
        }
    }

    const std::vector<Token> &tokens_;
    const std::map<std::string, std::size_t> &index_;
    std::size_t nvars_;
    std::size_t at_ = 0;
};

// Orders equation variable names: x, y, z, t, s, then x1, x2, ... numerically.
inline bool variable_name_before(const std::string &a, const std::string &b)
{
    auto rank = [](const std::string &n) -> std::pair<int, unsigned long> {
        if (n.size() == 1) {
            return {0, static_cast<unsigned long>(letter_variables.find(n[0]))};
        }
        return {1, std::stoul(n.substr(1))};
    };
    return rank(a) < rank(b);
}

} // namespace detail

// Parses an equation such as "y^2+z^2 = x^3+1" into P with P = 0. Variables
// are x, y, z, t, s or x1..xn; implicit multiplication and parentheses are
// accepted. The result is reduced and contains only occurring variables.
inline Polynomial parse_equation(std::string_view text)
{
    using detail::Token;
    const auto tokens = detail::tokenize(text, 'x', true);
    std::vector<std::string> names;
    for (const auto &t : tokens) {
        if (t.type == Token::Type::variable && std::find(names.begin(), names.end(), t.text) == names.end()) {
            names.push_back(t.text);
        }
    }
    std::sort(names.begin(), names.end(), detail::variable_name_before);
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < names.size(); ++i) {
        index[names[i]] = i;
    }
    detail::ExpressionParser parser(tokens, index, names.size());
    Polynomial p = parser.parse_equation(true).compacted();
    if (p.is_zero()) {
        throw ParseError(ParseError::Kind::degenerate, 0, "all monomials cancel (0 = 0)");
    }
    if (!p.has_nonconstant()) {
        throw ParseError(ParseError::Kind::constant_only, 0, "equation has no variables");
    }
    return p;
}

// Parses a polynomial in the parameters u1..u{nparams}; constants and the
// zero polynomial are allowed. Parameter indices are kept as written.
inline Polynomial parse_polynomial(std::string_view text, std::size_t nparams)
{
    using detail::Token;
    const auto tokens = detail::tokenize(text, 'u', false);
    std::map<std::string, std::size_t> index;
    for (const auto &t : tokens) {
        if (t.type == Token::Type::variable) {
            const unsigned long k = std::stoul(t.text.substr(1));
            if (k > nparams) {
                throw ParseError(ParseError::Kind::syntax, t.pos,
                                 "parameter " + t.text + " exceeds parameter count " + std::to_string(nparams));
            }
            index[t.text] = k - 1;
        }
    }
    detail::ExpressionParser parser(tokens, index, nparams);
    return parser.parse_equation(false);
}

enum class FormatStyle {
    display,   // x, y, z, t, s when at most five variables, else x1..xn
    canonical, // always x1..xn
};

namespace detail
{

inline std::string variable_name(std::size_t index, std::size_t nvars, FormatStyle style)
{
    if (style == FormatStyle::display && nvars <= letter_variables.size()) {
        return std::string(1, letter_variables[index]);
    }
    return "x" + std::to_string(index + 1);
}

inline std::string format_terms(const Polynomial &p, const std::vector<std::string> &names)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    for (const auto &m : p.monomials()) {
        const bool negative = m.coeff < 0;
        if (first) {
            if (negative) {
                out += '-';
            }
        } else {
            out += negative ? '-' : '+';
        }
        first = false;
        Integer mag = abs(m.coeff);
        std::string factors;
        for (std::size_t v = 0; v < m.exponents.size(); ++v) {
            if (m.exponents[v] == 0) {
                continue;
            }
            if (!factors.empty()) {
                factors += '*';
            }
            factors += names[v];
            if (m.exponents[v] > 1) {
                factors += '^' + std::to_string(m.exponents[v]);
            }
        }
        if (factors.empty()) {
            out += to_string(mag);
        } else if (mag == 1) {
            out += factors;
        } else {
            out += to_string(mag) + '*' + factors;
        }
    }
    return out;
}

} // namespace detail

// Renders P as "...=0". Canonical style is byte-deterministic for a given P.
inline std::string format_equation(const Polynomial &p, FormatStyle style = FormatStyle::display)
{
    std::vector<std::string> names;
    for (std::size_t v = 0; v < p.nvars(); ++v) {
        names.push_back(detail::variable_name(v, p.nvars(), style));
    }
    return detail::format_terms(p, names) + "=0";
}

// Renders a polynomial in parameters u1..uk (no "=0").
inline std::string format_parametric(const Polynomial &p)
{
    std::vector<std::string> names;
    for (std::size_t v = 0; v < p.nvars(); ++v) {
        names.push_back("u" + std::to_string(v + 1));
    }
    return detail::format_terms(p, names);
}

} // namespace dioph

#endif
