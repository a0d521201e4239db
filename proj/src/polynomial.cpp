#include "momentdet/polynomial.hpp"

#include <cctype>
#include <optional>

namespace momentdet {

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    int dim;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    std::optional<char> peek() {
        skip_ws();
        if (pos >= s.size()) return std::nullopt;
        return s[pos];
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw SchemaError("polynomial parse error at position " + std::to_string(pos) +
                          ": " + what);
    }

    long long read_uint() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            fail("expected integer");
        long long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > (1LL << 60)) fail("integer literal too large");
            ++pos;
        }
        return v;
    }

    Polynomial<Rational> parse_expr() {
        Polynomial<Rational> acc = parse_term();
        while (true) {
            if (consume('+'))
                acc += parse_term();
            else if (consume('-'))
                acc -= parse_term();
            else
                return acc;
        }
    }

    Polynomial<Rational> parse_term() {
        Polynomial<Rational> acc = parse_factor();
        while (consume('*')) acc *= parse_factor();
        return acc;
    }

    Polynomial<Rational> parse_factor() {
        Polynomial<Rational> base = parse_base();
        if (consume('^')) {
            long long e = read_uint();
            base = base.pow(static_cast<int>(e));
        }
        return base;
    }

    Polynomial<Rational> parse_base() {
        auto c = peek();
        if (!c) fail("unexpected end of input");
        if (*c == '(') {
            ++pos;
            auto inner = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (*c == '-') {
            ++pos;
            return Rational(-1) * parse_factor();
        }
        if (*c == 'x') {
            ++pos;
            long long k = read_uint();
            if (k < 1 || k > dim)
                fail("variable x" + std::to_string(k) + " out of range for dimension " +
                     std::to_string(dim));
            return Polynomial<Rational>::variable(dim, static_cast<int>(k - 1));
        }
        if (std::isdigit(static_cast<unsigned char>(*c))) {
            long long num = read_uint();
            Rational q(num);
            skip_ws();
            if (pos < s.size() && s[pos] == '/') {
                ++pos;
                long long den = read_uint();
                if (den == 0) fail("zero denominator");
                q /= den;
            }
            return Polynomial<Rational>::constant(dim, q);
        }
        fail("unexpected character '" + std::string(1, *c) + "'");
    }
};

} // namespace

Polynomial<Rational> parse_polynomial(const std::string& text, int dimension) {
    if (dimension < 1) throw SchemaError("polynomial dimension must be >= 1");
    Parser p{text, 0, dimension};
    auto poly = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters");
    return poly;
}

} // namespace momentdet
