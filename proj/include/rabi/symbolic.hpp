// symbolic.hpp — parser and normal-ordering rewriter for the boson/spin-1/2
// operator algebra
//
// Canonical form: a finite sum of terms coeff * (ad)^m (a)^n * spin with the
// boson part normal-ordered and the spin part reduced to {I, sp, sm, sz}.
// Products rewrite through the a^n (ad)^m crossing identity and the spin
// multiplication table; every boson swap strictly reduces inversions and
// spin words strictly shorten, so the rewriting terminates and the form is
// canonical. alpha and alphabar are expanded eagerly into omega, omega0, g
// so identities are stated in the base symbols only.

#pragma once

#include "rabi/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rabi::sym {

// ------------------------------ canonical form ------------------------------

enum class SpinBasis : int { I = 0, Plus = 1, Minus = 2, Z = 3 };

inline SpinBasis adjoint_spin(SpinBasis s) {
    switch (s) {
        case SpinBasis::Plus: return SpinBasis::Minus;
        case SpinBasis::Minus: return SpinBasis::Plus;
        default: return s;
    }
}

struct TermKey {
    int m{0};  // power of ad
    int n{0};  // power of a
    SpinBasis spin{SpinBasis::I};

    auto operator<=>(const TermKey&) const = default;
};

namespace detail {

struct SpinProd {
    Rational factor;
    SpinBasis spin;
};

// Products of the 4-element spin basis; every entry is a scalar multiple of
// a basis element except sp*sm and sm*sp which split into two.
inline std::vector<SpinProd> spin_product(SpinBasis x, SpinBasis y) {
    using S = SpinBasis;
    if (x == S::I) return {{1, y}};
    if (y == S::I) return {{1, x}};
    if (x == S::Plus && y == S::Plus) return {};
    if (x == S::Minus && y == S::Minus) return {};
    if (x == S::Plus && y == S::Minus) return {{Rational(1, 2), S::I}, {1, S::Z}};
    if (x == S::Minus && y == S::Plus) return {{Rational(1, 2), S::I}, {-1, S::Z}};
    if (x == S::Plus && y == S::Z) return {{Rational(-1, 2), S::Plus}};
    if (x == S::Z && y == S::Plus) return {{Rational(1, 2), S::Plus}};
    if (x == S::Minus && y == S::Z) return {{Rational(1, 2), S::Minus}};
    if (x == S::Z && y == S::Minus) return {{Rational(-1, 2), S::Minus}};
    return {{Rational(1, 4), S::I}};  // sz * sz
}

}  // namespace detail

class CanonicalExpr {
  public:
    CanonicalExpr() = default;

    static CanonicalExpr scalar(const Coefficient& c) {
        CanonicalExpr e;
        e.add_term(TermKey{}, c);
        return e;
    }
    static CanonicalExpr monomial(const TermKey& k, const Coefficient& c) {
        CanonicalExpr e;
        e.add_term(k, c);
        return e;
    }

    bool empty() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<TermKey, Coefficient>& terms() const { return terms_; }
    bool operator==(const CanonicalExpr&) const = default;

    void add_term(const TermKey& k, const Coefficient& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    CanonicalExpr& operator+=(const CanonicalExpr& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    CanonicalExpr& operator-=(const CanonicalExpr& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    friend CanonicalExpr operator+(CanonicalExpr a, const CanonicalExpr& b) { return a += b; }
    friend CanonicalExpr operator-(CanonicalExpr a, const CanonicalExpr& b) { return a -= b; }
    friend CanonicalExpr operator-(const CanonicalExpr& a) {
        CanonicalExpr out;
        for (const auto& [k, c] : a.terms_) out.terms_.emplace(k, -c);
        return out;
    }

    // Term-pair product: spin parts multiply through the table; the boson
    // crossing a^n (ad)^m = sum_k k! C(n,k) C(m,k) (ad)^(m-k) a^(n-k)
    // restores normal order in one step.
    friend CanonicalExpr operator*(const CanonicalExpr& a, const CanonicalExpr& b) {
        CanonicalExpr out;
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                const Coefficient c = ca * cb;
                const int kmax = std::min(ka.n, kb.m);
                Rational weight = 1;  // k! C(n,k) C(m,k), updated iteratively
                for (int k = 0; k <= kmax; ++k) {
                    if (k > 0)
                        weight *= Rational(BigInt(ka.n - k + 1) * BigInt(kb.m - k + 1), BigInt(k));
                    const Coefficient wc = c * Coefficient::from_rational(weight);
                    for (const auto& sp : detail::spin_product(ka.spin, kb.spin)) {
                        out.add_term(TermKey{ka.m + kb.m - k, ka.n - k + kb.n, sp.spin},
                                     wc * Coefficient::from_rational(sp.factor));
                    }
                }
            }
        }
        return out;
    }
    CanonicalExpr& operator*=(const CanonicalExpr& o) { return *this = *this * o; }

    CanonicalExpr pow(int k) const {
        if (k < 0) {
            if (term_count() == 1 && terms_.begin()->first == TermKey{})
                return scalar(terms_.begin()->second.pow(k));
            throw std::domain_error("pow: negative power requires an invertible scalar");
        }
        CanonicalExpr out = scalar(Coefficient::one());
        for (int i = 0; i < k; ++i) out *= *this;
        return out;
    }

    // Formal adjoint: a <-> ad, sp <-> sm, conjugated coefficients. The spin
    // factor commutes with the boson word, so no reordering is needed.
    CanonicalExpr adjoint() const {
        CanonicalExpr out;
        for (const auto& [k, c] : terms_)
            out.add_term(TermKey{k.n, k.m, adjoint_spin(k.spin)}, c.conj());
        return out;
    }

    std::string str() const;

  private:
    std::map<TermKey, Coefficient> terms_;
};

// ------------------------------ expression tree -----------------------------

enum class AtomKind { a, ad, sp, sm, sz, omega, omega0, g, alpha, alphabar, i };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

enum class NodeKind { atom, number, add, sub, neg, mul, pow, comm };

struct ExprNode {
    NodeKind kind;
    AtomKind atom_kind{};
    Rational number{};
    ExprPtr lhs;
    ExprPtr rhs;
    int exponent{0};
};

struct Expr {
    ExprPtr node;
};

inline Expr atom(AtomKind k) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::atom;
    n->atom_kind = k;
    return Expr{n};
}
inline Expr number(const Rational& q) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::number;
    n->number = q;
    return Expr{n};
}
inline Expr number(long v) { return number(Rational(v)); }

namespace detail {
inline Expr binary(NodeKind kind, Expr a, Expr b) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->lhs = std::move(a.node);
    n->rhs = std::move(b.node);
    return Expr{n};
}
}  // namespace detail

inline Expr operator+(Expr a, Expr b) { return detail::binary(NodeKind::add, std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return detail::binary(NodeKind::sub, std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return detail::binary(NodeKind::mul, std::move(a), std::move(b)); }
inline Expr operator-(Expr a) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::neg;
    n->lhs = std::move(a.node);
    return Expr{n};
}
inline Expr pow(Expr base, int exponent) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::pow;
    n->lhs = std::move(base.node);
    n->exponent = exponent;
    return Expr{n};
}
inline Expr comm(Expr a, Expr b) { return detail::binary(NodeKind::comm, std::move(a), std::move(b)); }

// ------------------------------ normal ordering -----------------------------

namespace detail {

inline Coefficient atom_scalar(AtomKind k) {
    switch (k) {
        case AtomKind::omega: return Coefficient::omega();
        case AtomKind::omega0: return Coefficient::omega0();
        case AtomKind::g: return Coefficient::g();
        case AtomKind::alpha: return Coefficient::alpha();
        case AtomKind::alphabar: return Coefficient::alpha_bar();
        case AtomKind::i: return Coefficient::imaginary();
        default: throw std::logic_error("atom_scalar: operator atom");
    }
}

inline CanonicalExpr canon_atom(AtomKind k) {
    switch (k) {
        case AtomKind::a:
            return CanonicalExpr::monomial({0, 1, SpinBasis::I}, Coefficient::one());
        case AtomKind::ad:
            return CanonicalExpr::monomial({1, 0, SpinBasis::I}, Coefficient::one());
        case AtomKind::sp:
            return CanonicalExpr::monomial({0, 0, SpinBasis::Plus}, Coefficient::one());
        case AtomKind::sm:
            return CanonicalExpr::monomial({0, 0, SpinBasis::Minus}, Coefficient::one());
        case AtomKind::sz:
            return CanonicalExpr::monomial({0, 0, SpinBasis::Z}, Coefficient::one());
        default:
            return CanonicalExpr::scalar(atom_scalar(k));
    }
}

inline CanonicalExpr canon_node(const ExprPtr& n) {
    switch (n->kind) {
        case NodeKind::atom: return canon_atom(n->atom_kind);
        case NodeKind::number: return CanonicalExpr::scalar(Coefficient::from_rational(n->number));
        case NodeKind::add: return canon_node(n->lhs) + canon_node(n->rhs);
        case NodeKind::sub: return canon_node(n->lhs) - canon_node(n->rhs);
        case NodeKind::neg: return -canon_node(n->lhs);
        case NodeKind::mul: return canon_node(n->lhs) * canon_node(n->rhs);
        case NodeKind::pow: return canon_node(n->lhs).pow(n->exponent);
        case NodeKind::comm: {
            const CanonicalExpr l = canon_node(n->lhs);
            const CanonicalExpr r = canon_node(n->rhs);
            return l * r - r * l;
        }
    }
    throw std::logic_error("canon_node: unreachable");
}

}  // namespace detail

inline CanonicalExpr normal_order(const Expr& e) { return detail::canon_node(e.node); }

inline bool is_zero(const Expr& e) { return normal_order(e).empty(); }

inline bool equal(const Expr& a, const Expr& b) {
    return (normal_order(a) - normal_order(b)).empty();
}

inline CanonicalExpr commutator_sym(const Expr& a, const Expr& b) {
    const CanonicalExpr l = normal_order(a);
    const CanonicalExpr r = normal_order(b);
    return l * r - r * l;
}

// ------------------------------ named builders ------------------------------

inline Expr named_N() { return atom(AtomKind::ad) * atom(AtomKind::a) +
                               atom(AtomKind::sp) * atom(AtomKind::sm); }
inline Expr named_Nbar() { return atom(AtomKind::a) * atom(AtomKind::ad) +
                                  atom(AtomKind::sm) * atom(AtomKind::sp); }
inline Expr named_A() {
    return atom(AtomKind::alpha) * atom(AtomKind::sz) +
           atom(AtomKind::a) * atom(AtomKind::sp) +
           atom(AtomKind::ad) * atom(AtomKind::sm);
}
inline Expr named_Abar() {
    return atom(AtomKind::alphabar) * atom(AtomKind::sz) +
           atom(AtomKind::a) * atom(AtomKind::sm) +
           atom(AtomKind::ad) * atom(AtomKind::sp);
}
inline Expr named_H() {
    return atom(AtomKind::omega) * named_N() +
           number(2) * atom(AtomKind::g) *
               (atom(AtomKind::alpha) * atom(AtomKind::sz) +
                atom(AtomKind::a) * atom(AtomKind::sp) +
                atom(AtomKind::ad) * atom(AtomKind::sm)) -
           number(Rational(1, 2)) * atom(AtomKind::omega);
}
inline Expr named_Hbar() {
    return atom(AtomKind::omega) * named_Nbar() +
           number(2) * atom(AtomKind::g) *
               (atom(AtomKind::alphabar) * atom(AtomKind::sz) +
                atom(AtomKind::a) * atom(AtomKind::sm) +
                atom(AtomKind::ad) * atom(AtomKind::sp)) -
           number(Rational(1, 2)) * atom(AtomKind::omega);
}
inline Expr named_HR(const Rational& r) {
    return number((1 + r) / 2) * named_H() + number((1 - r) / 2) * named_Hbar();
}

// Dispatch by name: "N", "Nbar", "A", "Abar", "H", "Hbar", "HR(p)" or
// "HR(p/q)" with an exact rational chirality.
inline Expr named(const std::string& name) {
    if (name == "N") return named_N();
    if (name == "Nbar") return named_Nbar();
    if (name == "A") return named_A();
    if (name == "Abar") return named_Abar();
    if (name == "H") return named_H();
    if (name == "Hbar") return named_Hbar();
    if (name.starts_with("HR(") && name.ends_with(")")) {
        const std::string body = name.substr(3, name.size() - 4);
        try {
            return named_HR(Rational(body));
        } catch (const std::exception&) {
            throw std::invalid_argument("named: bad chirality value in '" + name + "'");
        }
    }
    throw std::invalid_argument("named: unknown name '" + name + "'");
}

// --------------------------------- parser -----------------------------------

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t pos, std::vector<std::string> expected_tokens, const std::string& detail)
        : std::runtime_error(render(pos, expected_tokens, detail)),
          position(pos),
          expected(std::move(expected_tokens)) {}

    std::size_t position;
    std::vector<std::string> expected;

  private:
    static std::string render(std::size_t pos, const std::vector<std::string>& expected,
                              const std::string& detail) {
        std::string msg = "syntax error at position " + std::to_string(pos);
        if (!detail.empty()) msg += ": " + detail;
        if (!expected.empty()) {
            msg += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i > 0) msg += ", ";
                msg += expected[i];
            }
            msg += ")";
        }
        return msg;
    }
};

namespace detail {

struct Token {
    enum class Kind { ident, integer, plus, minus, star, caret, lparen, rparen, comma, slash, end };
    Kind kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            out.push_back({Token::Kind::ident, std::string(src.substr(i, j - i)), i});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::Kind::integer, std::string(src.substr(i, j - i)), i});
            i = j;
            continue;
        }
        Token::Kind k;
        switch (c) {
            case '+': k = Token::Kind::plus; break;
            case '-': k = Token::Kind::minus; break;
            case '*': k = Token::Kind::star; break;
            case '^': k = Token::Kind::caret; break;
            case '(': k = Token::Kind::lparen; break;
            case ')': k = Token::Kind::rparen; break;
            case ',': k = Token::Kind::comma; break;
            case '/': k = Token::Kind::slash; break;
            default:
                throw ParseError(i, {}, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(1, c), i});
        ++i;
    }
    out.push_back({Token::Kind::end, "", src.size()});
    return out;
}

class Parser {
  public:
    explicit Parser(std::string_view src) : tokens_(lex(src)) {}

    Expr parse() {
        Expr e = parse_expr();
        if (peek().kind != Token::Kind::end)
            throw ParseError(peek().pos, {"'+'", "'-'", "'*'", "'^'", "end of input"},
                             "trailing input");
        return e;
    }

  private:
    const Token& peek() const { return tokens_[index_]; }
    const Token& advance() { return tokens_[index_++]; }
    bool accept(Token::Kind k) {
        if (peek().kind == k) {
            ++index_;
            return true;
        }
        return false;
    }
    void expect(Token::Kind k, const char* what) {
        if (!accept(k)) throw ParseError(peek().pos, {what}, "");
    }

    Expr parse_expr() {
        bool negate = false;
        if (accept(Token::Kind::minus)) negate = true;
        else accept(Token::Kind::plus);
        Expr e = parse_term();
        if (negate) e = -std::move(e);
        while (true) {
            if (accept(Token::Kind::plus)) e = std::move(e) + parse_term();
            else if (accept(Token::Kind::minus)) e = std::move(e) - parse_term();
            else break;
        }
        return e;
    }

    Expr parse_term() {
        Expr e = parse_factor();
        while (accept(Token::Kind::star)) e = std::move(e) * parse_factor();
        return e;
    }

    Expr parse_factor() {
        Expr e = parse_primary();
        if (accept(Token::Kind::caret)) {
            const bool negative = accept(Token::Kind::minus);
            if (peek().kind != Token::Kind::integer)
                throw ParseError(peek().pos, {"integer exponent"}, "");
            const Token& t = advance();
            int exponent = std::stoi(t.text);
            if (negative) exponent = -exponent;
            e = pow(std::move(e), exponent);
        }
        return e;
    }

    static const std::map<std::string, AtomKind>& atoms() {
        static const std::map<std::string, AtomKind> table{
            {"a", AtomKind::a},           {"ad", AtomKind::ad},
            {"sp", AtomKind::sp},         {"sm", AtomKind::sm},
            {"sz", AtomKind::sz},         {"omega", AtomKind::omega},
            {"omega0", AtomKind::omega0}, {"g", AtomKind::g},
            {"alpha", AtomKind::alpha},   {"alphabar", AtomKind::alphabar},
            {"i", AtomKind::i},
        };
        return table;
    }

    Expr parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Kind::lparen: {
                advance();
                Expr e = parse_expr();
                expect(Token::Kind::rparen, "')'");
                return e;
            }
            case Token::Kind::integer: {
                advance();
                const Rational numer(t.text);
                if (accept(Token::Kind::slash)) {
                    if (peek().kind != Token::Kind::integer)
                        throw ParseError(peek().pos, {"integer denominator"}, "");
                    const Token& d = advance();
                    const Rational denom(d.text);
                    if (denom == 0)
                        throw ParseError(d.pos, {"nonzero denominator"}, "division by zero");
                    return number(numer / denom);
                }
                return number(numer);
            }
            case Token::Kind::ident: {
                if (t.text == "comm") {
                    advance();
                    expect(Token::Kind::lparen, "'('");
                    Expr lhs = parse_expr();
                    expect(Token::Kind::comma, "','");
                    Expr rhs = parse_expr();
                    expect(Token::Kind::rparen, "')'");
                    return comm(std::move(lhs), std::move(rhs));
                }
                const auto it = atoms().find(t.text);
                if (it == atoms().end())
                    throw ParseError(t.pos,
                                     {"a", "ad", "sp", "sm", "sz", "omega", "omega0", "g",
                                      "alpha", "alphabar", "i", "comm"},
                                     "unknown symbol '" + t.text + "'");
                advance();
                return atom(it->second);
            }
            default:
                throw ParseError(t.pos, {"atom", "number", "'('", "'comm('"}, "");
        }
    }

    std::vector<Token> tokens_;
    std::size_t index_{0};
};

}  // namespace detail

inline Expr parse(std::string_view text) { return detail::Parser(text).parse(); }

// -------------------------------- printing ----------------------------------

namespace detail {

inline std::string rational_str(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    std::string out = num.str();
    if (den != 1) out += "/" + den.str();
    return out;
}

inline void append_power_factors(std::vector<std::string>& factors, const Exponents& e) {
    const auto push = [&factors](const char* name, int k) {
        if (k == 0) return;
        if (k == 1) factors.emplace_back(name);
        else factors.emplace_back(std::string(name) + "^" + std::to_string(k));
    };
    push("omega", e.omega);
    push("omega0", e.omega0);
    push("g", e.g);
}

// Renders one polynomial monomial as (sign, factor list). Pure-imaginary
// values get an explicit i factor; mixed complex values give up on sign
// extraction and render as a parenthesized sum.
inline std::pair<char, std::vector<std::string>> monomial_factors(const Exponents& e,
                                                                  const CRational& q) {
    std::vector<std::string> factors;
    char sign = '+';
    if (q.im == 0) {
        if (q.re < 0) sign = '-';
        const Rational mag = q.re < 0 ? Rational(-q.re) : q.re;
        if (mag != 1) factors.push_back(rational_str(mag));
    } else if (q.re == 0) {
        if (q.im < 0) sign = '-';
        const Rational mag = q.im < 0 ? Rational(-q.im) : q.im;
        if (mag != 1) factors.push_back(rational_str(mag));
        factors.emplace_back("i");
    } else {
        std::string body = rational_str(q.re);
        if (q.im > 0) body += " + " + (q.im == 1 ? "i" : rational_str(q.im) + "*i");
        else body += " - " + (q.im == -1 ? "i" : rational_str(-q.im) + "*i");
        factors.push_back("(" + body + ")");
    }
    append_power_factors(factors, e);
    return {sign, factors};
}

inline std::string join_factors(const std::vector<std::string>& factors) {
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i > 0) out += "*";
        out += factors[i];
    }
    return out;
}

}  // namespace detail

inline std::string CanonicalExpr::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [key, coeff] = *it;

        char sign = '+';
        std::vector<std::string> factors;
        if (coeff.is_monomial()) {
            const auto& [e, q] = *coeff.terms().begin();
            auto [s, f] = detail::monomial_factors(e, q);
            sign = s;
            factors = std::move(f);
        } else {
            std::string body;
            bool first = true;
            for (const auto& [e, q] : coeff.terms()) {
                auto [s, f] = detail::monomial_factors(e, q);
                if (f.empty()) f.push_back("1");
                if (first) body += (s == '-' ? "-" : "") + detail::join_factors(f);
                else body += std::string(" ") + s + " " + detail::join_factors(f);
                first = false;
            }
            factors.push_back("(" + body + ")");
        }

        const auto push_power = [&factors](const char* name, int k) {
            if (k == 0) return;
            if (k == 1) factors.emplace_back(name);
            else factors.emplace_back(std::string(name) + "^" + std::to_string(k));
        };
        push_power("ad", key.m);
        push_power("a", key.n);
        switch (key.spin) {
            case SpinBasis::Plus: factors.emplace_back("sp"); break;
            case SpinBasis::Minus: factors.emplace_back("sm"); break;
            case SpinBasis::Z: factors.emplace_back("sz"); break;
            case SpinBasis::I: break;
        }
        if (factors.empty()) factors.push_back("1");

        if (out.empty()) out += (sign == '-' ? "-" : "") + detail::join_factors(factors);
        else out += std::string(" ") + sign + " " + detail::join_factors(factors);
    }
    return out;
}

}  // namespace rabi::sym
