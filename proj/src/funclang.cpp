#include "gftk/funclang.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gftk/errors.hpp"
#include <json.hpp>

namespace gftk {

namespace {

// ---------------------------------------------------------------- lexer

struct Token {
    enum class Type { Z, Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Type type;
    std::size_t offset;
    cplx number{};
    std::string ident;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }
    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        tok_.offset = pos_;
        if (pos_ >= s_.size()) {
            tok_.type = Token::Type::End;
            return;
        }
        const char ch = s_[pos_];
        switch (ch) {
            case '+': tok_.type = Token::Type::Plus; ++pos_; return;
            case '-': tok_.type = Token::Type::Minus; ++pos_; return;
            case '*': tok_.type = Token::Type::Star; ++pos_; return;
            case '/': tok_.type = Token::Type::Slash; ++pos_; return;
            case '^': tok_.type = Token::Type::Caret; ++pos_; return;
            case '(': tok_.type = Token::Type::LParen; ++pos_; return;
            case ')': tok_.type = Token::Type::RParen; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
            lexNumber();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            if (id == "i") {
                tok_.type = Token::Type::Number;
                tok_.number = cplx(0.0, 1.0);
            } else if (id == "z") {
                tok_.type = Token::Type::Z;
            } else {
                tok_.type = Token::Type::Ident;
                tok_.ident = std::move(id);
            }
            return;
        }
        throw SyntaxError(pos_, std::string("unexpected character '") + ch + "'");
    }

    void lexNumber() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            } else {
                pos_ = mark; // 'e' belongs to something else; not a valid exponent
            }
        }
        double v = 0.0;
        try {
            v = std::stod(s_.substr(start, pos_ - start));
        } catch (const std::exception&) {
            throw SyntaxError(start, "malformed number");
        }
        tok_.type = Token::Type::Number;
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            tok_.number = cplx(0.0, v);
        } else {
            tok_.number = cplx(v, 0.0);
        }
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    Token tok_;
};

// ---------------------------------------------------------------- parser
//
//   expr  := term { (+|-) term }
//   term  := unary { (*|/) unary }
//   unary := '-' unary | power          (so ^ binds tighter than unary minus)
//   power := atom [ '^' unary ]         (right-associative via the unary recursion)
//   atom  := z | number | ident '(' expr ')' | '(' expr ')'

AstPtr mk(AstNode n) { return std::make_shared<const AstNode>(std::move(n)); }

class Parser {
  public:
    explicit Parser(const std::string& s) : lex_(s) {}

    AstPtr parseAll() {
        AstPtr e = parseExpr();
        if (lex_.peek().type != Token::Type::End)
            throw SyntaxError(lex_.peek().offset, "trailing input");
        return e;
    }

  private:
    AstPtr parseExpr() {
        AstPtr lhs = parseTerm();
        for (;;) {
            const auto t = lex_.peek().type;
            if (t == Token::Type::Plus || t == Token::Type::Minus) {
                lex_.take();
                AstPtr rhs = parseTerm();
                lhs = mk({t == Token::Type::Plus ? AstNode::Kind::Add : AstNode::Kind::Sub,
                          {}, {}, lhs, rhs});
            } else {
                return lhs;
            }
        }
    }

    AstPtr parseTerm() {
        AstPtr lhs = parseUnary();
        for (;;) {
            const auto t = lex_.peek().type;
            if (t == Token::Type::Star || t == Token::Type::Slash) {
                lex_.take();
                AstPtr rhs = parseUnary();
                lhs = mk({t == Token::Type::Star ? AstNode::Kind::Mul : AstNode::Kind::Div,
                          {}, {}, lhs, rhs});
            } else {
                return lhs;
            }
        }
    }

    AstPtr parseUnary() {
        if (lex_.peek().type == Token::Type::Minus) {
            lex_.take();
            return mk({AstNode::Kind::Neg, {}, {}, parseUnary(), nullptr});
        }
        return parsePower();
    }

    AstPtr parsePower() {
        AstPtr base = parseAtom();
        if (lex_.peek().type == Token::Type::Caret) {
            const std::size_t caret_off = lex_.peek().offset;
            lex_.take();
            AstPtr expo = parseUnary();
            if (ast_contains_var(expo)) throw NonConstantExponent(caret_off);
            return mk({AstNode::Kind::Pow, {}, {}, base, expo});
        }
        return base;
    }

    AstPtr parseAtom() {
        Token t = lex_.take();
        switch (t.type) {
            case Token::Type::Z:
                return mk({AstNode::Kind::Var, {}, {}, nullptr, nullptr});
            case Token::Type::Number:
                return mk({AstNode::Kind::Lit, t.number, {}, nullptr, nullptr});
            case Token::Type::LParen: {
                AstPtr e = parseExpr();
                if (lex_.peek().type != Token::Type::RParen)
                    throw SyntaxError(lex_.peek().offset, "expected ')'");
                lex_.take();
                return e;
            }
            case Token::Type::Ident: {
                if (t.ident != "log" && t.ident != "exp" && t.ident != "sqrt")
                    throw SyntaxError(t.offset, "unknown identifier '" + t.ident + "'");
                if (lex_.peek().type != Token::Type::LParen)
                    throw SyntaxError(lex_.peek().offset, "expected '(' after " + t.ident);
                lex_.take();
                AstPtr arg = parseExpr();
                if (lex_.peek().type != Token::Type::RParen)
                    throw SyntaxError(lex_.peek().offset, "expected ')'");
                lex_.take();
                return mk({AstNode::Kind::Call, {}, t.ident, arg, nullptr});
            }
            default:
                throw SyntaxError(t.offset, "expected operand");
        }
    }

    Lexer lex_;
};

void print_node(std::ostringstream& os, const AstPtr& n);

void print_lit(std::ostringstream& os, cplx v) {
    char buf[64];
    if (v.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", v.real());
        if (v.real() < 0) {
            os << "(0-" << (buf[0] == '-' ? buf + 1 : buf) << ")";
        } else {
            os << buf;
        }
    } else if (v.real() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", std::abs(v.imag()));
        os << (v.imag() < 0 ? "(0-" : "(0+") << buf << "i)";
    } else {
        os << "(";
        print_lit(os, cplx(v.real(), 0.0));
        std::snprintf(buf, sizeof buf, "%.17g", std::abs(v.imag()));
        os << (v.imag() < 0 ? "-" : "+") << buf << "i)";
    }
}

void print_node(std::ostringstream& os, const AstPtr& n) {
    switch (n->kind) {
        case AstNode::Kind::Var: os << "z"; break;
        case AstNode::Kind::Lit: print_lit(os, n->lit); break;
        case AstNode::Kind::Neg:
            os << "(-";
            print_node(os, n->a);
            os << ")";
            break;
        case AstNode::Kind::Add:
        case AstNode::Kind::Sub:
        case AstNode::Kind::Mul:
        case AstNode::Kind::Div:
        case AstNode::Kind::Pow: {
            const char* op = n->kind == AstNode::Kind::Add   ? "+"
                             : n->kind == AstNode::Kind::Sub ? "-"
                             : n->kind == AstNode::Kind::Mul ? "*"
                             : n->kind == AstNode::Kind::Div ? "/"
                                                             : "^";
            os << "(";
            print_node(os, n->a);
            os << op;
            print_node(os, n->b);
            os << ")";
            break;
        }
        case AstNode::Kind::Call:
            os << n->call << "(";
            print_node(os, n->a);
            os << ")";
            break;
    }
}

cplx const_value(const AstPtr& n) {
    // exponents contain no z; evaluate them as plain complex arithmetic
    switch (n->kind) {
        case AstNode::Kind::Lit: return n->lit;
        case AstNode::Kind::Neg: return -const_value(n->a);
        case AstNode::Kind::Add: return const_value(n->a) + const_value(n->b);
        case AstNode::Kind::Sub: return const_value(n->a) - const_value(n->b);
        case AstNode::Kind::Mul: return const_value(n->a) * const_value(n->b);
        case AstNode::Kind::Div: return const_value(n->a) / const_value(n->b);
        case AstNode::Kind::Pow: return std::pow(const_value(n->a), const_value(n->b));
        case AstNode::Kind::Call: {
            const cplx v = const_value(n->a);
            if (n->call == "log") return std::log(v);
            if (n->call == "exp") return std::exp(v);
            return std::sqrt(v);
        }
        default: throw EvalError("const_value: unexpected variable");
    }
}

cplx eval_value_rec(const AstPtr& n, cplx z) {
    switch (n->kind) {
        case AstNode::Kind::Var: return z;
        case AstNode::Kind::Lit: return n->lit;
        case AstNode::Kind::Neg: return -eval_value_rec(n->a, z);
        case AstNode::Kind::Add: return eval_value_rec(n->a, z) + eval_value_rec(n->b, z);
        case AstNode::Kind::Sub: return eval_value_rec(n->a, z) - eval_value_rec(n->b, z);
        case AstNode::Kind::Mul: return eval_value_rec(n->a, z) * eval_value_rec(n->b, z);
        case AstNode::Kind::Div: {
            const cplx d = eval_value_rec(n->b, z);
            if (std::abs(d) < kZeroValueFloor) throw DomainError("division by zero in expression");
            return eval_value_rec(n->a, z) / d;
        }
        case AstNode::Kind::Pow: {
            const cplx b = eval_value_rec(n->a, z);
            const cplx e = const_value(n->b);
            if (e == cplx(0.0)) return 1.0;
            if (std::abs(b) < kZeroValueFloor) throw ZeroValue();
            return std::exp(e * std::log(b));
        }
        case AstNode::Kind::Call: {
            const cplx v = eval_value_rec(n->a, z);
            if (n->call == "exp") return std::exp(v);
            if (std::abs(v) < kZeroValueFloor) throw ZeroValue();
            if (n->call == "log") return std::log(v);
            return std::exp(0.5 * std::log(v));
        }
    }
    throw EvalError("unreachable");
}

Jet3 eval_jet_rec(const AstPtr& n, const Jet3& z) {
    switch (n->kind) {
        case AstNode::Kind::Var: return z;
        case AstNode::Kind::Lit: return Jet3::constant(n->lit);
        case AstNode::Kind::Neg: return -eval_jet_rec(n->a, z);
        case AstNode::Kind::Add: return eval_jet_rec(n->a, z) + eval_jet_rec(n->b, z);
        case AstNode::Kind::Sub: return eval_jet_rec(n->a, z) - eval_jet_rec(n->b, z);
        case AstNode::Kind::Mul: return jet_mul(eval_jet_rec(n->a, z), eval_jet_rec(n->b, z));
        case AstNode::Kind::Div: {
            const Jet3 d = eval_jet_rec(n->b, z);
            if (std::abs(d.f0) < kZeroValueFloor) throw DomainError("division by zero in expression");
            return jet_div(eval_jet_rec(n->a, z), d);
        }
        case AstNode::Kind::Pow:
            return jet_pow(eval_jet_rec(n->a, z), const_value(n->b), 0);
        case AstNode::Kind::Call: {
            const Jet3 v = eval_jet_rec(n->a, z);
            if (n->call == "exp") return jet_exp(v);
            if (n->call == "log") return jet_log(v);
            return jet_sqrt(v);
        }
    }
    throw EvalError("unreachable");
}

PowerSeries eval_series_rec(const AstPtr& n, int order) {
    switch (n->kind) {
        case AstNode::Kind::Var: return PowerSeries::identity(order);
        case AstNode::Kind::Lit: return PowerSeries::constant(n->lit, order);
        case AstNode::Kind::Neg: return series_scale(-1.0, eval_series_rec(n->a, order));
        case AstNode::Kind::Add: return series_add(eval_series_rec(n->a, order), eval_series_rec(n->b, order));
        case AstNode::Kind::Sub: return series_sub(eval_series_rec(n->a, order), eval_series_rec(n->b, order));
        case AstNode::Kind::Mul: return series_mul(eval_series_rec(n->a, order), eval_series_rec(n->b, order));
        case AstNode::Kind::Div: return series_div(eval_series_rec(n->a, order), eval_series_rec(n->b, order));
        case AstNode::Kind::Pow: return series_pow_general(eval_series_rec(n->a, order), const_value(n->b));
        case AstNode::Kind::Call: {
            PowerSeries v = eval_series_rec(n->a, order);
            if (n->call == "exp") return series_exp(v);
            if (n->call == "log") return series_log_general(v);
            return series_pow_general(v, 0.5);
        }
    }
    throw EvalError("unreachable");
}

// ---------------------------------------------------------------- catalog

double require_real(const std::map<std::string, cplx>& params, const std::string& key, double dflt) {
    auto it = params.find(key);
    if (it == params.end()) return dflt;
    return it->second.real();
}

Jet3 inv_pow_jet(cplx z, cplx a, cplx c) {
    // (1 - a z)^(-c) with Re(1 - a z) tracked on the principal branch
    Jet3 base{1.0 - a * z, -a, 0.0, 0.0};
    if (std::abs(base.f0) < 1e-14) throw DomainError("catalog function singular at this z");
    return jet_pow(base, -c, 0);
}

const std::vector<CatalogEntry>& catalog_impl() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> v;

        v.push_back({"koebe", "z/(1-z)^2", {}, {"class S", "starlike"},
                     [](cplx z, const std::map<std::string, cplx>&) {
                         const cplx d = 1.0 - z;
                         if (std::abs(d) < 1e-14) throw DomainError("koebe singular at z = 1");
                         const cplx u = 1.0 / d, u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
                         return Jet3{z * u2, (1.0 + z) * u3, (4.0 + 2.0 * z) * u4, (18.0 + 6.0 * z) * u5};
                     },
                     [](int N, const std::map<std::string, cplx>&) {
                         PowerSeries s(N);
                         for (int n = 1; n <= N; ++n) s.c[n] = double(n);
                         return s;
                     }});

        v.push_back({"phi", "-z-2*log(1-z)", {}, {"class R", "class S"},
                     [](cplx z, const std::map<std::string, cplx>&) {
                         const cplx d = 1.0 - z;
                         if (std::abs(d) < 1e-14) throw DomainError("phi singular at z = 1");
                         const cplx u = 1.0 / d, u2 = u * u, u3 = u2 * u;
                         return Jet3{-z - 2.0 * std::log(d), (1.0 + z) * u, 2.0 * u2, 4.0 * u3};
                     },
                     [](int N, const std::map<std::string, cplx>&) {
                         PowerSeries s(N);
                         if (N >= 1) s.c[1] = 1.0;
                         for (int n = 2; n <= N; ++n) s.c[n] = 2.0 / double(n);
                         return s;
                     }});

        v.push_back({"psi", "-z+2*log(1+z)", {}, {"class R", "class S"},
                     [](cplx z, const std::map<std::string, cplx>&) {
                         const cplx d = 1.0 + z;
                         if (std::abs(d) < 1e-14) throw DomainError("psi singular at z = -1");
                         const cplx u = 1.0 / d, u2 = u * u, u3 = u2 * u;
                         return Jet3{-z + 2.0 * std::log(d), (1.0 - z) * u, -2.0 * u2, 4.0 * u3};
                     },
                     [](int N, const std::map<std::string, cplx>&) {
                         PowerSeries s(N);
                         if (N >= 1) s.c[1] = 1.0;
                         for (int n = 2; n <= N; ++n) s.c[n] = (n % 2 ? 2.0 : -2.0) / double(n);
                         return s;
                     }});

        v.push_back({"hille", "((1+z)/(1-z))^(i*epsilon)", {"epsilon"},
                     {"locally univalent", "non-univalent for epsilon > 0"},
                     [](cplx z, const std::map<std::string, cplx>& p) {
                         const double eps = require_real(p, "epsilon", 1.0);
                         const cplx d = 1.0 - z;
                         if (std::abs(d) < 1e-14 || std::abs(1.0 + z) < 1e-14)
                             throw DomainError("hille singular at z = +-1");
                         Jet3 base = jet_div(Jet3{1.0 + z, 1.0, 0.0, 0.0}, Jet3{d, -1.0, 0.0, 0.0});
                         return jet_pow(base, cplx(0.0, eps), 0);
                     },
                     [](int N, const std::map<std::string, cplx>& p) {
                         const double eps = require_real(p, "epsilon", 1.0);
                         PowerSeries num = PowerSeries::constant(1.0, N), den = num;
                         if (N >= 1) { num.c[1] = 1.0; den.c[1] = -1.0; }
                         return series_pow(series_div(num, den), cplx(0.0, eps));
                     }});

        v.push_back({"krzyz-lewandowski", "z/(1-i*z)^(1-i)", {},
                     {"class S", "spirallike(-pi/4)"},
                     [](cplx z, const std::map<std::string, cplx>&) {
                         return jet_mul(Jet3::variable(z), inv_pow_jet(z, cplx(0.0, 1.0), cplx(1.0, -1.0)));
                     },
                     [](int N, const std::map<std::string, cplx>&) {
                         PowerSeries base = PowerSeries::constant(1.0, N);
                         if (N >= 1) base.c[1] = cplx(0.0, -1.0);
                         return series_mul(PowerSeries::identity(N), series_pow(base, -cplx(1.0, -1.0)));
                     }});

        v.push_back({"q-dominant", "(-z-2*log(1-z))/z", {}, {"convex", "q(0)=1"},
                     [](cplx z, const std::map<std::string, cplx>&) {
                         if (std::abs(z) < 0.5) {
                             // q_n = 2/(n+1) for n >= 1; |z| < 0.5 makes 130 terms plenty
                             static const PowerSeries q = [] {
                                 PowerSeries s(130);
                                 s.c[0] = 1.0;
                                 for (int n = 1; n <= 130; ++n) s.c[n] = 2.0 / double(n + 1);
                                 return s;
                             }();
                             return series_jet(q, z);
                         }
                         const cplx d = 1.0 - z;
                         if (std::abs(d) < 1e-14) throw DomainError("q-dominant singular at z = 1");
                         const cplx u = 1.0 / d, u2 = u * u, u3 = u2 * u;
                         const Jet3 phi{-z - 2.0 * std::log(d), (1.0 + z) * u, 2.0 * u2, 4.0 * u3};
                         return jet_div(phi, Jet3::variable(z));
                     },
                     [](int N, const std::map<std::string, cplx>&) {
                         PowerSeries s(N);
                         s.c[0] = 1.0;
                         for (int n = 1; n <= N; ++n) s.c[n] = 2.0 / double(n + 1);
                         return s;
                     }});

        v.push_back({"half-plane-cayley", "z/(1-z)", {}, {"class S", "convex"},
                     [](cplx z, const std::map<std::string, cplx>&) {
                         const cplx d = 1.0 - z;
                         if (std::abs(d) < 1e-14) throw DomainError("half-plane-cayley singular at z = 1");
                         const cplx u = 1.0 / d, u2 = u * u, u3 = u2 * u, u4 = u3 * u;
                         return Jet3{z * u, u2, 2.0 * u3, 6.0 * u4};
                     },
                     [](int N, const std::map<std::string, cplx>&) {
                         PowerSeries s(N);
                         for (int n = 1; n <= N; ++n) s.c[n] = 1.0;
                         return s;
                     }});

        // lambda-spirallike analogue of the Koebe function: exponent 2 e^{i lambda} cos(lambda)
        // makes Re(e^{-i lambda} z f'/f) > 0 hold on the disk (boundary values are purely
        // imaginary -- this is the extremal member of the class).
        v.push_back({"spiral-koebe", "z/(1-z)^(2*exp(i*lambda)*cos(lambda))", {"lambda"},
                     {"class S", "spirallike(lambda)"},
                     [](cplx z, const std::map<std::string, cplx>& p) {
                         const double lam = require_real(p, "lambda", 0.0);
                         const cplx c = 2.0 * std::exp(cplx(0.0, lam)) * std::cos(lam);
                         return jet_mul(Jet3::variable(z), inv_pow_jet(z, cplx(1.0, 0.0), c));
                     },
                     [](int N, const std::map<std::string, cplx>& p) {
                         const double lam = require_real(p, "lambda", 0.0);
                         const cplx c = 2.0 * std::exp(cplx(0.0, lam)) * std::cos(lam);
                         PowerSeries base = PowerSeries::constant(1.0, N);
                         if (N >= 1) base.c[1] = -1.0;
                         return series_mul(PowerSeries::identity(N), series_pow(base, -c));
                     }});

        return v;
    }();
    return entries;
}

} // namespace

// ---------------------------------------------------------------- public API

Ast parse(const std::string& formula) {
    Parser p(formula);
    return Ast{p.parseAll()};
}

bool ast_contains_var(const AstPtr& n) {
    if (!n) return false;
    if (n->kind == AstNode::Kind::Var) return true;
    return ast_contains_var(n->a) || ast_contains_var(n->b);
}

std::string pretty_print(const Ast& ast) {
    std::ostringstream os;
    print_node(os, ast.root);
    return os.str();
}

cplx ast_eval_value(const Ast& ast, cplx z) { return eval_value_rec(ast.root, z); }
Jet3 ast_eval_jet(const Ast& ast, cplx z) { return eval_jet_rec(ast.root, Jet3::variable(z)); }
PowerSeries ast_eval_series(const Ast& ast, int order) { return eval_series_rec(ast.root, order); }

cplx parse_complex(const std::string& text) {
    // a+bi / a-bi / a / bi / i ; whitespace-free core grammar
    if (text.empty()) throw SyntaxError(0, "empty complex literal");
    Ast ast = parse(text);
    if (ast_contains_var(ast.root)) throw SyntaxError(0, "complex literal must not contain z");
    return ast_eval_value(ast, 0.0);
}

std::string format_complex(cplx v) {
    char buf[80];
    if (v.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", v.real());
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
    return buf;
}

FunctionSpec FunctionSpec::catalog(std::string name, std::map<std::string, cplx> params) {
    FunctionSpec s;
    s.kind = SpecKind::Catalog;
    s.name = std::move(name);
    s.params = std::move(params);
    return s;
}
FunctionSpec FunctionSpec::expr(std::string formula) {
    FunctionSpec s;
    s.kind = SpecKind::Expr;
    s.formula = std::move(formula);
    return s;
}
FunctionSpec FunctionSpec::series(std::vector<cplx> coeffs) {
    FunctionSpec s;
    s.kind = SpecKind::Series;
    s.coeffs = std::move(coeffs);
    return s;
}

FunctionSpec spec_from_json_text(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("bad FunctionSpec JSON: ") + e.what());
    }
    const std::string kind = j.value("kind", "");
    if (kind == "catalog") {
        std::map<std::string, cplx> params;
        if (j.contains("params")) {
            for (auto it = j["params"].begin(); it != j["params"].end(); ++it) {
                const auto& v = it.value();
                if (v.is_array() && v.size() == 2)
                    params[it.key()] = cplx(v[0].get<double>(), v[1].get<double>());
                else if (v.is_number())
                    params[it.key()] = cplx(v.get<double>(), 0.0);
                else
                    throw ConfigError("catalog param must be number or [re,im]");
            }
        }
        FunctionSpec s = FunctionSpec::catalog(j.value("name", ""), std::move(params));
        if (!catalog_find(s.name)) throw ConfigError("unknown catalog function '" + s.name + "'");
        return s;
    }
    if (kind == "expr") {
        FunctionSpec s = FunctionSpec::expr(j.value("formula", ""));
        parse(s.formula); // reject malformed formulas at spec-parse time
        return s;
    }
    if (kind == "series") {
        std::vector<cplx> coeffs;
        for (const auto& v : j.at("coeffs")) {
            if (v.is_array() && v.size() == 2)
                coeffs.emplace_back(v[0].get<double>(), v[1].get<double>());
            else if (v.is_number())
                coeffs.emplace_back(v.get<double>(), 0.0);
            else
                throw ConfigError("series coeff must be number or [re,im]");
        }
        if (coeffs.empty()) throw ConfigError("series spec needs at least one coefficient");
        return FunctionSpec::series(std::move(coeffs));
    }
    throw ConfigError("FunctionSpec kind must be catalog|expr|series");
}

std::string spec_to_json_text(const FunctionSpec& spec) {
    nlohmann::ordered_json j;
    switch (spec.kind) {
        case SpecKind::Catalog: {
            j["kind"] = "catalog";
            j["name"] = spec.name;
            if (!spec.params.empty()) {
                nlohmann::ordered_json p;
                for (const auto& [k, v] : spec.params) p[k] = {v.real(), v.imag()};
                j["params"] = p;
            }
            break;
        }
        case SpecKind::Expr:
            j["kind"] = "expr";
            j["formula"] = spec.formula;
            break;
        case SpecKind::Series: {
            j["kind"] = "series";
            auto arr = nlohmann::ordered_json::array();
            for (const auto& v : spec.coeffs) arr.push_back({v.real(), v.imag()});
            j["coeffs"] = arr;
            break;
        }
    }
    return j.dump();
}

FunctionSpec spec_from_cli(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ConfigError("function spec must be catalog:...|expr:...|series:...|file:...");
    const std::string head = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    if (head == "expr") return FunctionSpec::expr(rest);
    if (head == "catalog") {
        auto colon2 = rest.find(':');
        std::string name = rest.substr(0, colon2 == std::string::npos ? rest.size() : colon2);
        std::map<std::string, cplx> params;
        if (colon2 != std::string::npos) {
            std::stringstream ss(rest.substr(colon2 + 1));
            std::string kv;
            while (std::getline(ss, kv, ',')) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw ConfigError("catalog params look like k=v[,k=v]");
                params[kv.substr(0, eq)] = parse_complex(kv.substr(eq + 1));
            }
        }
        if (!catalog_find(name)) throw ConfigError("unknown catalog function '" + name + "'");
        return FunctionSpec::catalog(std::move(name), std::move(params));
    }
    if (head == "series") return spec_from_json_text("{\"kind\":\"series\",\"coeffs\":" + rest + "}");
    if (head == "file") {
        FILE* f = std::fopen(rest.c_str(), "rb");
        if (!f) throw ConfigError("cannot open spec file " + rest);
        std::string data;
        char buf[4096];
        std::size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) data.append(buf, n);
        std::fclose(f);
        return spec_from_json_text(data);
    }
    throw ConfigError("unknown function spec prefix '" + head + "'");
}

const std::vector<CatalogEntry>& catalog_list() { return catalog_impl(); }

const CatalogEntry* catalog_find(const std::string& name) {
    for (const auto& e : catalog_impl())
        if (e.name == name) return &e;
    return nullptr;
}

Func Func::compile(const FunctionSpec& spec) {
    Func f;
    f.spec_ = spec;
    switch (spec.kind) {
        case SpecKind::Catalog:
            f.entry_ = catalog_find(spec.name);
            if (!f.entry_) throw ConfigError("unknown catalog function '" + spec.name + "'");
            break;
        case SpecKind::Expr:
            f.ast_ = parse(spec.formula);
            break;
        case SpecKind::Series:
            f.poly_ = PowerSeries(spec.coeffs);
            break;
    }
    return f;
}

Jet3 Func::jet(cplx z) const {
    switch (spec_.kind) {
        case SpecKind::Catalog: return entry_->jet(z, spec_.params);
        case SpecKind::Expr: return ast_eval_jet(ast_, z);
        case SpecKind::Series: return series_jet(poly_, z);
    }
    throw EvalError("unreachable");
}

cplx Func::value(cplx z) const {
    switch (spec_.kind) {
        case SpecKind::Catalog: return entry_->jet(z, spec_.params).f0;
        case SpecKind::Expr: return ast_eval_value(ast_, z);
        case SpecKind::Series: return series_eval(poly_, z);
    }
    throw EvalError("unreachable");
}

PowerSeries Func::series(int order) const {
    switch (spec_.kind) {
        case SpecKind::Catalog: return entry_->series(order, spec_.params);
        case SpecKind::Expr: return ast_eval_series(ast_, order);
        case SpecKind::Series: return series_truncate(poly_, order);
    }
    throw EvalError("unreachable");
}

} // namespace gftk
