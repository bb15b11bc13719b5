#include "pqc/index_expr.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <variant>

namespace pqc {

struct IndexExpr::Node {
    enum class Op { Const, Symbol, Neg, Add, Sub, Mul, Div, Mod, Gcd, Min, Max };
    Op op = Op::Const;
    long value = 0;
    std::string name;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const IndexExpr::Node>;
using Op = IndexExpr::Node::Op;

NodePtr make_node(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
    auto node = std::make_shared<IndexExpr::Node>();
    node->op = op;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long floor_mod(long a, long b) {
    long r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) r += b;
    return r;
}

long eval(const IndexExpr::Node& node, const SymbolTable& symbols) {
    switch (node.op) {
        case Op::Const: return node.value;
        case Op::Symbol: {
            auto it = symbols.find(node.name);
            if (it == symbols.end()) throw std::invalid_argument("unbound symbol '" + node.name + "'");
            return it->second;
        }
        case Op::Neg: return -eval(*node.lhs, symbols);
        default: break;
    }
    const long a = eval(*node.lhs, symbols);
    const long b = eval(*node.rhs, symbols);
    switch (node.op) {
        case Op::Add: return a + b;
        case Op::Sub: return a - b;
        case Op::Mul: return a * b;
        case Op::Div:
            if (b == 0) throw std::invalid_argument("division by zero in index expression");
            return floor_div(a, b);
        case Op::Mod:
            if (b == 0) throw std::invalid_argument("mod by zero in index expression");
            return floor_mod(a, b);
        case Op::Gcd: return std::gcd(a, b);
        case Op::Min: return std::min(a, b);
        case Op::Max: return std::max(a, b);
        default: return 0;
    }
}

int precedence(Op op) {
    switch (op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div:
        case Op::Mod: return 2;
        case Op::Neg: return 3;
        default: return 4;
    }
}

std::string print(const IndexExpr::Node& node) {
    switch (node.op) {
        case Op::Const: return std::to_string(node.value);
        case Op::Symbol: return node.name;
        case Op::Gcd: return "gcd(" + print(*node.lhs) + ", " + print(*node.rhs) + ")";
        case Op::Min: return "min(" + print(*node.lhs) + ", " + print(*node.rhs) + ")";
        case Op::Max: return "max(" + print(*node.lhs) + ", " + print(*node.rhs) + ")";
        case Op::Neg: {
            const auto inner = print(*node.lhs);
            return precedence(node.lhs->op) < precedence(Op::Neg) ? "-(" + inner + ")" : "-" + inner;
        }
        default: break;
    }
    const int p = precedence(node.op);
    auto lhs = print(*node.lhs);
    auto rhs = print(*node.rhs);
    if (precedence(node.lhs->op) < p) lhs = "(" + lhs + ")";
    // Left-associative: a right operand of equal precedence needs parentheses.
    if (precedence(node.rhs->op) <= p) rhs = "(" + rhs + ")";
    const char* sym = node.op == Op::Add   ? " + "
                      : node.op == Op::Sub ? " - "
                      : node.op == Op::Mul ? "*"
                      : node.op == Op::Div ? "/"
                                           : " mod ";
    return lhs + sym + rhs;
}

void collect(const IndexExpr::Node& node, std::set<std::string>& out) {
    if (node.op == Op::Symbol) out.insert(node.name);
    if (node.lhs) collect(*node.lhs, out);
    if (node.rhs) collect(*node.rhs, out);
}

}  // namespace

std::vector<Token> tokenize_line(std::string_view line, int line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        const int col = static_cast<int>(i) + 1;
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
            std::string word(line.substr(i, j - i));
            out.push_back({Token::Kind::Ident, word, col});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < line.size() && std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
            std::size_t j = i;
            bool real = false;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            // "0..n" is a range, not a real literal.
            if (j < line.size() && line[j] == '.' && !(j + 1 < line.size() && line[j + 1] == '.')) {
                real = true;
                ++j;
                while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            }
            if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
                if (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) {
                    real = true;
                    j = k;
                    while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
                }
            }
            out.push_back({real ? Token::Kind::Real : Token::Kind::Int, std::string(line.substr(i, j - i)), col});
            i = j;
            continue;
        }
        if (c == '.' && i + 1 < line.size() && line[i + 1] == '.') {
            out.push_back({Token::Kind::Symbol, "..", col});
            i += 2;
            continue;
        }
        if (std::string_view("+-*/(),:").find(c) != std::string_view::npos) {
            out.push_back({Token::Kind::Symbol, std::string(1, c), col});
            ++i;
            continue;
        }
        throw TemplateError(std::string("unexpected character '") + c + "'", line_no, col);
    }
    out.push_back({Token::Kind::End, "", static_cast<int>(line.size()) + 1});
    return out;
}

bool ExprParser::at_symbol(std::string_view s) const {
    return peek().kind == Token::Kind::Symbol && peek().text == s;
}

void ExprParser::fail(const std::string& msg, const Token& at) const {
    throw TemplateError(msg, line_, at.column);
}

IndexExpr ExprParser::parse_expression() { return IndexExpr(additive()); }

NodePtr ExprParser::additive() {
    auto lhs = multiplicative();
    while (at_symbol("+") || at_symbol("-")) {
        const Op op = advance().text == "+" ? Op::Add : Op::Sub;
        lhs = make_node(op, lhs, multiplicative());
    }
    return lhs;
}

NodePtr ExprParser::multiplicative() {
    auto lhs = unary();
    while (true) {
        Op op;
        if (at_symbol("*"))
            op = Op::Mul;
        else if (at_symbol("/"))
            op = Op::Div;
        else if (peek().kind == Token::Kind::Ident && peek().text == "mod")
            op = Op::Mod;
        else
            break;
        advance();
        lhs = make_node(op, lhs, unary());
    }
    return lhs;
}

NodePtr ExprParser::unary() {
    if (at_symbol("-")) {
        advance();
        return make_node(Op::Neg, unary());
    }
    return primary();
}

NodePtr ExprParser::primary() {
    const Token& tok = peek();
    if (tok.kind == Token::Kind::Int) {
        advance();
        auto node = std::make_shared<IndexExpr::Node>();
        node->op = Op::Const;
        node->value = std::stol(tok.text);
        return node;
    }
    if (tok.kind == Token::Kind::Symbol && tok.text == "(") {
        advance();
        auto inner = additive();
        if (!at_symbol(")")) fail("expected ')'", peek());
        advance();
        return inner;
    }
    if (tok.kind == Token::Kind::Ident && tok.text != "mod") {
        advance();
        if (at_symbol("(")) {
            Op op;
            if (tok.text == "gcd")
                op = Op::Gcd;
            else if (tok.text == "min")
                op = Op::Min;
            else if (tok.text == "max")
                op = Op::Max;
            else
                fail("unknown function '" + tok.text + "'", tok);
            advance();
            auto a = additive();
            if (!at_symbol(",")) fail("expected ','", peek());
            advance();
            auto b = additive();
            if (!at_symbol(")")) fail("expected ')'", peek());
            advance();
            return make_node(op, a, b);
        }
        auto node = std::make_shared<IndexExpr::Node>();
        node->op = Op::Symbol;
        node->name = tok.text;
        return node;
    }
    if (tok.kind == Token::Kind::End) fail("expected an index expression", tok);
    fail("unexpected '" + tok.text + "' in index expression", tok);
}

IndexExpr IndexExpr::parse(std::string_view text) {
    const auto tokens = tokenize_line(text, 1);
    std::size_t pos = 0;
    ExprParser parser(tokens, pos, 1);
    auto expr = parser.parse_expression();
    if (tokens[pos].kind != Token::Kind::End)
        throw TemplateError("trailing input '" + tokens[pos].text + "'", 1, tokens[pos].column);
    return expr;
}

long IndexExpr::evaluate(const SymbolTable& symbols) const {
    if (!root_) throw std::logic_error("evaluating an empty index expression");
    return eval(*root_, symbols);
}

std::string IndexExpr::to_string() const { return root_ ? print(*root_) : std::string{}; }

std::vector<std::string> IndexExpr::symbols() const {
    std::set<std::string> out;
    if (root_) collect(*root_, out);
    return {out.begin(), out.end()};
}

}  // namespace pqc
