#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pqc {

/// Error raised while reading template text. Line and column are 1-based;
/// zero means unknown.
class TemplateError : public std::runtime_error {
public:
    TemplateError(const std::string& what, int line = 0, int column = 0)
        : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string& what, int line, int column) {
        if (line <= 0) return what;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
    }

    int line_;
    int column_;
};

/// Lexical token of the template language.
struct Token {
    enum class Kind { Ident, Int, Real, Symbol, End };
    Kind kind = Kind::End;
    std::string text;
    int column = 0;  // 1-based
};

std::vector<Token> tokenize_line(std::string_view line, int line_no);

using SymbolTable = std::map<std::string, long, std::less<>>;

/// Integer expression over qubit-index symbols: + - * / mod, unary minus,
/// parentheses, and the functions gcd, min, max. `/` floors and `mod` is
/// always non-negative for a positive modulus.
class IndexExpr {
public:
    struct Node;

    IndexExpr() = default;

    /// Parses a standalone expression. Throws TemplateError.
    static IndexExpr parse(std::string_view text);

    long evaluate(const SymbolTable& symbols) const;
    std::string to_string() const;
    /// Free symbols, sorted and unique.
    std::vector<std::string> symbols() const;

    bool empty() const { return root_ == nullptr; }

private:
    friend class ExprParser;
    explicit IndexExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    std::shared_ptr<const Node> root_;
};

/// Recursive-descent parser over a token stream; shared with the template
/// reader so gate lines can embed expressions.
class ExprParser {
public:
    ExprParser(const std::vector<Token>& tokens, std::size_t& pos, int line_no)
        : tokens_(tokens), pos_(pos), line_(line_no) {}

    IndexExpr parse_expression();

private:
    std::shared_ptr<const IndexExpr::Node> additive();
    std::shared_ptr<const IndexExpr::Node> multiplicative();
    std::shared_ptr<const IndexExpr::Node> unary();
    std::shared_ptr<const IndexExpr::Node> primary();

    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }
    bool at_symbol(std::string_view s) const;
    [[noreturn]] void fail(const std::string& msg, const Token& at) const;

    const std::vector<Token>& tokens_;
    std::size_t& pos_;
    int line_;
};

}  // namespace pqc
