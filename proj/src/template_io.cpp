#include "pqc/template_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace pqc {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return std::string(line.substr(0, hash));
}

int parse_int_header(const std::string& value, int line_no, int col) {
    int out = 0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) throw TemplateError("expected an integer, got '" + value + "'", line_no, col);
    return out;
}

enum class Section { Header, Prologue, Layer };

class LineParser {
public:
    LineParser(std::vector<Token> tokens, int line_no) : tokens_(std::move(tokens)), line_(line_no) {}

    GatePattern parse(const std::set<std::string>& outer_scope) {
        GatePattern pat;
        pat.line = line_;
        std::set<std::string> scope = outer_scope;
        while (is_ident("for")) {
            advance();
            const Token& var = expect_ident("loop variable");
            if (var.text == "n" || var.text == "mod" || scope.count(var.text))
                fail("loop variable '" + var.text + "' shadows an existing symbol", var);
            if (!is_ident("in")) fail("expected 'in'", peek());
            advance();
            LoopSpec loop;
            loop.var = var.text;
            loop.begin = expression(scope);
            if (!is_symbol("..")) fail("expected '..' in loop range", peek());
            advance();
            loop.end = expression(scope);
            if (is_symbol(":")) advance();
            scope.insert(var.text);
            pat.loops.push_back(std::move(loop));
        }

        const Token& kind_tok = expect_ident("gate kind");
        try {
            pat.kind = gate_kind_from_string(kind_tok.text);
        } catch (const std::invalid_argument&) {
            fail("unknown gate kind '" + kind_tok.text + "'", kind_tok);
        }

        const Token& first_qubit = peek();
        pat.qubits.push_back(expression(scope));
        while (is_symbol(",")) {
            advance();
            pat.qubits.push_back(expression(scope));
        }
        if (static_cast<int>(pat.qubits.size()) != qubit_arity(pat.kind))
            fail(std::string(to_string(pat.kind)) + " takes " + std::to_string(qubit_arity(pat.kind)) +
                     " qubit index(es), got " + std::to_string(pat.qubits.size()),
                 first_qubit);

        const int arity = angle_arity(pat.kind);
        if (is_ident("param")) {
            const Token& t = advance();
            if (arity == 0) fail(std::string(to_string(pat.kind)) + " takes no angle", t);
            pat.parameterized = true;
        } else if (is_ident("angle")) {
            const Token& t = advance();
            if (arity == 0) fail(std::string(to_string(pat.kind)) + " takes no angle", t);
            for (int k = 0; k < arity; ++k) pat.fixed_angles.push_back(number());
        } else if (arity > 0) {
            fail(std::string(to_string(pat.kind)) + " needs 'param' or 'angle <value>'", peek());
        }
        if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'", peek());
        return pat;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }
    bool is_ident(std::string_view s) const { return peek().kind == Token::Kind::Ident && peek().text == s; }
    bool is_symbol(std::string_view s) const { return peek().kind == Token::Kind::Symbol && peek().text == s; }

    [[noreturn]] void fail(const std::string& msg, const Token& at) const { throw TemplateError(msg, line_, at.column); }

    const Token& expect_ident(const char* what) {
        if (peek().kind != Token::Kind::Ident) fail(std::string("expected ") + what, peek());
        return advance();
    }

    IndexExpr expression(const std::set<std::string>& scope) {
        const Token& start = peek();
        ExprParser parser(tokens_, pos_, line_);
        auto expr = parser.parse_expression();
        for (const auto& sym : expr.symbols())
            if (sym != "n" && !scope.count(sym)) fail("unknown symbol '" + sym + "' in index expression", start);
        return expr;
    }

    double number() {
        bool negative = false;
        if (is_symbol("-")) {
            advance();
            negative = true;
        }
        const Token& t = peek();
        if (t.kind != Token::Kind::Int && t.kind != Token::Kind::Real) fail("expected a numeric angle", t);
        advance();
        double v = 0.0;
        std::istringstream in(t.text);
        in >> v;
        return negative ? -v : v;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int line_;
};

const std::set<std::string> kHeaderKeys{"id", "description", "connectivity", "sampler", "min-width", "max-width"};

std::string format_angle(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_patterns(std::ostringstream& out, const std::vector<GatePattern>& patterns) {
    for (const auto& p : patterns) {
        out << "  ";
        for (const auto& loop : p.loops)
            out << "for " << loop.var << " in " << loop.begin.to_string() << ".." << loop.end.to_string() << " ";
        out << to_string(p.kind) << " ";
        for (std::size_t k = 0; k < p.qubits.size(); ++k) out << (k ? ", " : "") << p.qubits[k].to_string();
        if (p.parameterized) {
            out << " param";
        } else if (!p.fixed_angles.empty()) {
            out << " angle";
            for (double a : p.fixed_angles) out << " " << format_angle(a);
        }
        out << "\n";
    }
}

int catalog_group(const CircuitTemplate& t) {
    if (is_benchmark_id(t.id)) return 0;
    if (t.max_width == 1) return 1;
    return 2;
}

}  // namespace

CircuitTemplate parse_template_file(std::string_view text) {
    CircuitTemplate tmpl;
    Section section = Section::Header;
    bool saw_layer = false;
    bool saw_prologue = false;
    std::set<std::string> seen_keys;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::string line = strip_comment(raw);
        const std::string content = trim(line);
        if (content.empty()) continue;
        const int indent = static_cast<int>(line.find_first_not_of(" \t")) + 1;

        // Header or section marker: "<key>:" at the start of the line.
        const auto colon = content.find(':');
        if (colon != std::string::npos) {
            const std::string key = trim(content.substr(0, colon));
            const std::string value = trim(content.substr(colon + 1));
            const int value_col = indent + static_cast<int>(content.find_first_not_of(" \t", colon + 1));
            if (key == "layer" || key == "prologue") {
                if (!value.empty()) throw TemplateError("'" + key + ":' takes no value", line_no, value_col);
                if (key == "layer") {
                    if (saw_layer) throw TemplateError("duplicate 'layer:' section", line_no, indent);
                    saw_layer = true;
                    section = Section::Layer;
                } else {
                    if (saw_prologue) throw TemplateError("duplicate 'prologue:' section", line_no, indent);
                    if (saw_layer) throw TemplateError("'prologue:' must precede 'layer:'", line_no, indent);
                    saw_prologue = true;
                    section = Section::Prologue;
                }
                continue;
            }
            if (kHeaderKeys.count(key)) {
                if (section != Section::Header)
                    throw TemplateError("header '" + key + "' after gate section", line_no, indent);
                if (!seen_keys.insert(key).second)
                    throw TemplateError("duplicate header '" + key + "'", line_no, indent);
                if (key == "id") {
                    if (value.empty() || value.find_first_of(" \t,") != std::string::npos)
                        throw TemplateError("id must be a non-empty word", line_no, value_col);
                    tmpl.id = value;
                } else if (key == "description") {
                    tmpl.description = value;
                } else if (key == "connectivity") {
                    try {
                        tmpl.connectivity = connectivity_from_string(value);
                    } catch (const std::invalid_argument& e) {
                        throw TemplateError(e.what(), line_no, value_col);
                    }
                } else if (key == "sampler") {
                    try {
                        tmpl.sampler = sampler_from_string(value);
                    } catch (const std::invalid_argument& e) {
                        throw TemplateError(e.what(), line_no, value_col);
                    }
                } else if (key == "min-width") {
                    tmpl.min_width = parse_int_header(value, line_no, value_col);
                } else {
                    tmpl.max_width = parse_int_header(value, line_no, value_col);
                }
                continue;
            }
            if (section == Section::Header) throw TemplateError("unknown header '" + key + "'", line_no, indent);
            // Otherwise a gate line using ':' after a loop range; fall through.
        }

        if (section == Section::Header)
            throw TemplateError("gate line outside a 'prologue:' or 'layer:' section", line_no, indent);
        LineParser parser(tokenize_line(line, line_no), line_no);
        auto pat = parser.parse({});
        (section == Section::Layer ? tmpl.layer : tmpl.prologue).push_back(std::move(pat));
    }

    if (tmpl.id.empty()) throw TemplateError("missing 'id:' header");
    if (!saw_layer) throw TemplateError("missing 'layer:' section");
    if (tmpl.min_width < 1 || tmpl.max_width > kMaxQubits || tmpl.min_width > tmpl.max_width)
        throw TemplateError("invalid width range [" + std::to_string(tmpl.min_width) + ", " +
                            std::to_string(tmpl.max_width) + "]");
    return tmpl;
}

std::string serialize_template(const CircuitTemplate& tmpl) {
    std::ostringstream out;
    out << "id: " << tmpl.id << "\n";
    if (!tmpl.description.empty()) out << "description: " << tmpl.description << "\n";
    out << "connectivity: " << to_string(tmpl.connectivity) << "\n";
    if (tmpl.sampler != Sampler::Uniform) out << "sampler: " << to_string(tmpl.sampler) << "\n";
    out << "min-width: " << tmpl.min_width << "\n";
    out << "max-width: " << tmpl.max_width << "\n";
    if (!tmpl.prologue.empty()) {
        out << "prologue:\n";
        write_patterns(out, tmpl.prologue);
    }
    out << "layer:\n";
    write_patterns(out, tmpl.layer);
    return out.str();
}

void sort_catalog(std::vector<CircuitTemplate>& templates) {
    std::stable_sort(templates.begin(), templates.end(), [](const auto& a, const auto& b) {
        const int ga = catalog_group(a);
        const int gb = catalog_group(b);
        return ga != gb ? ga < gb : a.id < b.id;
    });
}

std::vector<CircuitTemplate> load_template_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("template directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".pqc") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<CircuitTemplate> out;
    std::set<std::string> ids;
    for (const auto& file : files) {
        std::ifstream in(file);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            out.push_back(parse_template_file(buf.str()));
        } catch (const TemplateError& e) {
            throw TemplateError(file.filename().string() + ": " + e.what());
        }
        if (!ids.insert(out.back().id).second)
            throw TemplateError("duplicate template id '" + out.back().id + "' in " + file.string());
    }
    sort_catalog(out);
    return out;
}

}  // namespace pqc
