#include "legendre/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace legendre {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += "'" + items[i] + "'";
    }
    return out;
}

std::string failure_message(std::size_t offset, const std::vector<std::string>& expected, const std::string& found) {
    std::ostringstream msg;
    msg << "at offset " << offset << ": expected " << join(expected) << ", found " << found;
    return msg.str();
}

}  // namespace

ParseFailure::ParseFailure(std::size_t offset, std::vector<std::string> expected, const std::string& found)
    : Error(ErrorKind::ParseError, failure_message(offset, expected, found)),
      offset_(offset),
      expected_(std::move(expected)) {}

bool Node::operator==(const Node& other) const {
    if (kind != other.kind || function != other.function || children.size() != other.children.size()) return false;
    if (kind == NodeKind::number && value != other.value) return false;
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (!(*children[i] == *other.children[i])) return false;
    }
    return true;
}

const std::vector<std::string>& expression_functions() {
    static const std::vector<std::string> names{"sin",  "cos",  "tan", "asin", "acos", "atan", "sinh",
                                                "cosh", "exp",  "log", "sqrt", "abs",  "sign"};
    return names;
}

namespace {

NodePtr make(NodeKind kind, std::vector<NodePtr> children = {}, double value = 0.0, std::string fn = {}) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->value = value;
    n->function = std::move(fn);
    n->children = std::move(children);
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip();
        if (pos_ != s_.size()) fail({"+", "-", "*", "/", "^", "end of input"});
        return e;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    std::string found() const {
        if (pos_ >= s_.size()) return "end of input";
        return "'" + std::string(1, s_[pos_]) + "'";
    }
    [[noreturn]] void fail(std::vector<std::string> expected) const { throw ParseFailure(pos_, std::move(expected), found()); }

    NodePtr expr() {
        NodePtr left = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                left = make(NodeKind::add, {left, term()});
            } else if (peek('-')) {
                ++pos_;
                left = make(NodeKind::subtract, {left, term()});
            } else {
                return left;
            }
        }
    }

    NodePtr term() {
        NodePtr left = factor();
        while (true) {
            if (peek('*')) {
                ++pos_;
                left = make(NodeKind::multiply, {left, factor()});
            } else if (peek('/')) {
                ++pos_;
                left = make(NodeKind::divide, {left, factor()});
            } else {
                return left;
            }
        }
    }

    NodePtr factor() {
        NodePtr base = unary();
        if (peek('^')) {
            ++pos_;
            return make(NodeKind::power, {base, factor()});
        }
        return base;
    }

    NodePtr unary() {
        if (peek('-')) {
            ++pos_;
            return make(NodeKind::negate, {unary()});
        }
        return primary();
    }

    NodePtr primary() {
        skip();
        static const std::vector<std::string> kStart{"number", "t", "pi", "e", "function", "(", "-"};
        if (pos_ >= s_.size()) fail(kStart);
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            ++pos_;
            NodePtr inner = expr();
            if (!peek(')')) fail({")"});
            ++pos_;
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            if (name == "t") return make(NodeKind::variable);
            if (name == "pi") return make(NodeKind::constant_pi);
            if (name == "e") return make(NodeKind::constant_e);
            const auto& fns = expression_functions();
            if (std::find(fns.begin(), fns.end(), name) == fns.end()) {
                pos_ = start;
                std::vector<std::string> expected{"t", "pi", "e"};
                expected.insert(expected.end(), fns.begin(), fns.end());
                throw ParseFailure(start, expected, "'" + name + "'");
            }
            if (!peek('(')) fail({"("});
            ++pos_;
            NodePtr arg = expr();
            if (!peek(')')) fail({")"});
            ++pos_;
            return make(NodeKind::call, {arg}, 0.0, name);
        }
        fail(kStart);
    }

    NodePtr number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            const std::size_t from = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return pos_ - from;
        };
        std::size_t count = digits();
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            count += digits();
        }
        if (count == 0) {
            pos_ = start;
            fail({"digit"});
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            // only an exponent when digits follow; otherwise 'e' is left for the caller
            std::size_t look = pos_ + 1;
            if (look < s_.size() && (s_[look] == '+' || s_[look] == '-')) ++look;
            if (look < s_.size() && std::isdigit(static_cast<unsigned char>(s_[look]))) {
                pos_ = look;
                digits();
            }
        }
        double v = 0.0;
        const auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (res.ec != std::errc() || !std::isfinite(v)) {
            pos_ = start;
            throw ParseFailure(start, {"finite number"}, "'" + s_.substr(start, res.ptr - s_.data() - start) + "'");
        }
        return make(NodeKind::number, {}, v);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

[[noreturn]] void domain_error(const std::string& fn, double x) {
    std::ostringstream msg;
    msg << fn << " is undefined at " << x;
    throw Error(ErrorKind::EvalError, msg.str());
}

double apply(const std::string& fn, double x) {
    if (fn == "sin") return std::sin(x);
    if (fn == "cos") return std::cos(x);
    if (fn == "tan") return std::tan(x);
    if (fn == "asin") {
        if (x < -1 || x > 1) domain_error(fn, x);
        return std::asin(x);
    }
    if (fn == "acos") {
        if (x < -1 || x > 1) domain_error(fn, x);
        return std::acos(x);
    }
    if (fn == "atan") return std::atan(x);
    if (fn == "sinh") return std::sinh(x);
    if (fn == "cosh") return std::cosh(x);
    if (fn == "exp") return std::exp(x);
    if (fn == "log") {
        if (!(x > 0)) domain_error(fn, x);
        return std::log(x);
    }
    if (fn == "sqrt") {
        if (x < 0) domain_error(fn, x);
        return std::sqrt(x);
    }
    if (fn == "abs") return std::abs(x);
    if (fn == "sign") return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
    throw Error(ErrorKind::EvalError, "unknown function " + fn);
}

double eval(const Node& n, double t) {
    switch (n.kind) {
        case NodeKind::number: return n.value;
        case NodeKind::variable: return t;
        case NodeKind::constant_pi: return M_PI;
        case NodeKind::constant_e: return M_E;
        case NodeKind::negate: return -eval(*n.children[0], t);
        case NodeKind::add: return eval(*n.children[0], t) + eval(*n.children[1], t);
        case NodeKind::subtract: return eval(*n.children[0], t) - eval(*n.children[1], t);
        case NodeKind::multiply: return eval(*n.children[0], t) * eval(*n.children[1], t);
        case NodeKind::divide: {
            const double d = eval(*n.children[1], t);
            if (d == 0.0) throw Error(ErrorKind::EvalError, "division by zero");
            return eval(*n.children[0], t) / d;
        }
        case NodeKind::power: {
            const double b = eval(*n.children[0], t), x = eval(*n.children[1], t);
            const double r = std::pow(b, x);
            if (std::isnan(r)) {
                std::ostringstream msg;
                msg << b << "^" << x << " is undefined";
                throw Error(ErrorKind::EvalError, msg.str());
            }
            return r;
        }
        case NodeKind::call: return apply(n.function, eval(*n.children[0], t));
    }
    return 0.0;
}

bool is_constant(const Node& n) {
    if (n.kind == NodeKind::variable) return false;
    return std::all_of(n.children.begin(), n.children.end(), [](const NodePtr& c) { return is_constant(*c); });
}

void collect_warnings(const Node& n, std::vector<std::string>& out) {
    for (const NodePtr& c : n.children) collect_warnings(*c, out);
    if (n.kind == NodeKind::call && is_constant(*n.children[0])) {
        try {
            (void)eval(n, 0.0);
        } catch (const Error& e) {
            out.emplace_back(e.what());
        }
    }
}

std::string number_text(double v) {
    char buf[32];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

// Binding levels: 1 additive, 2 multiplicative, 3 power, 4 negation, 5 atoms.
int level(const Node& n) {
    switch (n.kind) {
        case NodeKind::add:
        case NodeKind::subtract: return 1;
        case NodeKind::multiply:
        case NodeKind::divide: return 2;
        case NodeKind::power: return 3;
        case NodeKind::negate: return 4;
        default: return 5;
    }
}

std::string wrap(const Node& n, bool parens) {
    const std::string s = pretty_print(n);
    return parens ? "(" + s + ")" : s;
}

}  // namespace

std::string pretty_print(const Node& n) {
    switch (n.kind) {
        case NodeKind::number: return number_text(n.value);
        case NodeKind::variable: return "t";
        case NodeKind::constant_pi: return "pi";
        case NodeKind::constant_e: return "e";
        case NodeKind::call: return n.function + "(" + pretty_print(*n.children[0]) + ")";
        case NodeKind::negate: return "-" + wrap(*n.children[0], level(*n.children[0]) < 4);
        case NodeKind::power:
            // the base is a unary, the exponent a factor
            return wrap(*n.children[0], level(*n.children[0]) < 4) + "^" + wrap(*n.children[1], level(*n.children[1]) < 3);
        case NodeKind::add:
        case NodeKind::subtract:
        case NodeKind::multiply:
        case NodeKind::divide: {
            const int me = level(n);
            const char* op = n.kind == NodeKind::add ? " + " : n.kind == NodeKind::subtract ? " - " : n.kind == NodeKind::multiply ? "*" : "/";
            return wrap(*n.children[0], level(*n.children[0]) < me) + op + wrap(*n.children[1], level(*n.children[1]) <= me);
        }
    }
    return {};
}

Expression::Expression(NodePtr root, std::vector<std::string> warnings)
    : root_(std::move(root)), warnings_(std::move(warnings)) {}

double Expression::operator()(double t) const { return eval(*root_, t); }

std::string Expression::to_string() const { return pretty_print(*root_); }

Expression parse_expression(const std::string& text) {
    Parser p(text);
    NodePtr root = p.parse();
    std::vector<std::string> warnings;
    collect_warnings(*root, warnings);
    return Expression(std::move(root), std::move(warnings));
}

}  // namespace legendre
