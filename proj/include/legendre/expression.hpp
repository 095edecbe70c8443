#pragma once

#include <memory>
#include <string>
#include <vector>

#include "legendre/error.hpp"

namespace legendre {

enum class NodeKind { number, variable, constant_pi, constant_e, negate, add, subtract, multiply, divide, power, call };

struct Node {
    NodeKind kind = NodeKind::number;
    double value = 0.0;    // number
    std::string function;  // call
    std::vector<std::shared_ptr<const Node>> children;

    bool operator==(const Node& other) const;
};
using NodePtr = std::shared_ptr<const Node>;

/// Raised by parse_expression; offset is the byte offset of the offending token.
class ParseFailure : public Error {
public:
    ParseFailure(std::size_t offset, std::vector<std::string> expected, const std::string& found);
    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Arithmetic expression in the free variable t.
class Expression {
public:
    explicit Expression(NodePtr root, std::vector<std::string> warnings = {});

    /// Throws EvalError outside the domain of log, sqrt, asin, acos, or on division by zero.
    double operator()(double t) const;
    const Node& root() const { return *root_; }
    NodePtr root_ptr() const { return root_; }
    /// Domain problems already visible in constant subexpressions.
    const std::vector<std::string>& warnings() const { return warnings_; }
    std::string to_string() const;

private:
    NodePtr root_;
    std::vector<std::string> warnings_;
};

Expression parse_expression(const std::string& text);

/// Prints with the fewest parentheses that parse back to the same tree.
std::string pretty_print(const Node& node);

const std::vector<std::string>& expression_functions();

}  // namespace legendre
