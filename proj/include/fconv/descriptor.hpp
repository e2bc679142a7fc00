#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fconv {

// Parse tree of the compact text form shared by spatial function and symbol
// descriptors:
//
//   descriptor := name | name '(' arg (',' arg)* ')'
//   arg        := number | descriptor
//   number     := decimal literal, 'pi', or '-pi'
//
// Examples: "arctan", "indicator(-1,1)", "shift(truncate(arctan,4),2.5)".
struct DescriptorNode {
    struct Arg;

    std::string name;
    std::vector<Arg> args;

    struct Arg {
        std::variant<double, std::shared_ptr<const DescriptorNode>> value;

        bool is_number() const { return std::holds_alternative<double>(value); }
        double number() const;
        const DescriptorNode& node() const;
    };

    std::size_t arity() const { return args.size(); }
    // Throws ParseError naming `name` when arity differs.
    void expect_arity(std::size_t n) const;
    void expect_arity(std::size_t lo, std::size_t hi) const;
};

// Throws ParseError with the offending position on malformed input.
DescriptorNode parse_descriptor(std::string_view text);

std::string to_string(const DescriptorNode& node);

}  // namespace fconv
