#include "fconv/descriptor.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fconv/error.hpp"

namespace fconv {

double DescriptorNode::Arg::number() const {
    if (const auto* d = std::get_if<double>(&value)) return *d;
    throw ParseError("expected a number, got descriptor '" + node().name + "'");
}

const DescriptorNode& DescriptorNode::Arg::node() const {
    if (const auto* n = std::get_if<std::shared_ptr<const DescriptorNode>>(&value)) return **n;
    throw ParseError("expected a descriptor, got a number");
}

void DescriptorNode::expect_arity(std::size_t n) const { expect_arity(n, n); }

void DescriptorNode::expect_arity(std::size_t lo, std::size_t hi) const {
    if (args.size() < lo || args.size() > hi) {
        std::ostringstream os;
        os << "'" << name << "' takes ";
        if (lo == hi)
            os << lo;
        else
            os << lo << ".." << hi;
        os << " argument(s), got " << args.size();
        throw ParseError(os.str());
    }
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    DescriptorNode parse() {
        auto node = parse_node();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters");
        return node;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << "descriptor parse error at position " << pos_ << ": " << msg << " in \""
           << text_ << "\"";
        throw ParseError(os.str());
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string parse_name() {
        skip_ws();
        const auto start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        if (start == pos_ || std::isdigit(static_cast<unsigned char>(text_[start])))
            fail("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    DescriptorNode parse_node() {
        DescriptorNode node;
        node.name = parse_name();
        if (peek('(')) {
            ++pos_;
            if (peek(')')) fail("empty argument list");
            do {
                node.args.push_back(parse_arg());
            } while (peek(',') && (++pos_, true));
            expect(')');
        }
        return node;
    }

    DescriptorNode::Arg parse_arg() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        const bool negative = c == '-';
        const std::size_t look = pos_ + (negative || c == '+' ? 1 : 0);
        if (text_.substr(look, 2) == "pi" &&
            (look + 2 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[look + 2])))) {
            pos_ = look + 2;
            return {{negative ? -std::numbers::pi : std::numbers::pi}};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
            return {{parse_number()}};
        }
        return {{std::make_shared<const DescriptorNode>(parse_node())}};
    }

    double parse_number() {
        const auto start = pos_;
        if (text_[pos_] == '+') ++pos_;
        double value = 0.0;
        const char* first = text_.data() + pos_;
        const char* last = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || !std::isfinite(value)) {
            pos_ = start;
            fail("malformed number");
        }
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

DescriptorNode parse_descriptor(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const DescriptorNode& node) {
    std::ostringstream os;
    os.precision(17);
    os << node.name;
    if (!node.args.empty()) {
        os << '(';
        for (std::size_t i = 0; i < node.args.size(); ++i) {
            if (i) os << ',';
            if (node.args[i].is_number())
                os << node.args[i].number();
            else
                os << to_string(node.args[i].node());
        }
        os << ')';
    }
    return os.str();
}

}  // namespace fconv
