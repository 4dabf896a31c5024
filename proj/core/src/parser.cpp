// Part of geomech. SPDX-License-Identifier: MIT

#include <geomech/parser.hpp>

#include <cctype>

namespace geomech
{

namespace
{

class parser
{
public:
    parser(const coord_system& cs, const std::string& text) : cs_(cs), s_(text) {}

    expr_ptr run()
    {
        expr_ptr e = parse_sum();
        skip_ws();
        if (pos_ != s_.size())
            throw parse_error("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return e;
    }

private:
    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek()
    {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    expr_ptr parse_sum()
    {
        expr_ptr e = parse_product();
        for (;;) {
            if (accept('+'))
                e = e + parse_product();
            else if (accept('-'))
                e = e - parse_product();
            else
                return e;
        }
    }

    expr_ptr parse_product()
    {
        expr_ptr e = parse_unary();
        for (;;) {
            if (accept('*'))
                e = e * parse_unary();
            else if (accept('/'))
                e = e / parse_unary();
            else
                return e;
        }
    }

    expr_ptr parse_unary()
    {
        if (accept('-'))
            return -parse_unary();
        return parse_power();
    }

    expr_ptr parse_power()
    {
        expr_ptr base = parse_atom();
        if (!accept('^'))
            return base;
        const std::size_t at = pos_;
        expr_ptr e = parse_unary();
        rat r;
        if (!as_rational(e, r))
            throw parse_error("exponent must be a rational constant", at);
        return make_pow(base, r);
    }

    expr_ptr parse_atom()
    {
        skip_ws();
        if (pos_ >= s_.size())
            throw parse_error("unexpected end of input", pos_);
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_name();
        if (accept('(')) {
            expr_ptr e = parse_sum();
            if (!accept(')'))
                throw parse_error("expected ')'", pos_);
            return e;
        }
        throw parse_error("unexpected '" + std::string(1, c) + "'", pos_);
    }

    expr_ptr parse_number()
    {
        const std::size_t start = pos_;
        bigint intpart = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            intpart = intpart * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        rat value(intpart);
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                throw parse_error("digits expected after decimal point", pos_);
            bigint frac = 0, scale = 1;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                frac = frac * 10 + (s_[pos_] - '0');
                scale *= 10;
                ++pos_;
            }
            value += rat(frac, scale);
        }
        (void)start;
        return make_num(value);
    }

    expr_ptr parse_name()
    {
        const std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        const std::string name = s_.substr(start, pos_ - start);

        const bool is_fn =
            name == "exp" || name == "log" || name == "sin" || name == "cos" || name == "sqrt";
        if (is_fn) {
            if (!accept('('))
                throw parse_error("expected '(' after '" + name + "'", pos_);
            expr_ptr arg = parse_sum();
            if (!accept(')'))
                throw parse_error("expected ')'", pos_);
            if (name == "sqrt")
                return make_pow(arg, rat(1, 2));
            func f = func::exp;
            if (name == "log")
                f = func::log;
            else if (name == "sin")
                f = func::sin;
            else if (name == "cos")
                f = func::cos;
            return make_call(f, arg);
        }

        if (!cs_.knows(name))
            throw parse_error("unknown symbol '" + name + "'", start);
        return make_sym(name);
    }

    const coord_system& cs_;
    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

expr_ptr parse(const coord_system& cs, const std::string& text)
{
    return parser(cs, text).run();
}

} // namespace geomech
