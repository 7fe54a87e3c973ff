#include "aidlab/serialize.hpp"

#include <cctype>

namespace aidlab {

Json field_json(const FieldSpec& f)
{
    if (f.is_rationals()) return Json{{"kind", "Q"}};
    Json mp = Json::array();
    for (const auto& c : f.ext->minpoly()) mp.push_back(to_string(c));
    return Json{{"kind", "ext"}, {"minpoly", mp}};
}

FieldSpec field_from_json(const Json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "Q") return FieldSpec::rationals();
    if (kind != "ext") throw ParseError("field kind must be \"Q\" or \"ext\"");
    std::vector<Rational> mp;
    for (const auto& c : j.at("minpoly")) mp.push_back(parse_rational(c.get<std::string>()));
    return FieldSpec::extension(std::move(mp));
}

namespace {

template <class S>
class PolyParser {
public:
    // single_var != 0: the bare letter names variable 0 of a univariate polynomial
    PolyParser(const std::string& text, int nvars, std::optional<S> gen, char single_var)
        : t_(text), nvars_(nvars), gen_(std::move(gen)), single_(single_var)
    {
    }

    MultiPoly<S> run()
    {
        MultiPoly<S> p = expr();
        skip();
        if (pos_ != t_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("polynomial \"" + t_ + "\": " + what + " at offset " + std::to_string(pos_));
    }
    void skip()
    {
        while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < t_.size() && t_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string digits()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
        if (start == pos_) fail("digits expected");
        return t_.substr(start, pos_ - start);
    }

    MultiPoly<S> expr()
    {
        MultiPoly<S> acc = term();
        while (true) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }
    MultiPoly<S> term()
    {
        MultiPoly<S> acc = unary();
        while (true) {
            if (eat('*')) {
                acc = acc * unary();
            } else if (eat('/')) {
                MultiPoly<S> d = unary();
                if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
                acc *= S(1) / d.constant_term();
            } else {
                return acc;
            }
        }
    }
    MultiPoly<S> unary()
    {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    MultiPoly<S> power()
    {
        MultiPoly<S> base = atom();
        if (eat('^')) {
            const std::string e = digits();
            if (e.size() > 4) fail("exponent too large");
            return base.pow(std::stoi(e));
        }
        return base;
    }
    MultiPoly<S> atom()
    {
        skip();
        if (pos_ >= t_.size()) fail("unexpected end");
        const char c = t_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly<S> p = expr();
            if (!eat(')')) fail("')' expected");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return MultiPoly<S>::constant(nvars_, S(Rational(parse_integer(digits()))));
        }
        if (single_ && c == single_) {
            ++pos_;
            return MultiPoly<S>::variable(nvars_, 0);
        }
        if (!single_ && c == 'x') {
            ++pos_;
            const int i = std::stoi(digits());
            if (i < 1 || i > nvars_) fail("variable index out of range");
            return MultiPoly<S>::variable(nvars_, i - 1);
        }
        if (c == 's' && gen_) {
            ++pos_;
            return MultiPoly<S>::constant(nvars_, *gen_);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string t_;
    std::size_t pos_ = 0;
    int nvars_;
    std::optional<S> gen_;
    char single_;
};

}  // namespace

template <class S>
MultiPoly<S> parse_poly(const std::string& text, int nvars, const std::optional<S>& generator)
{
    return PolyParser<S>(text, nvars, generator, 0).run();
}

template MultiPoly<Rational> parse_poly<Rational>(const std::string&, int, const std::optional<Rational>&);
template MultiPoly<FieldElement> parse_poly<FieldElement>(const std::string&, int, const std::optional<FieldElement>&);

std::vector<Rational> parse_univariate(const std::string& text, char var)
{
    MultiPoly<Rational> p = PolyParser<Rational>(text, 1, std::nullopt, var).run();
    const int d = std::max(p.degree(), 0);
    std::vector<Rational> out(d + 1, Rational(0));
    for (const auto& [m, c] : p.terms()) out[m[0]] = c;
    return out;
}

}  // namespace aidlab
