#include "aidlab/family_grammar.hpp"

#include "aidlab/serialize.hpp"

namespace aidlab {

namespace {

int parse_int(const std::string& text, const std::string& spec)
{
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) throw ParseError("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad integer '" + text + "' in family spec '" + spec + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t k = s.find(sep, start);
        out.push_back(s.substr(start, k == std::string::npos ? std::string::npos : k - start));
        if (k == std::string::npos) return out;
        start = k + 1;
    }
}

}  // namespace

Matrix<Rational> companion_blocks(const std::vector<std::vector<Rational>>& polys)
{
    int total = 0;
    for (const auto& p : polys) total += static_cast<int>(p.size()) - 1;
    Matrix<Rational> m = zero_matrix<Rational>(total, total);
    int off = 0;
    for (const auto& p : polys) {
        const int k = static_cast<int>(p.size()) - 1;
        if (k < 1 || p.back() != 1) throw std::invalid_argument("companion blocks need monic polynomials of degree >= 1");
        std::vector<Rational> low(p.begin(), p.end());
        m.block(off, off, k, k) = companion_matrix(low);
        off += k;
    }
    return m;
}

FamilySpec parse_family(const std::string& text)
{
    FamilySpec spec;
    spec.label = text;
    const std::size_t colon = text.find(':');
    const std::string head = text.substr(0, colon);
    const std::string arg = colon == std::string::npos ? std::string() : text.substr(colon + 1);
    auto need_arg = [&] {
        if (arg.empty()) throw ParseError("family '" + head + "' needs a parameter, e.g. '" + head + ":9'");
    };
    auto no_arg = [&] {
        if (colon != std::string::npos) throw ParseError("family '" + head + "' takes no parameter");
    };
    if (head == "L" || head == "Q" || head == "R" || head == "W" || head == "F" || head == "ex32") {
        need_arg();
        spec.n = parse_int(arg, text);
        spec.family = head == "L"   ? Family::L
                      : head == "Q" ? Family::Q
                      : head == "R" ? Family::R
                      : head == "W" ? Family::W
                      : head == "F" ? Family::F
                                    : Family::example_3_2;
    } else if (head == "heis") {
        no_arg();
        spec.family = Family::heisenberg;
    } else if (head == "ex33") {
        no_arg();
        spec.family = Family::example_3_3;
    } else if (head == "sl2nat") {
        no_arg();
        spec.family = Family::sl2_natural;
    } else if (head == "free") {
        need_arg();
        auto parts = split(arg, ',');
        if (parts.size() != 2) throw ParseError("free nilpotent spec is 'free:r,c'");
        spec.family = Family::free_nilpotent;
        spec.r = parse_int(parts[0], text);
        spec.c = parse_int(parts[1], text);
    } else if (head == "aa") {
        need_arg();
        std::vector<std::vector<Rational>> polys;
        for (const auto& part : split(arg, ';')) {
            auto p = parse_univariate(part, 'x');
            if (p.size() < 2 || p.back() != 1) throw ParseError("'" + part + "' is not a monic polynomial of degree >= 1");
            polys.push_back(std::move(p));
        }
        spec.family = Family::almost_abelian;
        spec.action = companion_blocks(polys);
    } else {
        throw ParseError("unknown family '" + head + "' (expected L:n Q:n R:n W:n F:n heis free:r,c aa:<polys> ex32:n ex33 sl2nat)");
    }
    return spec;
}

}  // namespace aidlab
