#include "lattes/render.hpp"

#include "lattes/errors.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <vector>

namespace lattes::render {

using exact::BigInt;
using exact::Rational;

namespace {

constexpr long scale = 512;

struct Pt {
    Rational x, y;
};

// Clip to one half-plane: keep points with coord(p) on the `keep_below` side of bound.
std::vector<Pt> clip(const std::vector<Pt>& poly, bool on_x, const Rational& bound, bool keep_below)
{
    auto value = [&](const Pt& p) { return on_x ? p.x : p.y; };
    auto inside = [&](const Pt& p) { return keep_below ? value(p) <= bound : value(p) >= bound; };
    std::vector<Pt> out;
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const Pt& a = poly[k];
        const Pt& b = poly[(k + 1) % poly.size()];
        bool ia = inside(a), ib = inside(b);
        if (ia)
            out.push_back(a);
        if (ia != ib) {
            Rational t = (bound - value(a)) / (value(b) - value(a));
            out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
    return out;
}

Rational twice_area(const std::vector<Pt>& poly)
{
    Rational s(0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
        const Pt& a = poly[k];
        const Pt& b = poly[(k + 1) % poly.size()];
        s += a.x * b.y - b.x * a.y;
    }
    return s.abs();
}

std::string num(const Rational& v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v.to_double());
    std::string s = buf;
    return s == "-0" ? "0" : s;
}

} // namespace

Svg render_svg(const pillow::LattesTypeMap& map, unsigned n, const SvgOptions& options)
{
    const Rational width = options.portrait ? Rational(1) : Rational(2);
    const Rational height = options.portrait ? Rational(2) : Rational(1);
    exact::IntMat2 p = exact::mat_pow(map.matrix(), n);
    exact::RatMat2 inv = exact::inv_pow(map.matrix(), n);

    // Index-space box covering L^n(window).
    std::array<std::array<Rational, 2>, 4> corners{{{0, 0}, {width, 0}, {0, height}, {width, height}}};
    BigInt i0, i1, j0, j1;
    for (std::size_t k = 0; k < 4; ++k) {
        Rational wi = Rational(p.a) * corners[k][0] + Rational(p.b) * corners[k][1];
        Rational wj = Rational(p.c) * corners[k][0] + Rational(p.d) * corners[k][1];
        BigInt lo_i = wi.floor(), hi_i = wi.ceil(), lo_j = wj.floor(), hi_j = wj.ceil();
        if (k == 0 || lo_i < i0) i0 = lo_i;
        if (k == 0 || hi_i > i1) i1 = hi_i;
        if (k == 0 || lo_j < j0) j0 = lo_j;
        if (k == 0 || hi_j > j1) j1 = hi_j;
    }
    BigInt box = (i1 - i0) * (j1 - j0);
    if (box > BigInt(std::to_string(options.budget.cells)))
        throw BudgetExceeded("level too deep");
    const std::int64_t ia = exact::to_i64(i0), ib = exact::to_i64(i1);
    const std::int64_t ja = exact::to_i64(j0), jb = exact::to_i64(j1);

    auto plane = [&](const Rational& i, const Rational& j) {
        return Pt{inv.a * i + inv.b * j, inv.c * i + inv.d * j};
    };
    auto sx = [&](const Rational& x) { return num(x * Rational(scale)); };
    auto sy = [&](const Rational& y) { return num((height - y) * Rational(scale)); };

    Svg svg;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << sx(width) << "\" height=\"" << sx(height)
       << "\" viewBox=\"0 0 " << sx(width) << ' ' << sx(height) << "\">\n";
    os << "<!-- matrix " << map.matrix().str() << " level " << n << " -->\n";
    os << "<g stroke=\"none\">\n";
    for (std::int64_t i = ia; i < ib; ++i)
        for (std::int64_t j = ja; j < jb; ++j) {
            Rational ri(BigInt(std::to_string(i))), rj(BigInt(std::to_string(j)));
            std::vector<Pt> poly{plane(ri, rj), plane(ri + 1, rj), plane(ri + 1, rj + 1), plane(ri, rj + 1)};
            poly = clip(poly, true, Rational(0), false);
            poly = clip(poly, true, width, true);
            poly = clip(poly, false, Rational(0), false);
            poly = clip(poly, false, height, true);
            if (poly.size() < 3 || twice_area(poly).sign() == 0)
                continue;
            ++svg.cells;
            bool dark = ((i + j) % 2 + 2) % 2 == 0;
            os << "<polygon data-i=\"" << i << "\" data-j=\"" << j << "\" fill=\""
               << (dark ? "#202020" : "#f4f4f4") << "\" points=\"";
            for (std::size_t k = 0; k < poly.size(); ++k)
                os << (k ? " " : "") << sx(poly[k].x) << ',' << sy(poly[k].y);
            os << "\"/>\n";
        }
    os << "</g>\n";

    // Grid lines: images of {i = k} and {j = k}, clipped (Liang-Barsky).
    os << "<g stroke=\"#7f7f7f\" stroke-width=\"1\" fill=\"none\">\n";
    auto line = [&](Pt a, Pt b) {
        Rational t0(0), t1(1);
        Rational dx = b.x - a.x, dy = b.y - a.y;
        std::array<std::pair<Rational, Rational>, 4> edges{
            {{-dx, a.x}, {dx, width - a.x}, {-dy, a.y}, {dy, height - a.y}}};
        for (const auto& [pk, qk] : edges) {
            if (pk.sign() == 0) {
                if (qk.sign() < 0)
                    return;
                continue;
            }
            Rational r = qk / pk;
            if (pk.sign() < 0)
                t0 = std::max(t0, r);
            else
                t1 = std::min(t1, r);
        }
        if (t0 >= t1)
            return;
        Pt u{a.x + t0 * dx, a.y + t0 * dy}, v{a.x + t1 * dx, a.y + t1 * dy};
        os << "<line x1=\"" << sx(u.x) << "\" y1=\"" << sy(u.y) << "\" x2=\"" << sx(v.x) << "\" y2=\"" << sy(v.y)
           << "\"/>\n";
    };
    Rational rja(BigInt(std::to_string(ja))), rjb(BigInt(std::to_string(jb)));
    Rational ria(BigInt(std::to_string(ia))), rib(BigInt(std::to_string(ib)));
    for (std::int64_t i = ia; i <= ib; ++i) {
        Rational ri(BigInt(std::to_string(i)));
        line(plane(ri, rja), plane(ri, rjb));
    }
    for (std::int64_t j = ja; j <= jb; ++j) {
        Rational rj(BigInt(std::to_string(j)));
        line(plane(ria, rj), plane(rib, rj));
    }
    os << "</g>\n";

    os << "<g fill=\"#d62728\" stroke=\"none\">\n";
    for (auto [x, y] : {std::pair{0L, 0L}, {1L, 0L}, {0L, 1L}, {1L, 1L}})
        os << "<circle class=\"cone\" cx=\"" << sx(Rational(x)) << "\" cy=\"" << sy(Rational(y))
           << "\" r=\"6\"/>\n";
    os << "</g>\n</svg>\n";
    svg.text = os.str();
    return svg;
}

} // namespace lattes::render
