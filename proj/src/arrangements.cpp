#include "heightlab/arrangements.hpp"

#include <algorithm>
#include <sstream>

namespace heightlab {

LineP2::LineP2(const Rat& a, const Rat& b, const Rat& c) {
    Int L = lcm(lcm(den(a), den(b)), den(c));
    Int A = num(a) * (L / den(a));
    Int B = num(b) * (L / den(b));
    Int C = num(c) * (L / den(c));
    Int g = gcd(gcd(A, B), C);
    if (g == 0) throw DomainError("line needs a nonzero coefficient");
    A /= g;
    B /= g;
    C /= g;
    Int lead = A != 0 ? A : (B != 0 ? B : C);
    if (lead < 0) {
        A = -A;
        B = -B;
        C = -C;
    }
    a_ = A;
    b_ = B;
    c_ = C;
}

HyperForm LineP2::form() const {
    return HyperForm::linear({Rat(a_), Rat(b_), Rat(c_)});
}

QuadElem LineP2::evaluate(const ProjPoint& P) const {
    if (P.n() != 2) throw DomainError("LineP2 lives in P^2");
    const auto& x = P.coords();
    return QuadElem(Rat(a_)) * x[0] + QuadElem(Rat(b_)) * x[1] + QuadElem(Rat(c_)) * x[2];
}

std::string LineP2::str() const {
    std::ostringstream os;
    os << "[" << a_.get_str() << "," << b_.get_str() << "," << c_.get_str() << "]";
    return os.str();
}

ProjPoint line_intersection(const LineP2& l, const LineP2& m) {
    Int x = l.b() * m.c() - l.c() * m.b();
    Int y = l.c() * m.a() - l.a() * m.c();
    Int z = l.a() * m.b() - l.b() * m.a();
    return ProjPoint({QuadElem(Rat(x)), QuadElem(Rat(y)), QuadElem(Rat(z))});
}

bool general_position(const std::vector<LineP2>& lines) {
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            if (lines[i] == lines[j]) return false;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
            for (std::size_t k = j + 1; k < lines.size(); ++k) {
                IntMatrix m{{lines[i].a(), lines[i].b(), lines[i].c()},
                            {lines[j].a(), lines[j].b(), lines[j].c()},
                            {lines[k].a(), lines[k].b(), lines[k].c()}};
                if (bareiss_det(std::move(m)) == 0) return false;
            }
    return true;
}

bool m_subgeneral(const std::vector<HyperForm>& forms, int m) {
    int q = static_cast<int>(forms.size());
    if (q <= m) throw TooFewForms("need more than m forms");
    if (forms.empty()) throw TooFewForms("no forms");
    int n = forms.front().n();
    for (const auto& f : forms) {
        if (f.degree() != 1) throw UnsupportedDegree("m_subgeneral handles linear forms");
        if (f.n() != n) throw DomainError("mixed ambient dimensions");
    }
    auto coeff_row = [&](const HyperForm& f) {
        std::vector<Int> row(static_cast<std::size_t>(n) + 1, Int(0));
        for (auto& [e, c] : f.terms()) {
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] == 1) row[i] = num(c);
        }
        return row;
    };
    std::vector<std::vector<Int>> rows;
    rows.reserve(forms.size());
    for (const auto& f : forms) rows.push_back(coeff_row(f));

    // every (m+1)-subset must have rank n+1
    std::vector<int> idx(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        IntMatrix sub;
        for (int i : idx) sub.push_back(rows[static_cast<std::size_t>(i)]);
        if (bareiss_rank(std::move(sub)) != n + 1) return false;
        int pos = m;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == q - (m + 1 - pos)) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i <= m; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    return true;
}

ProjPoint dual_point(const LineP2& l) {
    return ProjPoint({QuadElem(Rat(l.a())), QuadElem(Rat(l.b())), QuadElem(Rat(l.c()))});
}

std::array<Int, 6> veronese_row(const LineP2& l) {
    const Int &a = l.a(), &b = l.b(), &c = l.c();
    return {a * a, b * b, c * c, a * b, a * c, b * c};
}

RatMatrix conic_dependence(const std::array<LineP2, 6>& lines) {
    RatMatrix m;
    for (const auto& l : lines) {
        auto row = veronese_row(l);
        std::vector<Rat> r;
        r.reserve(6);
        for (auto& v : row) r.emplace_back(v);
        m.push_back(std::move(r));
    }
    return rational_nullspace(std::move(m));
}

bool five_rank_check(const std::vector<LineP2>& lines) {
    if (lines.size() < 5) throw TooFewForms("five_rank_check needs at least 5 lines");
    std::size_t q = lines.size();
    std::array<std::size_t, 5> idx{0, 1, 2, 3, 4};
    while (true) {
        IntMatrix sub;
        for (std::size_t i : idx) {
            auto row = veronese_row(lines[i]);
            sub.emplace_back(row.begin(), row.end());
        }
        if (bareiss_rank(std::move(sub)) != 5) return false;
        int pos = 4;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == q - (5 - static_cast<std::size_t>(pos))) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < 5; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    return true;
}

ProjPoint sym2_embed(const ProjPoint& P, const ProjPoint& Q) {
    if (P.n() != 2 || Q.n() != 2) throw DomainError("sym2_embed expects P^2 points");
    const auto& x = P.coords();
    const auto& y = Q.coords();
    std::vector<QuadElem> im(6);
    im[0] = x[0] * y[0];
    im[1] = x[1] * y[1];
    im[2] = x[2] * y[2];
    im[3] = x[0] * y[1] + y[0] * x[1];
    im[4] = x[0] * y[2] + y[0] * x[2];
    im[5] = x[1] * y[2] + y[1] * x[2];
    return ProjPoint(std::move(im));
}

ProjPoint sym2_point(const ProjPoint& P) {
    if (P.degree_tag() != 2)
        throw UnsupportedDegree("sym2_point expects a quadratic point; use sym2_embed(P,P)");
    ProjPoint im = sym2_embed(P, P.conjugate());
    if (im.field()) throw DomainError("sym2_point image must be rational");
    return im;
}

HyperForm line_sq_hyperplane(const LineP2& l) {
    auto row = veronese_row(l);
    std::vector<Rat> coeffs;
    coeffs.reserve(6);
    for (auto& v : row) coeffs.emplace_back(v);
    return HyperForm::linear(coeffs);
}

Real height_product_defect(const ProjPoint& P, const ProjPoint& Q, mpfr_prec_t prec) {
    ProjPoint im = sym2_embed(P, Q);
    return height(im, prec) - height(P, prec) - height(Q, prec);
}

Real proximity_transfer_defect(const LineP2& l, const PlaceSetS& S, const ProjPoint& P,
                               mpfr_prec_t prec) {
    if (l.contains(P) || l.contains(P.conjugate())) throw PointOnDivisor();
    ProjPoint im = sym2_point(P);
    Real lhs = proximity(line_sq_hyperplane(l), S, im, prec);
    Real rhs = proximity(l.form(), S, P, prec);
    return lhs - (Real::of(2L, prec + kGuardBits) * rhs);
}

std::vector<LineP2> candidate_exceptional_lines(const std::vector<LineP2>& lines) {
    // all pairwise intersection points, deduplicated
    std::vector<ProjPoint> pts;
    for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            if (lines[i] == lines[j]) continue;
            ProjPoint p = line_intersection(lines[i], lines[j]);
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
        }
    std::vector<LineP2> out = lines;
    auto add = [&](const LineP2& l) {
        if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    };
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const auto& a = pts[i].coords();
            const auto& b = pts[j].coords();
            Rat x = a[1].a() * b[2].a() - a[2].a() * b[1].a();
            Rat y = a[2].a() * b[0].a() - a[0].a() * b[2].a();
            Rat z = a[0].a() * b[1].a() - a[1].a() * b[0].a();
            if (x == 0 && y == 0 && z == 0) continue;
            LineP2 cand(x, y, z);
            int incident = 0;
            for (const auto& p : pts)
                if (cand.contains(p)) ++incident;
            if (incident >= 4) add(cand);
        }
    return out;
}

} // namespace heightlab
