#pragma once

#include "heightlab/heights.hpp"
#include "heightlab/linalg.hpp"

#include <array>
#include <vector>

namespace heightlab {

/// A line a x + b y + c z = 0 in P^2 over Q, coefficients coprime integers
/// with the first nonzero one positive.
class LineP2 {
public:
    LineP2(const Rat& a, const Rat& b, const Rat& c);
    explicit LineP2(const std::array<Rat, 3>& v) : LineP2(v[0], v[1], v[2]) {}

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }

    HyperForm form() const; // degree-1 form on P^2
    QuadElem evaluate(const ProjPoint& P) const;
    bool contains(const ProjPoint& P) const { return evaluate(P).is_zero(); }

    friend bool operator==(const LineP2& l, const LineP2& m) {
        return l.a_ == m.a_ && l.b_ == m.b_ && l.c_ == m.c_;
    }
    friend bool operator!=(const LineP2& l, const LineP2& m) { return !(l == m); }

    std::string str() const;

private:
    Int a_, b_, c_;
};

/// Intersection point of two distinct lines (cross product, exact).
ProjPoint line_intersection(const LineP2& l, const LineP2& m);

/// True iff the lines are pairwise distinct and no three are concurrent
/// (all 3x3 coefficient determinants nonzero), computed exactly.
bool general_position(const std::vector<LineP2>& lines);

/// True iff every (m+1)-subset of the linear forms has empty common zero
/// locus in P^n, i.e. full coefficient rank n+1. Throws TooFewForms when
/// the count is <= m; only degree-1 forms are supported.
bool m_subgeneral(const std::vector<HyperForm>& forms, int m);

/// The point (a : b : c) dual to the line ax + by + cz.
ProjPoint dual_point(const LineP2& l);

/// (a^2, b^2, c^2, ab, ac, bc) - the coefficient row of l(x)l(x~) in the
/// symmetric-square coordinates.
std::array<Int, 6> veronese_row(const LineP2& l);

/// Exact nullspace of the 6x6 matrix of veronese rows; a nonzero vector
/// (d1..d6) is the conic d1 x^2 + d2 y^2 + d3 z^2 + d4 xy + d5 xz + d6 yz
/// through the six dual points.
RatMatrix conic_dependence(const std::array<LineP2, 6>& lines);

/// True iff every 5-subset of veronese rows has rank 5 (equivalently, the
/// corresponding P^5 hyperplanes meet in a single point). Throws TooFewForms
/// when fewer than 5 lines are given.
bool five_rank_check(const std::vector<LineP2>& lines);

/// The Sym^2 P^2 -> P^5 image of an unordered pair:
/// (x x~, y y~, z z~, x y~ + x~ y, x z~ + x~ z, y z~ + y~ z).
ProjPoint sym2_embed(const ProjPoint& P, const ProjPoint& Q);

/// sym2_embed(P, conjugate(P)) for a quadratic point: a rational point of
/// P^5. Throws UnsupportedDegree for rational P.
ProjPoint sym2_point(const ProjPoint& P);

/// The hyperplane H in P^5 with phi^* H = L^(2): coefficients veronese_row(l).
HyperForm line_sq_hyperplane(const LineP2& l);

/// height(sym2_embed(P,Q)) - height(P) - height(Q); always <= log 2.
Real height_product_defect(const ProjPoint& P, const ProjPoint& Q,
                           mpfr_prec_t prec = kDefaultPrec);

/// proximity(line_sq_hyperplane(l), S, sym2_point(P)) - 2 proximity(l, S, P)
/// for quadratic P off l; bounded over any fixed family.
Real proximity_transfer_defect(const LineP2& l, const PlaceSetS& S, const ProjPoint& P,
                               mpfr_prec_t prec = kDefaultPrec);

/// Candidate exceptional lines for the arrangement: the lines themselves
/// plus every line through four distinct pairwise-intersection points.
/// Reported as candidates only; no completeness claim.
std::vector<LineP2> candidate_exceptional_lines(const std::vector<LineP2>& lines);

} // namespace heightlab
