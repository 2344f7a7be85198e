#pragma once

#include "heightlab/numfield.hpp"

#include <map>
#include <string>
#include <vector>

namespace heightlab {

/// A point of P^n with coordinates in Q or a quadratic field, kept in
/// canonical form: coordinates are ratios against the first nonzero input
/// coordinate, denominators cleared into Z[sqrt(d)], rational integer
/// content removed. The first nonzero coordinate is then rational and
/// positive, so the form is unique under scaling.
class ProjPoint {
public:
    /// Canonicalizes; throws AllZero when every coordinate vanishes.
    explicit ProjPoint(std::vector<QuadElem> raw);

    int n() const { return static_cast<int>(coords_.size()) - 1; }
    const std::vector<QuadElem>& coords() const { return coords_; }

    /// Field generated by the coordinate ratios (nullopt = Q).
    const FieldTag& field() const { return K_; }
    /// delta(P) = [Q(P) : Q], 1 or 2.
    int degree_tag() const { return field_degree(K_); }

    ProjPoint conjugate() const;

    friend bool operator==(const ProjPoint& P, const ProjPoint& Q);
    friend bool operator!=(const ProjPoint& P, const ProjPoint& Q) { return !(P == Q); }

    std::string str() const;

private:
    std::vector<QuadElem> coords_;
    FieldTag K_;
};

/// A hypersurface in P^n over Q: homogeneous form of degree >= 1 with
/// integer coprime coefficients, leading (lex-first) coefficient positive.
class HyperForm {
public:
    using Terms = std::map<std::vector<unsigned>, Rat>;

    HyperForm(int n, Terms terms);

    /// Degree-1 form sum(coeffs[i] * x_i) on P^n with n+1 coefficients.
    static HyperForm linear(const std::vector<Rat>& coeffs);

    int n() const { return n_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }

    QuadElem evaluate(const std::vector<QuadElem>& coords) const;
    QuadElem evaluate(const ProjPoint& P) const { return evaluate(P.coords()); }

    /// C(f) = log(#terms * max |coeff|): every local Weil value of this form
    /// on canonically scaled points is >= -C(f).
    Real coefficient_shift(mpfr_prec_t prec = kDefaultPrec) const;

    friend bool operator==(const HyperForm& a, const HyperForm& b) {
        return a.n_ == b.n_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const HyperForm& a, const HyperForm& b) { return !(a == b); }

    std::string str() const;

private:
    int n_ = 0;
    int degree_ = 0;
    Terms terms_;
};

/// An ordered list of pairwise distinct hypersurfaces of a common P^n.
class Arrangement {
public:
    explicit Arrangement(std::vector<HyperForm> components);

    const std::vector<HyperForm>& components() const { return components_; }
    int n() const { return components_.front().n(); }
    /// deg D = sum of component degrees.
    int degree() const;
    /// C(D) = sum of component coefficient shifts: m_{D,S} <= deg(D) h + C(D).
    Real bound_constant(mpfr_prec_t prec = kDefaultPrec) const;

private:
    std::vector<HyperForm> components_;
};

/// log max_i |x_i|_w over the coordinates of P.
Real logmax_at_place(const ProjPoint& P, const Place& w, mpfr_prec_t prec = kDefaultPrec);

/// h(P) = sum over all places of K(P) of log max_i |x_i|_w. The finite part
/// is evaluated exactly through the norm of the coordinate content ideal.
Real height(const ProjPoint& P, mpfr_prec_t prec = kDefaultPrec);

/// Same sum evaluated on raw coordinates without canonicalization
/// (scaling-invariance oracle; also accepts a field to base-change
/// a rational point into).
Real height_raw(const std::vector<QuadElem>& coords, mpfr_prec_t prec = kDefaultPrec);
Real height_in_field(const ProjPoint& rational_P, const QuadField& K,
                     mpfr_prec_t prec = kDefaultPrec);

/// log H_{K(P)}(P) = relative_height_factor(P) * height(P).
int relative_height_factor(const ProjPoint& P);

/// lambda_{H,w}(P) = deg(H) log max_i |x_i|_w - log |f(P)|_w on canonical
/// coordinates. Throws PointOnDivisor when f(P) = 0.
Real local_weil(const HyperForm& H, const ProjPoint& P, const Place& w,
                mpfr_prec_t prec = kDefaultPrec);

/// m_{D,S}(P): sum of local Weil functions over the places of K(P) above S.
Real proximity(const Arrangement& D, const PlaceSetS& S, const ProjPoint& P,
               mpfr_prec_t prec = kDefaultPrec);
Real proximity(const HyperForm& H, const PlaceSetS& S, const ProjPoint& P,
               mpfr_prec_t prec = kDefaultPrec);

/// (sum over ALL places of lambda_{H,w}(P)) - deg(H) h(P); mathematically 0.
Real weil_sum_defect(const HyperForm& H, const ProjPoint& P,
                     mpfr_prec_t prec = kDefaultPrec);

/// Exact test for h(P) = 0 (all nonzero coordinate ratios roots of unity).
bool is_zero_height(const ProjPoint& P);

struct RatioResult {
    Real h;
    Real m;
    Real ratio;
};

/// The campaign statistic (h, m, m/h). Throws ZeroHeight when h(P) = 0.
RatioResult ratio(const Arrangement& D, const PlaceSetS& S, const ProjPoint& P,
                  mpfr_prec_t prec = kDefaultPrec);

} // namespace heightlab
