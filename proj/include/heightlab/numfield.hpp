#pragma once

#include "heightlab/errors.hpp"
#include "heightlab/numeric.hpp"
#include "heightlab/real.hpp"

#include <optional>
#include <string>
#include <vector>

namespace heightlab {

/// A real quadratic or imaginary quadratic field Q(sqrt(d)), d squarefree,
/// d not in {0, 1}. The rational field is represented by the *absence* of a
/// QuadField (std::optional<QuadField> == nullopt throughout).
class QuadField {
public:
    /// Validates that d is squarefree (by factorization) and d not in {0,1}.
    explicit QuadField(const Int& d);

    /// Builds Q(sqrt(squarefree part of disc)); also returns t with
    /// disc = t^2 * d. Throws DomainError if disc is a perfect square.
    /// The budget caps the factorization effort on huge discriminants.
    static std::pair<QuadField, Int> from_discriminant(const Int& disc,
                                                       const FactorBudget& budget = kFullBudget);

    const Int& d() const { return d_; }
    Int discriminant() const; // d if d = 1 mod 4, else 4d
    bool is_real() const { return d_ > 0; }

    friend bool operator==(const QuadField& a, const QuadField& b) { return a.d_ == b.d_; }
    friend bool operator!=(const QuadField& a, const QuadField& b) { return a.d_ != b.d_; }

private:
    struct Unchecked {};
    QuadField(const Int& d, Unchecked) : d_(d) {}
    Int d_;
};

using FieldTag = std::optional<QuadField>; // nullopt = Q

inline int field_degree(const FieldTag& K) { return K ? 2 : 1; }

/// Element a + b*sqrt(d) of Q or Q(sqrt(d)). Rational elements carry b = 0
/// and no field tag. Arithmetic is exact.
class QuadElem {
public:
    QuadElem() : a_(0), b_(0) {}
    QuadElem(const Rat& a) : a_(a), b_(0) {}          // rational element
    QuadElem(long a) : a_(a), b_(0) {}
    QuadElem(const Rat& a, const Rat& b, const FieldTag& K);

    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }
    const FieldTag& field() const { return K_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    /// a^2 - d b^2, exact.
    Rat norm() const;
    Rat trace() const { return 2 * a_; }

    QuadElem conjugate() const;

    /// [x] for rational x, [x, conjugate(x)] otherwise.
    std::vector<QuadElem> conjugates() const;

    friend QuadElem operator+(const QuadElem& x, const QuadElem& y);
    friend QuadElem operator-(const QuadElem& x, const QuadElem& y);
    friend QuadElem operator*(const QuadElem& x, const QuadElem& y);
    friend QuadElem operator/(const QuadElem& x, const QuadElem& y);
    QuadElem operator-() const;
    friend bool operator==(const QuadElem& x, const QuadElem& y);
    friend bool operator!=(const QuadElem& x, const QuadElem& y) { return !(x == y); }

    QuadElem pow(unsigned long e) const;

    /// x = (A + B sqrt(d)) / C with integral A, B and C > 0.
    struct Integralized {
        Int A, B, C;
    };
    Integralized integralized() const;

    std::string str() const;

private:
    Rat a_, b_;
    FieldTag K_;
    void normalize_tag();
};

enum class PlaceKind { RealEmbedding, ComplexPair, Finite };
enum class Splitting { None, Split, Inert, Ramified };

/// One place of Q or of a quadratic field, with splitting data and the
/// normalization weights from the product formula.
struct Place {
    PlaceKind kind = PlaceKind::Finite;
    FieldTag field;        // nullopt: place of Q
    int embedding_sign = +1; // real embeddings: image of sqrt(d) is sign*sqrt(d)
    Int p = 0;             // finite places: the rational prime below
    Splitting splitting = Splitting::None;
    int root_id = 0;       // split places: 0 = canonical Hensel branch, 1 = other
    int e = 1;             // ramification index
    int f = 1;             // residue degree
    int local_degree = 1;  // e*f = [K_w : Q_v]

    bool is_finite() const { return kind == PlaceKind::Finite; }
    bool is_archimedean() const { return !is_finite(); }

    /// The image of this place under Gal(K/Q): swaps the two split places
    /// above p and the two real embeddings; fixes everything else.
    Place galois_conjugate() const;

    std::string str() const;
};

/// A finite set of base places of Q: optionally the archimedean place plus
/// a set of rational primes. Lifts to S_L on a quadratic field on the fly.
class PlaceSetS {
public:
    PlaceSetS() = default;
    PlaceSetS(bool with_infinity, std::vector<Int> primes);

    bool has_infinity() const { return has_inf_; }
    const std::vector<Int>& primes() const { return primes_; }
    bool contains_prime(const Int& p) const;
    std::size_t size() const { return primes_.size() + (has_inf_ ? 1 : 0); }

    /// All places of K (or Q) above the members of S.
    std::vector<Place> lift(const FieldTag& K) const;

    std::string str() const;

private:
    bool has_inf_ = false;
    std::vector<Int> primes_; // sorted, unique, each verified prime
};

/// Dedekind splitting of p in K.
Splitting splitting_type(const QuadField& K, const Int& p);

/// All places of K above the rational prime p, with e, f populated.
std::vector<Place> places_above(const FieldTag& K, const Int& p);
/// All archimedean places of K.
std::vector<Place> archimedean_places(const FieldTag& K);

/// Normalized additive valuation of x at a finite place P (surjective onto Z).
long valuation(const QuadElem& x, const Place& P);

/// log |x|_P under the product-formula normalization
/// (|p|_v = p^(-[K_v:Q_p]/[K:Q]), |x|_v = |sigma(x)|^([K_v:R]/[K:Q])).
Real log_abs(const QuadElem& x, const Place& P, mpfr_prec_t prec = kDefaultPrec);

/// |sigma(x)| at a real embedding, cancellation-safe.
Real embedding_abs_value(const QuadElem& x, int sgn_of_sqrt, mpfr_prec_t work);

/// Sum of log_abs over all places: mathematically zero; returns the residual.
Real product_formula_defect(const QuadElem& x, mpfr_prec_t prec = kDefaultPrec);

/// The finite places of K where x can have nonzero valuation (places above
/// the primes dividing norm numerator/denominator data of x).
std::vector<Place> support_places(const QuadElem& x);

/// True iff valuation(x, P) = 0 for every finite place P of K outside S.
bool is_s_unit(const QuadElem& x, const PlaceSetS& S);

} // namespace heightlab
