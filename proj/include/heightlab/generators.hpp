#pragma once

#include "heightlab/arrangements.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <vector>

namespace heightlab {

/// Deterministic RNG for samplers and verification suites.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    long uniform(long lo, long hi); // inclusive
    Rat rat(long num_bound, long den_bound);
    Rat rat_nonzero(long num_bound, long den_bound);
    QuadElem elem(const FieldTag& K, long num_bound, long den_bound);
    QuadElem elem_nonzero(const FieldTag& K, long num_bound, long den_bound);

private:
    std::mt19937_64 eng_;
};

/// A binary form pair (F, G) of common degree delta in {1,2}, coprime, given
/// by rational root divisors phi^*(0) = roots of F, phi^*(infty) = roots of G.
class BinaryFormPair {
public:
    /// Each point (alpha : beta) of P^1 becomes the linear factor
    /// beta*x - alpha*y. zeros.size() == poles.size() == delta.
    BinaryFormPair(std::vector<std::array<Int, 2>> zeros,
                   std::vector<std::array<Int, 2>> poles);

    int delta() const { return static_cast<int>(zeros_.size()); }
    const std::vector<std::array<Int, 2>>& zeros() const { return zeros_; }
    const std::vector<std::array<Int, 2>>& poles() const { return poles_; }

    /// Coefficients of F and G: f(x,y) = sum c_i x^(delta-i) y^i.
    const std::vector<Int>& F() const { return F_; }
    const std::vector<Int>& G() const { return G_; }

    QuadElem eval_F(const QuadElem& x, const QuadElem& y) const;
    QuadElem eval_G(const QuadElem& x, const QuadElem& y) const;

    /// The 2*delta root points as degree-1 forms on P^1 (zeros then poles).
    std::vector<HyperForm> root_divisors() const;

private:
    std::vector<std::array<Int, 2>> zeros_, poles_;
    std::vector<Int> F_, G_;
};

/// One evaluated stream element.
struct StreamPoint {
    ProjPoint point;          // ambient point
    ProjPoint param;          // parameter point on P^1
    Rat u;                    // the S-unit that produced it
    Int field_d = 0;          // d of Q(point), 0 when rational
    bool tangency = false;    // fiber had a double root (emitted once)
    Real s_integral_defect;   // max_i |m_{P_i,S}(param) - h(param)|
};

struct PointStream {
    std::string family;
    std::vector<StreamPoint> points;
};

/// All +-prod p^e with |e| <= max_exp over the finite primes of S, in
/// (exponent vector lexicographic, sign) order.
std::vector<Rat> s_units_Q(const PlaceSetS& S, long max_exp);

/// Fibers of phi = F/G over the S-units: solutions of F(x,y) = u G(x,y) on
/// P^1, rational or quadratic by the discriminant. Every emitted point is
/// checked to satisfy the fiber equation exactly and to be S-integral with
/// respect to the root points (defect recorded).
PointStream unit_fibers(const BinaryFormPair& pair, const PlaceSetS& S, long max_exp,
                        mpfr_prec_t prec = kDefaultPrec);

/// The collinear-intersections configuration: 2*delta*n hyperplanes whose
/// groups of n meet at 2*delta points on a line L.
struct ExinfConfig {
    int n = 2;
    int delta = 1;
    std::vector<HyperForm> divisors;            // 2*delta*n degree-1 forms on P^n
    std::vector<LineP2> lines;                  // n == 2 only (same forms)
    std::vector<ProjPoint> span;                // Q0, Q1 spanning L
    std::vector<std::array<Int, 2>> params;     // P_j = s_j Q0 + t_j Q1
    std::vector<ProjPoint> points;              // P_1..P_{2 delta}
    std::vector<std::vector<int>> groups;       // divisor indices meeting at P_j

    Arrangement arrangement() const { return Arrangement(divisors); }
    ProjPoint embed(const Int& s, const Int& t) const;
    ProjPoint embed(const ProjPoint& p1) const;
};

/// Constructs and certifies the configuration; n in {1,2}, delta in {1,2}.
ExinfConfig exinf_config(int n, int delta);

/// Unit fibers on L with phi^*(0), phi^*(infty) splitting P_1..P_{2 delta},
/// embedded into P^n; points of height zero are dropped.
PointStream exinf_points(const ExinfConfig& config, const PlaceSetS& S, long max_exp,
                         mpfr_prec_t prec = kDefaultPrec);

/// The tangent-conic configuration: C: y^2 = xz, four tangent lines at
/// rational points P_i, four chords through the P_i, all eight lines in
/// general position.
struct ExconConfig {
    HyperForm conic = HyperForm(2, {{{0, 2, 0}, Rat(1)}, {{1, 0, 1}, Rat(-1)}}); // y^2 - xz
    std::vector<std::array<Int, 2>> tangency_params; // (1:0),(0:1),(1:1),(1:-1)
    std::vector<std::array<Int, 2>> chord_params;    // second conic point per chord
    std::vector<LineP2> lines;                     // L1..L4 tangents, L5..L8 chords
    std::vector<ProjPoint> points;                 // P_1..P_4

    Arrangement arrangement() const;
    /// nu(s:t) = (s^2 : st : t^2)
    static ProjPoint nu(const Int& s, const Int& t);
    static ProjPoint nu(const ProjPoint& p1);
};

ExconConfig excon_config();

/// Unit fibers on the parameter line with phi^*(0) = (1:0)+(0:1) and
/// phi^*(infty) = (1:1)+(1:-1), mapped through nu onto C.
PointStream excon_points(const ExconConfig& config, const PlaceSetS& S, long max_exp,
                         mpfr_prec_t prec = kDefaultPrec);

/// Random projective points for the monitoring sampler: rational (d = 0) or
/// quadratic in Q(sqrt(d)); coordinates have numerators/denominators up to
/// the bound. Deterministic in the seed.
std::vector<ProjPoint> random_points(std::uint64_t seed, int count, int n,
                                     const Int& d, long coord_bound);

} // namespace heightlab
