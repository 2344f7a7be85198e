#include "heightlab/heights.hpp"

#include "heightlab/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace heightlab {

// ---------------------------------------------------------------- ProjPoint

ProjPoint::ProjPoint(std::vector<QuadElem> raw) {
    if (raw.empty()) throw AllZero();
    std::size_t j = 0;
    while (j < raw.size() && raw[j].is_zero()) ++j;
    if (j == raw.size()) throw AllZero();

    // ratios against the first nonzero coordinate are scaling invariants
    std::vector<QuadElem> ratios;
    ratios.reserve(raw.size());
    for (const auto& c : raw) ratios.push_back(c / raw[j]);

    FieldTag K;
    for (const auto& r : ratios) {
        if (!r.is_rational()) {
            K = r.field();
            break;
        }
    }

    Int L = 1;
    for (const auto& r : ratios) L = lcm(L, lcm(den(r.a()), den(r.b())));
    Int g = 0;
    std::vector<std::pair<Int, Int>> ints;
    ints.reserve(ratios.size());
    for (const auto& r : ratios) {
        Int A = num(r.a()) * (L / den(r.a()));
        Int B = num(r.b()) * (L / den(r.b()));
        g = gcd(g, gcd(A, B));
        ints.emplace_back(std::move(A), std::move(B));
    }
    coords_.reserve(ratios.size());
    for (auto& [A, B] : ints) coords_.emplace_back(Rat(A / g), Rat(B / g), K);
    K_ = K;
}

ProjPoint ProjPoint::conjugate() const {
    std::vector<QuadElem> c;
    c.reserve(coords_.size());
    for (const auto& x : coords_) c.push_back(x.conjugate());
    return ProjPoint(std::move(c));
}

bool operator==(const ProjPoint& P, const ProjPoint& Q) {
    return P.coords_ == Q.coords_;
}

std::string ProjPoint::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ":";
        os << coords_[i].str();
    }
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------- HyperForm

HyperForm::HyperForm(int n, Terms terms) : n_(n) {
    if (n < 1) throw DomainError("ambient dimension must be >= 1");
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->second == 0)
            it = terms.erase(it);
        else
            ++it;
    }
    if (terms.empty()) throw DomainError("form needs a nonzero coefficient");
    long deg = -1;
    for (auto& [e, c] : terms) {
        if (e.size() != static_cast<std::size_t>(n) + 1)
            throw DomainError("exponent vector length mismatch");
        long s = 0;
        for (unsigned u : e) s += u;
        if (deg < 0) deg = s;
        if (s != deg) throw DomainError("form is not homogeneous");
    }
    if (deg < 1) throw DomainError("degree must be >= 1");
    degree_ = static_cast<int>(deg);

    Int L = 1, G = 0;
    for (auto& [e, c] : terms) L = lcm(L, den(c));
    for (auto& [e, c] : terms) G = gcd(G, num(c) * (L / den(c)));
    // leading term = lex-largest exponent vector (the x_0-heavy end)
    int lead = sign(terms.rbegin()->second);
    for (auto& [e, c] : terms) {
        Rat scaled = c * Rat(L) / Rat(G);
        terms_[e] = lead < 0 ? Rat(-scaled) : scaled;
    }
}

HyperForm HyperForm::linear(const std::vector<Rat>& coeffs) {
    if (coeffs.size() < 2) throw DomainError("need at least 2 coefficients");
    Terms t;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        std::vector<unsigned> e(coeffs.size(), 0);
        e[i] = 1;
        t[e] = coeffs[i];
    }
    return HyperForm(static_cast<int>(coeffs.size()) - 1, std::move(t));
}

QuadElem HyperForm::evaluate(const std::vector<QuadElem>& coords) const {
    if (coords.size() != static_cast<std::size_t>(n_) + 1)
        throw DomainError("coordinate count mismatch");
    QuadElem total(Rat(0));
    for (auto& [e, c] : terms_) {
        QuadElem term(c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            term = term * coords[i].pow(e[i]);
        }
        total = total + term;
    }
    return total;
}

Real HyperForm::coefficient_shift(mpfr_prec_t prec) const {
    Int maxc = 0;
    for (auto& [e, c] : terms_) maxc = std::max(maxc, heightlab::abs(num(c)));
    return log_int(Int(static_cast<long>(terms_.size())) * maxc, prec);
}

std::string HyperForm::str() const {
    static const char* names = "xyzuvw";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
        if (!first) os << (sign(c) > 0 ? "+" : "");
        os << c.get_str();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*";
            if (n_ <= 5)
                os << names[i];
            else
                os << "x" << i;
            if (e[i] > 1) os << "^" << e[i];
        }
        first = false;
    }
    return os.str();
}

// -------------------------------------------------------------- Arrangement

Arrangement::Arrangement(std::vector<HyperForm> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw DomainError("empty arrangement");
    for (const auto& h : components_) {
        if (h.n() != components_.front().n())
            throw DomainError("mixed ambient dimensions");
    }
    for (std::size_t i = 0; i < components_.size(); ++i)
        for (std::size_t j = i + 1; j < components_.size(); ++j)
            if (components_[i] == components_[j])
                throw DomainError("arrangement components must be distinct");
}

int Arrangement::degree() const {
    int d = 0;
    for (const auto& h : components_) d += h.degree();
    return d;
}

Real Arrangement::bound_constant(mpfr_prec_t prec) const {
    Real c(prec + kGuardBits);
    for (const auto& h : components_) c += h.coefficient_shift(prec);
    return c;
}

// ------------------------------------------------------------------ heights

namespace {

/// O_K = Z + Z*omega; omega = sqrt d (d != 1 mod 4) or (1+sqrt d)/2.
bool omega_is_half(const Int& d) { return ((d % 4) + 4) % 4 == 1; }

/// Coordinates of x = A + B sqrt(d) (integral) in the basis (1, omega),
/// followed by the coordinates of x*omega.
void push_ok_generators(const Int& A, const Int& B, const Int& d,
                        std::vector<std::array<Int, 2>>& gens) {
    if (!omega_is_half(d)) {
        gens.push_back({A, B});
        gens.push_back({B * d, A}); // x*sqrt(d) = Bd + A sqrt(d)
    } else {
        gens.push_back({A - B, 2 * B});
        gens.push_back({B * ((d - 1) / 2), A + B}); // x*omega
    }
}

/// Norm of the coordinate content ideal (x_0,...,x_n) in O_K; the
/// coordinates must be algebraic integers in Z[sqrt d].
Int content_ideal_norm(const std::vector<QuadElem>& coords, const FieldTag& K) {
    if (!K) {
        Int g = 0;
        for (const auto& x : coords) g = gcd(g, num(x.a()));
        return heightlab::abs(g);
    }
    std::vector<std::array<Int, 2>> gens;
    for (const auto& x : coords) {
        if (x.is_zero()) continue;
        push_ok_generators(num(x.a()), num(x.b()), K->d(), gens);
    }
    return lattice_index_2d(gens);
}

/// Integralize a coordinate vector with a common rational scalar; the field
/// must be consistent across coordinates.
struct IntegralCoords {
    std::vector<QuadElem> coords; // entries have integer a, b
    FieldTag K;
};

IntegralCoords integralize(const std::vector<QuadElem>& raw) {
    IntegralCoords out;
    for (const auto& c : raw) {
        if (c.is_rational()) continue;
        if (out.K && *out.K != *c.field())
            throw DomainError("coordinates from different quadratic fields");
        out.K = c.field();
    }
    Int L = 1;
    for (const auto& c : raw) L = lcm(L, lcm(den(c.a()), den(c.b())));
    for (const auto& c : raw) {
        Rat a = c.a() * L, b = c.b() * L;
        out.coords.emplace_back(a, b, out.K);
    }
    return out;
}

Real arch_logmax(const std::vector<QuadElem>& coords, const FieldTag& K, const Place& w,
                 mpfr_prec_t prec) {
    mpfr_prec_t work = prec + kGuardBits;
    if (w.kind == PlaceKind::ComplexPair) {
        // |sigma(x)|^2 = Norm(x) exactly for d < 0
        Rat best(-1);
        for (const auto& x : coords) {
            if (x.is_zero()) continue;
            best = std::max(best, x.norm());
        }
        return log_rat(best, prec) / Real::of(2 * field_degree(K), work) *
               Real::of(w.local_degree, work);
    }
    Real best(work);
    bool have = false;
    for (const auto& x : coords) {
        if (x.is_zero()) continue;
        Real v = embedding_abs_value(x, w.embedding_sign, work);
        if (!have || best < v) {
            best = v;
            have = true;
        }
    }
    return log(best) / Real::of(field_degree(K), work);
}

/// min_i v_P(x_i) over the nonzero coordinates.
long min_valuation(const std::vector<QuadElem>& coords, const Place& P) {
    bool have = false;
    long best = 0;
    for (const auto& x : coords) {
        if (x.is_zero()) continue;
        long v = valuation(x, P);
        if (!have || v < best) {
            best = v;
            have = true;
        }
    }
    return best;
}

Real finite_weight(const Place& P, mpfr_prec_t prec) {
    // f * log p / [K:Q]
    return log_int(P.p, prec) * Real::of(P.f, prec + kGuardBits) /
           Real::of(field_degree(P.field), prec + kGuardBits);
}

} // namespace

Real logmax_at_place(const ProjPoint& P, const Place& w, mpfr_prec_t prec) {
    if (w.is_finite())
        return Real::of(-min_valuation(P.coords(), w), prec + kGuardBits) *
               finite_weight(w, prec);
    return arch_logmax(P.coords(), P.field(), w, prec);
}

Real height_raw(const std::vector<QuadElem>& raw, mpfr_prec_t prec) {
    auto ic = integralize(raw);
    Real h(prec + kGuardBits);
    for (auto& w : archimedean_places(ic.K)) h += arch_logmax(ic.coords, ic.K, w, prec);
    Int N = content_ideal_norm(ic.coords, ic.K);
    if (N == 0) throw AllZero();
    h -= log_int(N, prec) / Real::of(field_degree(ic.K), prec + kGuardBits);
    return h;
}

Real height(const ProjPoint& P, mpfr_prec_t prec) {
    if (!P.field()) {
        // canonical rational points are coprime integers: only the
        // archimedean place contributes
        Int best = 0;
        for (const auto& x : P.coords()) best = std::max(best, heightlab::abs(num(x.a())));
        return log_int(best, prec);
    }
    return height_raw(P.coords(), prec);
}

Real height_in_field(const ProjPoint& P, const QuadField& K, mpfr_prec_t prec) {
    if (P.field()) throw DomainError("base-change oracle expects a rational point");
    std::vector<QuadElem> coords;
    for (const auto& x : P.coords()) coords.emplace_back(x.a(), Rat(0), FieldTag(K));
    // force the quadratic-field evaluation path place by place
    Real h(prec + kGuardBits);
    FieldTag tag(K);
    for (auto& w : archimedean_places(tag)) h += arch_logmax(coords, tag, w, prec);
    Int g = 0;
    for (const auto& x : P.coords()) g = gcd(g, num(x.a()));
    for (auto& [p, e] : factor(g)) {
        (void)e;
        for (auto& w : places_above(tag, p)) {
            Real lm = Real::of(-min_valuation(coords, w), prec + kGuardBits) *
                      finite_weight(w, prec);
            h += lm;
        }
    }
    return h;
}

int relative_height_factor(const ProjPoint& P) { return P.degree_tag(); }

Real local_weil(const HyperForm& H, const ProjPoint& P, const Place& w,
                mpfr_prec_t prec) {
    QuadElem fP = H.evaluate(P);
    if (fP.is_zero()) throw PointOnDivisor();
    mpfr_prec_t work = prec + kGuardBits;
    if (w.is_finite()) {
        long v = valuation(fP, w) - H.degree() * min_valuation(P.coords(), w);
        return Real::of(v, work) * finite_weight(w, prec);
    }
    Real lm = arch_logmax(P.coords(), P.field(), w, prec);
    Real lf = log_abs(fP, w, prec);
    return Real::of(H.degree(), work) * lm - lf;
}

Real proximity(const Arrangement& D, const PlaceSetS& S, const ProjPoint& P,
               mpfr_prec_t prec) {
    Real m(prec + kGuardBits);
    auto lifted = S.lift(P.field());
    for (const auto& H : D.components()) {
        if (H.evaluate(P).is_zero()) throw PointOnDivisor();
        for (const auto& w : lifted) m += local_weil(H, P, w, prec);
    }
    return m;
}

Real proximity(const HyperForm& H, const PlaceSetS& S, const ProjPoint& P,
               mpfr_prec_t prec) {
    return proximity(Arrangement({H}), S, P, prec);
}

Real weil_sum_defect(const HyperForm& H, const ProjPoint& P, mpfr_prec_t prec) {
    QuadElem fP = H.evaluate(P);
    if (fP.is_zero()) throw PointOnDivisor();
    mpfr_prec_t work = prec + kGuardBits;
    Real total(work);
    for (auto& w : archimedean_places(P.field())) total += local_weil(H, P, w, prec);
    // relevant primes: coordinate content ideal and the value f(P)
    int deg = field_degree(P.field());
    Int content = content_ideal_norm(P.coords(), P.field());
    auto [A, B, C] = fP.integralized();
    Int normnum = B == 0 ? A : Int(A * A - P.field()->d() * B * B);
    // the content is small: factor it fully and strip its primes from the
    // f(P) part so budget-resistant cofactors below are coprime to it
    Int rel = heightlab::abs(normnum * C);
    for (auto& [p, e] : factor(content)) {
        (void)e;
        for (auto& w : places_above(P.field(), p)) total += local_weil(H, P, w, prec);
        while (mpz_divisible_p(rel.get_mpz_t(), p.get_mpz_t())) rel /= p;
    }
    FactorBudget medium{20000, 300000, 1};
    for (auto& [p, part] : factor_partial(rel, medium)) {
        if (part.certified) {
            for (auto& w : places_above(P.field(), p)) total += local_weil(H, P, w, prec);
            continue;
        }
        // places above a budget-resistant cofactor q: the coordinate content
        // is coprime to q, so logmax vanishes there and the lambda total
        // reduces to an exact aggregate of log|f(P)|_w terms
        long vn = padic_val(normnum, p);
        long vc = padic_val(C, p);
        Int qn = normnum / pow(p, static_cast<unsigned long>(vn));
        Int qc = C / pow(p, static_cast<unsigned long>(vc));
        bool uniform = gcd(qn, p) == 1 && gcd(qc, p) == 1;
        if (!uniform) {
            for (auto& [pp, e] : factor(p)) {
                (void)e;
                for (auto& w : places_above(P.field(), pp)) total += local_weil(H, P, w, prec);
            }
            continue;
        }
        long v_norm = vn - (deg == 2 ? 2 : 1) * vc;
        total += Real::of(v_norm, work) * log_int(p, prec) / Real::of(deg, work);
    }
    return total - Real::of(H.degree(), work) * height(P, prec);
}

bool is_zero_height(const ProjPoint& P) {
    const QuadElem* first = nullptr;
    for (const auto& x : P.coords()) {
        if (!x.is_zero()) {
            first = &x;
            break;
        }
    }
    auto is_root_of_unity = [](const QuadElem& r) {
        if (r.is_rational()) return r.a() == 1 || r.a() == -1;
        if (r.norm() != 1) return false;
        Rat t = r.trace();
        return t == 0 || t == 1 || t == -1;
    };
    for (const auto& x : P.coords()) {
        if (x.is_zero() || &x == first) continue;
        if (!is_root_of_unity(x / *first)) return false;
    }
    return true;
}

RatioResult ratio(const Arrangement& D, const PlaceSetS& S, const ProjPoint& P,
                  mpfr_prec_t prec) {
    if (is_zero_height(P)) throw ZeroHeight();
    Real h = height(P, prec);
    Real m = proximity(D, S, P, prec);
    return RatioResult{h, m, m / h};
}

} // namespace heightlab
