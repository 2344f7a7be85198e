#include "heightlab/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace heightlab {

namespace {

const std::vector<long> kTestFieldDs = {-1, 2, -2, 3, -3, 5, -7, 13};

struct Suite {
    std::ostringstream log;
    bool pass = true;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            log << "FAIL: " << what << "\n";
        }
    }
};

SuiteReport product_formula_suite(int samples, std::uint64_t seed, mpfr_prec_t prec) {
    if (samples <= 0) samples = 200;
    Suite s;
    Rng rng(seed);
    long worst_exp = -100000;
    for (long d : kTestFieldDs) {
        FieldTag K{QuadField(Int(d))};
        for (int i = 0; i < samples; ++i) {
            QuadElem x = rng.elem_nonzero(K, 10000, 10000);
            Real defect = product_formula_defect(x, prec);
            if (!defect.is_zero()) worst_exp = std::max(worst_exp, mpfr_get_exp(defect.raw()));
            s.check(defect.abs_below_pow2(-prec + 8),
                    "product formula defect too large for " + x.str());
        }
    }
    for (int i = 0; i < samples; ++i) {
        QuadElem x(rng.rat_nonzero(1000000, 1000000));
        Real defect = product_formula_defect(x, prec);
        s.check(defect.abs_below_pow2(-prec + 8),
                "product formula defect too large for rational " + x.str());
    }
    s.log << "max |defect| ~ 2^" << worst_exp << " at prec " << prec;
    return {"product-formula", s.pass, s.log.str()};
}

HyperForm random_form(Rng& rng, int n, int degree) {
    // dense random form with small integer coefficients, at least one nonzero
    for (;;) {
        HyperForm::Terms terms;
        std::vector<unsigned> e(static_cast<std::size_t>(n) + 1, 0);
        // enumerate exponent vectors of total degree `degree`
        std::function<void(std::size_t, int)> fill = [&](std::size_t i, int rem) {
            if (i == e.size() - 1) {
                e[i] = static_cast<unsigned>(rem);
                long c = rng.uniform(-9, 9);
                if (c != 0) terms[e] = Rat(c);
                return;
            }
            for (int k = 0; k <= rem; ++k) {
                e[i] = static_cast<unsigned>(k);
                fill(i + 1, rem - k);
            }
        };
        fill(0, degree);
        if (!terms.empty()) return HyperForm(n, std::move(terms));
    }
}

ProjPoint random_point(Rng& rng, int n, const FieldTag& K, long bound) {
    for (;;) {
        std::vector<QuadElem> coords;
        bool nonzero = false;
        for (int i = 0; i <= n; ++i) {
            QuadElem c = rng.elem(K, bound, bound);
            nonzero = nonzero || !c.is_zero();
            coords.push_back(std::move(c));
        }
        if (nonzero) return ProjPoint(std::move(coords));
    }
}

SuiteReport weil_sum_suite(int samples, std::uint64_t seed, mpfr_prec_t prec) {
    if (samples <= 0) samples = 100;
    Suite s;
    Rng rng(seed);
    int done = 0;
    while (done < samples) {
        long d = kTestFieldDs[static_cast<std::size_t>(
            rng.uniform(0, static_cast<long>(kTestFieldDs.size()) - 1))];
        bool quad_point = rng.uniform(0, 1) == 1;
        int n = static_cast<int>(rng.uniform(1, 2));
        int degree = static_cast<int>(rng.uniform(1, 2));
        FieldTag K;
        if (quad_point) K = QuadField(Int(d));
        HyperForm H = random_form(rng, n, degree);
        ProjPoint P = random_point(rng, n, K, 100);
        if (H.evaluate(P).is_zero()) continue;
        Real defect = weil_sum_defect(H, P, prec);
        s.check(defect.abs_below_pow2(-prec + 10),
                "weil sum defect too large at " + P.str() + " for " + H.str());
        ++done;
    }
    return {"weil-sum", s.pass, s.log.str()};
}

SuiteReport base_change_suite(int samples, std::uint64_t seed, mpfr_prec_t prec) {
    if (samples <= 0) samples = 50;
    Suite s;
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) {
        ProjPoint P = random_point(rng, static_cast<int>(rng.uniform(1, 3)), FieldTag(), 10000);
        Real h = height(P, prec);
        for (long d : kTestFieldDs) {
            Real hk = height_in_field(P, QuadField(Int(d)), prec);
            s.check((h - hk).abs_below_pow2(-prec + 10),
                    "height changed under base change to d=" + std::to_string(d) + " at " +
                        P.str());
        }
    }
    return {"base-change", s.pass, s.log.str()};
}

SuiteReport positions_suite(int samples, std::uint64_t seed, mpfr_prec_t) {
    if (samples <= 0) samples = 100;
    Suite s;
    // pinned examples
    auto mk = [](long a, long b, long c) { return LineP2(Rat(a), Rat(b), Rat(c)); };
    s.check(general_position({mk(1, 0, 0), mk(0, 1, 0), mk(0, 0, 1), mk(1, 1, 1)}),
            "x,y,z,x+y+z should be in general position");
    s.check(!general_position({mk(1, 0, 0), mk(0, 1, 0), mk(1, 1, 0)}),
            "x,y,x+y are concurrent");
    s.check(general_position({mk(0, 1, -1), mk(0, 1, 1), mk(1, 0, -1), mk(1, 0, 1)}),
            "reference exinf quadruple should pass");
    {
        std::vector<HyperForm> forms;
        for (auto& l : {mk(1, 0, 0), mk(0, 1, 0), mk(1, 1, 0), mk(0, 0, 1)})
            forms.push_back(l.form());
        s.check(!m_subgeneral(forms, 2), "x,y,x+y,z is not 2-subgeneral");
        bool threw = false;
        try {
            m_subgeneral({forms[0], forms[1]}, 2);
        } catch (const TooFewForms&) {
            threw = true;
        }
        s.check(threw, "q <= m must raise TooFewForms");
    }
    // randomized cross-check: for distinct lines in P^2, general position
    // (triple determinants) must agree with 2-subgeneral position (ranks)
    Rng rng(seed);
    for (int i = 0; i < samples; ++i) {
        std::vector<LineP2> lines;
        while (lines.size() < 4) {
            try {
                LineP2 l(Rat(rng.uniform(-4, 4)), Rat(rng.uniform(-4, 4)),
                         Rat(rng.uniform(-4, 4)));
                if (std::find(lines.begin(), lines.end(), l) == lines.end())
                    lines.push_back(l);
            } catch (const Error&) {
            }
        }
        std::vector<HyperForm> forms;
        for (auto& l : lines) forms.push_back(l.form());
        bool gp = general_position(lines);
        bool sub = m_subgeneral(forms, 2);
        s.check(gp == sub, "general position and 2-subgeneral disagree");
    }
    return {"positions", s.pass, s.log.str()};
}

SuiteReport conic_lemma_suite(int samples, std::uint64_t seed, mpfr_prec_t) {
    if (samples <= 0) samples = 200;
    Suite s;
    Rng rng(seed);
    auto random_line = [&](long bound) {
        for (;;) {
            try {
                return LineP2(Rat(rng.uniform(-bound, bound)), Rat(rng.uniform(-bound, bound)),
                              Rat(rng.uniform(-bound, bound)));
            } catch (const Error&) {
            }
        }
    };
    // interpolation oracle: the quadric-monomial matrix of the DUAL POINTS
    auto dual_row = [](const LineP2& l) {
        ProjPoint p = dual_point(l);
        const Int& x = num(p.coords()[0].a());
        const Int& y = num(p.coords()[1].a());
        const Int& z = num(p.coords()[2].a());
        return std::vector<Int>{x * x, y * y, z * z, x * y, x * z, y * z};
    };
    for (int i = 0; i < samples; ++i) {
        std::array<LineP2, 6> six = {random_line(9), random_line(9), random_line(9),
                                     random_line(9), random_line(9), random_line(9)};
        RatMatrix null = conic_dependence(six);
        IntMatrix oracle_m;
        for (const auto& l : six) oracle_m.push_back(dual_row(l));
        int oracle_rank = bareiss_rank(oracle_m);
        s.check(static_cast<int>(null.size()) == 6 - oracle_rank,
                "nullity disagrees with the interpolation oracle");
        // every nullvector is a conic through all six dual points
        for (const auto& v : null) {
            for (const auto& l : six) {
                auto row = dual_row(l);
                Rat acc(0);
                for (int k = 0; k < 6; ++k) acc += v[static_cast<std::size_t>(k)] * Rat(row[static_cast<std::size_t>(k)]);
                s.check(acc == 0, "nullvector conic misses a dual point");
            }
        }
    }
    // general-position quintuples have veronese rank 5
    int done = 0;
    while (done < samples / 2) {
        std::vector<LineP2> five;
        while (five.size() < 5) {
            LineP2 l = random_line(6);
            if (std::find(five.begin(), five.end(), l) == five.end()) five.push_back(l);
        }
        if (!general_position(five)) continue;
        s.check(five_rank_check(five), "general-position quintuple must have rank 5");
        ++done;
    }
    // four concurrent duals can drop the rank: dual points collinear on x=0
    {
        std::vector<LineP2> bad = {LineP2(Rat(0), Rat(1), Rat(0)), LineP2(Rat(0), Rat(0), Rat(1)),
                                   LineP2(Rat(0), Rat(1), Rat(1)), LineP2(Rat(0), Rat(1), Rat(-1)),
                                   LineP2(Rat(1), Rat(0), Rat(0))};
        s.check(!five_rank_check(bad), "four concurrent lines must fail the rank check");
    }
    return {"conic-lemma", s.pass, s.log.str()};
}

SuiteReport sym2_identity_suite(int samples, std::uint64_t seed, mpfr_prec_t prec) {
    if (samples <= 0) samples = 100;
    Suite s;
    Rng rng(seed);
    auto random_line = [&]() {
        for (;;) {
            try {
                return LineP2(Rat(rng.uniform(-9, 9)), Rat(rng.uniform(-9, 9)),
                              Rat(rng.uniform(-9, 9)));
            } catch (const Error&) {
            }
        }
    };
    // pullback identity l(x)l(x~) = H(sym2 coords): both sides are bilinear
    // forms; compare the full 3x3 coefficient matrices symbolically.
    for (int i = 0; i < samples; ++i) {
        LineP2 l = random_line();
        HyperForm H = line_sq_hyperplane(l);
        std::vector<Rat> h(6, Rat(0));
        for (auto& [e, c] : H.terms()) {
            for (std::size_t k = 0; k < 6; ++k)
                if (e[k] == 1) h[k] = c;
        }
        const Rat a(l.a()), b(l.b()), c(l.c());
        // lhs matrix M[i][j] = coeff of x_i x~_j in l(x)l(x~)
        Rat lhs[3][3] = {{a * a, a * b, a * c}, {b * a, b * b, b * c}, {c * a, c * b, c * c}};
        Rat rhs[3][3] = {{h[0], h[3], h[4]}, {h[3], h[1], h[5]}, {h[4], h[5], h[2]}};
        bool equal = true;
        for (int r = 0; r < 3; ++r)
            for (int cidx = 0; cidx < 3; ++cidx) equal = equal && lhs[r][cidx] == rhs[r][cidx];
        s.check(equal, "pullback identity fails for " + l.str());
    }
    // symmetry and rationality
    for (int i = 0; i < samples; ++i) {
        FieldTag K{QuadField(Int(kTestFieldDs[static_cast<std::size_t>(
            rng.uniform(0, static_cast<long>(kTestFieldDs.size()) - 1))]))};
        ProjPoint P = random_point(rng, 2, K, 20);
        ProjPoint Q = random_point(rng, 2, K, 20);
        s.check(sym2_embed(P, Q) == sym2_embed(Q, P), "sym2_embed is not symmetric");
        if (P.degree_tag() == 2) {
            ProjPoint img = sym2_point(P);
            s.check(img.degree_tag() == 1, "sym2_point image must be rational");
        }
    }
    // height product defect <= log 2
    Real log2 = log_rat(Rat(2), prec);
    for (int i = 0; i < samples; ++i) {
        bool quad = rng.uniform(0, 1) == 1;
        FieldTag K;
        if (quad)
            K = QuadField(Int(kTestFieldDs[static_cast<std::size_t>(
                rng.uniform(0, static_cast<long>(kTestFieldDs.size()) - 1))]));
        ProjPoint P = random_point(rng, 2, K, 50);
        ProjPoint Q = random_point(rng, 2, K, 50);
        Real defect = height_product_defect(P, Q, prec);
        s.check((defect - log2).abs_below_pow2(-prec + 12) || defect < log2,
                "height product defect exceeds log 2");
    }
    return {"sym2-identity", s.pass, s.log.str()};
}

SuiteReport transfer_defect_suite(int samples, std::uint64_t seed, mpfr_prec_t prec) {
    if (samples <= 0) samples = 200;
    Suite s;
    (void)seed;
    // a fixed quadratic family: fibers of x(x-y) / (y(x-2y)) over the
    // S-units, S = {inf, 2, 3}; stream order at max_exp 8 walks a wide
    // height range, which is what the correlation statistic needs
    PlaceSetS S(true, {Int(2), Int(3)});
    BinaryFormPair pair({{Int(0), Int(1)}, {Int(1), Int(1)}},
                        {{Int(1), Int(0)}, {Int(2), Int(1)}});
    PointStream stream = unit_fibers(pair, S, 8, prec);
    LineP2 l(Rat(1), Rat(1), Rat(1));
    std::vector<double> hs, defs;
    Real worst(prec);
    for (const auto& sp : stream.points) {
        if (sp.field_d == 0) continue;
        if (static_cast<int>(hs.size()) >= samples) break;
        // the transfer statement lives on P^2: lift the parameter (s:t)
        // to the affine chart point (s:t:1)
        std::vector<QuadElem> c = sp.param.coords();
        c.push_back(QuadElem(Rat(1)));
        ProjPoint P(std::move(c));
        if (P.degree_tag() != 2) continue;
        if (l.contains(P) || l.contains(P.conjugate())) continue;
        Real defect = proximity_transfer_defect(l, S, P, prec);
        Real h = height(P, prec);
        hs.push_back(h.to_double());
        defs.push_back(std::fabs(defect.to_double()));
        Real a = abs(defect);
        if (a > worst) worst = a;
    }
    s.check(static_cast<int>(hs.size()) >= samples, "not enough quadratic family points");
    // Pearson correlation of |defect| with h should be ~0 for a bounded,
    // height-independent defect
    double n = static_cast<double>(hs.size());
    double mh = 0, md = 0;
    for (double v : hs) mh += v;
    for (double v : defs) md += v;
    mh /= n;
    md /= n;
    double num = 0, dh = 0, dd = 0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        num += (hs[i] - mh) * (defs[i] - md);
        dh += (hs[i] - mh) * (hs[i] - mh);
        dd += (defs[i] - md) * (defs[i] - md);
    }
    double corr = (dh > 0 && dd > 0) ? num / std::sqrt(dh * dd) : 0.0;
    s.log << "family size " << hs.size() << ", max |defect| = " << worst.str(8)
          << ", corr(|defect|, h) = " << corr;
    s.check(std::fabs(corr) <= 0.25, "defect correlates with height");
    return {"transfer-defect", s.pass, s.log.str()};
}

} // namespace

std::vector<std::string> verify_suite_names() {
    return {"product-formula", "weil-sum",      "base-change",    "positions",
            "conic-lemma",     "sym2-identity", "transfer-defect"};
}

SuiteReport verify_suite(const std::string& name, int samples, std::uint64_t seed,
                         mpfr_prec_t prec) {
    if (name == "product-formula") return product_formula_suite(samples, seed, prec);
    if (name == "weil-sum") return weil_sum_suite(samples, seed, prec);
    if (name == "base-change") return base_change_suite(samples, seed, prec);
    if (name == "positions") return positions_suite(samples, seed, prec);
    if (name == "conic-lemma") return conic_lemma_suite(samples, seed, prec);
    if (name == "sym2-identity") return sym2_identity_suite(samples, seed, prec);
    if (name == "transfer-defect") return transfer_defect_suite(samples, seed, prec);
    throw ConfigError("unknown suite: " + name);
}

} // namespace heightlab
