#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heightlab/campaign.hpp"

#include <sstream>

using namespace heightlab;

TEST_CASE("bound calculators") {
    CHECK(galg_bound(2, 2, 2) == Rat(10));
    CHECK(galg_bound(1, 2, 2) == Rat(3));
    CHECK_THROWS_AS(galg_bound(1, 1, 1), DomainError); // delta*m = 1
    CHECK_THROWS_AS(galg_bound(1, 1, 2), DomainError); // m < n

    CHECK(genth_bound(2, 2) == Rat(48, 5));
    CHECK(genth_bound(1, 2) == Rat(4));
    CHECK_THROWS_AS(genth_bound(1, 1), DomainError); // denominator -1

    CHECK(ruwang_bound(1, 1) == Rat(2));
    CHECK(ruwang_bound(2, 2) == Rat(10));
    for (long n = 1; n < 8; ++n) CHECK(ruwang_bound(1, n) == Rat(2 * n));

    BoundTable t = bound_table(2, 2, 2);
    CHECK(t.roth == 2);
    CHECK(t.wirsing == 4);
    CHECK(t.stoll == 8);
    CHECK(t.conj_a == 5);
    CHECK(t.quad_plane == 8);
    CHECK(t.quad_plane_lines == Rat(15, 2));
    CHECK(t.excon_line_exception == 6);
    CHECK(*t.galg == 10);
    CHECK(*t.genth == Rat(48, 5));
}

TEST_CASE("point serialization round-trips") {
    ProjPoint P({QuadElem(Rat(-3, 7)), QuadElem(Rat(2))});
    ProjPoint back = parse_point(serialize_point(P));
    CHECK(back == P);

    FieldTag K{QuadField(Int(-7))};
    ProjPoint Q({QuadElem(Rat(1, 2), Rat(-5, 3), K), QuadElem(Rat(0)), QuadElem(Rat(4))});
    ProjPoint back2 = parse_point(serialize_point(Q));
    CHECK(back2 == Q);

    CHECK_THROWS_AS(parse_quad_elem("garbage"), ConfigError);
}

TEST_CASE("config parsing") {
    auto cfg = parse_campaign_config(R"({
        "family": "exinf", "n": 2, "delta": 1,
        "s_places": ["inf", 2, 3], "max_exp": 4,
        "precision": 192, "target": 4
    })");
    CHECK(cfg.family == "exinf");
    CHECK(cfg.S.has_infinity());
    CHECK(cfg.S.primes().size() == 2);
    CHECK(cfg.target == 4);

    CHECK_THROWS_AS(parse_campaign_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_campaign_config(R"({"family": "nope", "s_places": ["inf"]})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_campaign_config(R"({"family": "exinf"})"), ConfigError);
    CHECK_THROWS_AS(parse_campaign_config(R"({"family": "exinf", "s_places": [4]})"),
                    ConfigError);
    auto cfg2 = parse_campaign_config(
        R"({"family": "excon", "s_places": ["inf", 2, 3], "target": "15/2"})");
    CHECK(cfg2.target == Rat(15, 2));
}

TEST_CASE("campaign run: csv shape, determinism, reload consistency") {
    CampaignConfig cfg;
    cfg.family = "exinf";
    cfg.n = 2;
    cfg.delta = 1;
    cfg.S = PlaceSetS(true, {Int(2), Int(3)});
    cfg.max_exp = 2;
    cfg.target = Rat(4);

    std::ostringstream a, b;
    CampaignSummary sa = run_campaign(cfg, a);
    CampaignSummary sb = run_campaign(cfg, b);
    CHECK(sa.points > 0);
    CHECK(sa.errors == 0);

    auto strip_stamp = [](const std::string& text) {
        return text.substr(text.find('\n') + 1);
    };
    CHECK(strip_stamp(a.str()) == strip_stamp(b.str()));

    // the identity family: fitted constant ~ 0
    Real fitted(kDefaultPrec);
    mpfr_set_str(fitted.raw(), sa.fitted_constant.c_str(), 10, MPFR_RNDN);
    CHECK(fitted.abs_below_pow2(-60)); // CSV carries 30 digits

    // reload and recompute h, m from the stored exact points
    std::istringstream in(a.str());
    auto records = read_campaign_csv(in);
    CHECK(records.size() == sa.points);
    Arrangement D = exinf_config(2, 1).arrangement();
    for (std::size_t i = 0; i < records.size(); i += 7) {
        const auto& r = records[i];
        ProjPoint P = parse_point(r.coords);
        auto rr = ratio(D, cfg.S, P, 192);
        CHECK((rr.h - r.h).abs_below_pow2(-80));
        CHECK((rr.m - r.m).abs_below_pow2(-80));
    }
}

TEST_CASE("campaign run: quadratic records round-trip through the CSV") {
    CampaignConfig cfg;
    cfg.family = "exinf";
    cfg.n = 2;
    cfg.delta = 2;
    cfg.S = PlaceSetS(true, {Int(2), Int(3)});
    cfg.max_exp = 1;
    cfg.target = Rat(8);
    std::ostringstream out;
    CampaignSummary sum = run_campaign(cfg, out);
    CHECK(sum.points > 0);
    std::istringstream in(out.str());
    auto records = read_campaign_csv(in);
    REQUIRE(records.size() == sum.points);
    Arrangement D = exinf_config(2, 2).arrangement();
    bool saw_quadratic = false;
    for (const auto& r : records) {
        ProjPoint P = parse_point(r.coords);
        if (r.d != 0) {
            saw_quadratic = true;
            CHECK(P.degree_tag() == 2);
            CHECK(P.field()->d() == r.d);
        }
        auto rr = ratio(D, cfg.S, P, 192);
        CHECK((rr.h - r.h).abs_below_pow2(-80));
        CHECK((rr.m - r.m).abs_below_pow2(-78));
    }
    CHECK(saw_quadratic);
}

TEST_CASE("campaign run: random family needs an arrangement") {
    CampaignConfig cfg;
    cfg.family = "random";
    cfg.S = PlaceSetS(true, {Int(2)});
    std::ostringstream out;
    CHECK_THROWS_AS(run_campaign(cfg, out), ConfigError);

    cfg.arrangement = std::vector<std::array<Rat, 3>>{
        {Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)},
        {Rat(1), Rat(1), Rat(1)}};
    cfg.samples = 12;
    cfg.field_d = Int(-1);
    cfg.target = Rat(8);
    std::ostringstream out2;
    CampaignSummary s = run_campaign(cfg, out2);
    CHECK(s.points + s.errors == 12); // points on D (if any) are logged, not fatal
}

TEST_CASE("verify suites pass at reduced sample sizes") {
    for (const auto& name : verify_suite_names()) {
        int samples = name == "product-formula" ? 40 : 30;
        if (name == "transfer-defect") samples = 60;
        SuiteReport r = verify_suite(name, samples, 42, 192);
        INFO(r.name, ": ", r.details);
        CHECK(r.pass);
    }
    CHECK_THROWS_AS(verify_suite("nope"), ConfigError);
}
