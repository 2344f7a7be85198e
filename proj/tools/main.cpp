#include "heightlab/campaign.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace heightlab;

namespace {

// exit codes: 0 pass, 1 assertion failure, 2 config error
constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kConfig = 2;

FieldTag field_of(long d) {
    if (d == 0) return FieldTag();
    return FieldTag(QuadField(Int(d)));
}

PlaceSetS parse_places(const std::string& spec) {
    bool inf = false;
    std::vector<Int> primes;
    std::size_t start = 0;
    while (start <= spec.size()) {
        auto comma = spec.find(',', start);
        std::string tok = spec.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!tok.empty()) {
            if (tok == "inf" || tok == "oo")
                inf = true;
            else
                primes.emplace_back(tok);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return PlaceSetS(inf, std::move(primes));
}

std::vector<Rat> parse_rat_list(const std::string& spec) {
    std::vector<Rat> out;
    std::size_t start = 0;
    while (start <= spec.size()) {
        auto comma = spec.find(',', start);
        std::string tok = spec.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!tok.empty()) {
            Rat r(tok);
            r.canonicalize();
            out.push_back(r);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// "(a:b),(c:d),..." as P^1 points
std::vector<std::array<Int, 2>> p1_points_from_text(const std::string& spec) {
    std::vector<std::array<Int, 2>> out;
    std::size_t pos = 0;
    while ((pos = spec.find('(', pos)) != std::string::npos) {
        auto close = spec.find(')', pos);
        if (close == std::string::npos) throw ConfigError("unbalanced '(' in point list");
        std::string body = spec.substr(pos + 1, close - pos - 1);
        auto colon = body.find(':');
        if (colon == std::string::npos) throw ConfigError("expected '(a:b)' in point list");
        out.push_back({Int(body.substr(0, colon)), Int(body.substr(colon + 1))});
        pos = close + 1;
    }
    if (out.empty()) throw ConfigError("no points in list: " + spec);
    return out;
}

// coordinates like "3,-1/2,0" (rational) or "1+1s,2,0" with s = sqrt(d)
ProjPoint parse_coords(const std::string& spec, long d) {
    FieldTag K = field_of(d);
    std::vector<QuadElem> coords;
    std::size_t start = 0;
    while (start <= spec.size()) {
        auto comma = spec.find(',', start);
        std::string tok = spec.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!tok.empty()) {
            auto s_pos = tok.find('s');
            if (s_pos == std::string::npos) {
                Rat a(tok);
                a.canonicalize();
                coords.emplace_back(a);
            } else {
                if (!K) throw ConfigError("coordinate uses s = sqrt(d) but -d was not given");
                // forms: "bs", "a+bs", "a-bs"
                std::size_t split = std::string::npos;
                for (std::size_t i = s_pos; i-- > 1;) {
                    if ((tok[i] == '+' || tok[i] == '-') && tok[i - 1] != '/') {
                        split = i;
                        break;
                    }
                }
                std::string a_part = split == std::string::npos ? "0" : tok.substr(0, split);
                std::string b_part = split == std::string::npos
                                         ? tok.substr(0, s_pos)
                                         : tok.substr(split, s_pos - split);
                if (!b_part.empty() && b_part[0] == '+') b_part = b_part.substr(1);
                if (b_part.empty()) b_part = "1";
                if (b_part == "-") b_part = "-1";
                Rat a(a_part), b(b_part);
                a.canonicalize();
                b.canonicalize();
                coords.emplace_back(a, b, K);
            }
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return ProjPoint(std::move(coords));
}

Arrangement parse_lines(const std::string& spec) {
    // "a,b,c;a,b,c;..."
    std::vector<HyperForm> forms;
    std::size_t start = 0;
    while (start <= spec.size()) {
        auto semi = spec.find(';', start);
        std::string tok = spec.substr(start, semi == std::string::npos ? semi : semi - start);
        if (!tok.empty()) forms.push_back(HyperForm::linear(parse_rat_list(tok)));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return Arrangement(std::move(forms));
}

void print_stream(const PointStream& stream, std::size_t limit) {
    std::cout << "family: " << stream.family << ", points: " << stream.points.size() << "\n";
    std::size_t shown = 0;
    for (const auto& sp : stream.points) {
        if (shown++ >= limit) {
            std::cout << "... (" << stream.points.size() - limit << " more)\n";
            break;
        }
        std::cout << serialize_point(sp.point) << "  u=" << sp.u.get_str()
                  << "  d=" << sp.field_d.get_str()
                  << "  s_int_defect=" << sp.s_integral_defect.str(10)
                  << (sp.tangency ? "  [tangency]" : "") << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"heightlab: exact Weil heights, local Weil functions, and proximity "
                 "functions for rational and quadratic points"};
    app.require_subcommand(1);

    // ---- places
    auto* places_cmd = app.add_subcommand("places", "splitting data of places of Q(sqrt(d))");
    long pl_d = 0;
    std::string pl_v = "inf";
    places_cmd->add_option("-d,--field", pl_d, "squarefree d of Q(sqrt(d)); 0 = Q");
    places_cmd->add_option("-v,--place", pl_v, "base place: a prime or 'inf'");

    // ---- height
    auto* height_cmd = app.add_subcommand("height", "Weil height of a projective point");
    std::string h_coords;
    long h_d = 0;
    long h_prec = kDefaultPrec;
    height_cmd->add_option("-c,--coords", h_coords, "coordinates, e.g. '3,4' or '1+1s,2'")
        ->required();
    height_cmd->add_option("-d,--field", h_d, "d for coordinates containing s = sqrt(d)");
    height_cmd->add_option("-p,--prec", h_prec, "precision in bits");

    // ---- weil
    auto* weil_cmd = app.add_subcommand("weil", "local Weil function per place above v");
    std::string w_line, w_coords, w_v = "inf";
    long w_d = 0, w_prec = kDefaultPrec;
    weil_cmd->add_option("-l,--form", w_line, "form coefficients 'a,b,c' (linear)")->required();
    weil_cmd->add_option("-c,--coords", w_coords, "point coordinates")->required();
    weil_cmd->add_option("-v,--place", w_v, "base place: prime or 'inf'");
    weil_cmd->add_option("-d,--field", w_d, "d for quadratic coordinates");
    weil_cmd->add_option("-p,--prec", w_prec, "precision in bits");

    // ---- proximity
    auto* prox_cmd = app.add_subcommand("proximity", "h, m_{D,S} and m/h for an arrangement");
    std::string x_lines, x_coords, x_places = "inf";
    long x_d = 0, x_prec = kDefaultPrec;
    prox_cmd->add_option("-l,--lines", x_lines, "lines 'a,b,c;a,b,c;...'")->required();
    prox_cmd->add_option("-c,--coords", x_coords, "point coordinates")->required();
    prox_cmd->add_option("-s,--s-places", x_places, "S as 'inf,2,3'");
    prox_cmd->add_option("-d,--field", x_d, "d for quadratic coordinates");
    prox_cmd->add_option("-p,--prec", x_prec, "precision in bits");

    // ---- bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "exact bound constants for (delta, m, n)");
    long b_delta = 2, b_m = 2, b_n = 2;
    bounds_cmd->add_option("--delta", b_delta, "degree bound delta");
    bounds_cmd->add_option("-m", b_m, "subgeneral position m");
    bounds_cmd->add_option("-n", b_n, "ambient dimension n");

    // ---- exceptional
    auto* exc_cmd = app.add_subcommand(
        "exceptional", "candidate exceptional lines: the arrangement plus all lines "
                       "through four distinct intersection points (report only)");
    std::string exc_lines;
    exc_cmd->add_option("-l,--lines", exc_lines, "lines 'a,b,c;a,b,c;...'")->required();

    // ---- gen
    auto* gen_cmd = app.add_subcommand("gen", "generate point streams");
    gen_cmd->require_subcommand(1);
    std::string g_places = "inf,2,3";
    long g_max_exp = 3;
    std::size_t g_limit = 25;

    auto* gen_sunits = gen_cmd->add_subcommand("sunits", "S-units of Q");
    gen_sunits->add_option("-s,--s-places", g_places, "S as 'inf,2,3'");
    gen_sunits->add_option("-e,--max-exp", g_max_exp, "exponent bound");

    auto* gen_fibers = gen_cmd->add_subcommand("fibers", "unit fibers of phi = F/G on P^1");
    std::string f_zero = "(0:1)", f_inf = "(1:0)";
    gen_fibers->add_option("--phi-zero", f_zero, "roots of F, e.g. '(0:1),(1:1)'");
    gen_fibers->add_option("--phi-inf", f_inf, "roots of G");
    gen_fibers->add_option("-s,--s-places", g_places, "S as 'inf,2,3'");
    gen_fibers->add_option("-e,--max-exp", g_max_exp, "exponent bound");
    gen_fibers->add_option("--limit", g_limit, "print at most this many points");

    auto* gen_exinf = gen_cmd->add_subcommand("exinf", "collinear-intersections family");
    int ge_n = 2, ge_delta = 1;
    bool show_config = false;
    gen_exinf->add_option("-n", ge_n, "ambient dimension (1 or 2)");
    gen_exinf->add_option("--delta", ge_delta, "degree (1 or 2)");
    gen_exinf->add_option("-s,--s-places", g_places, "S as 'inf,2,3'");
    gen_exinf->add_option("-e,--max-exp", g_max_exp, "exponent bound");
    gen_exinf->add_option("--limit", g_limit, "print at most this many points");
    gen_exinf->add_flag("--show-config", show_config, "print the certified configuration JSON");

    auto* gen_excon = gen_cmd->add_subcommand("excon", "tangent-conic family");
    gen_excon->add_option("-s,--s-places", g_places, "S as 'inf,2,3'");
    gen_excon->add_option("-e,--max-exp", g_max_exp, "exponent bound");
    gen_excon->add_option("--limit", g_limit, "print at most this many points");
    gen_excon->add_flag("--show-config", show_config, "print the certified configuration JSON");

    // ---- campaign
    auto* camp_cmd = app.add_subcommand("campaign", "run a campaign from a JSON config");
    auto* camp_run = camp_cmd->add_subcommand("run", "run and write records.csv/summary.json");
    std::string config_path, out_dir = ".";
    camp_run->add_option("config", config_path, "JSON config path")->required();
    camp_run->add_option("-o,--out", out_dir, "output directory");

    // ---- verify
    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    int v_samples = 0;
    std::uint64_t v_seed = 1;
    long v_prec = kDefaultPrec;
    verify_cmd
        ->add_option("suite", suite,
                     "one of: product-formula, weil-sum, base-change, positions, "
                     "conic-lemma, sym2-identity, transfer-defect, all")
        ->required();
    verify_cmd->add_option("--samples", v_samples, "sample count (0 = suite default)");
    verify_cmd->add_option("--seed", v_seed, "RNG seed");
    verify_cmd->add_option("-p,--prec", v_prec, "precision in bits");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*places_cmd) {
            FieldTag K = field_of(pl_d);
            std::vector<Place> ws =
                pl_v == "inf" ? archimedean_places(K) : places_above(K, Int(pl_v));
            for (const auto& w : ws)
                std::cout << w.str() << "  e=" << w.e << " f=" << w.f
                          << " local_degree=" << w.local_degree << "\n";
            return kOk;
        }
        if (*height_cmd) {
            ProjPoint P = parse_coords(h_coords, h_d);
            std::cout << "P = " << serialize_point(P) << "\n";
            std::cout << "h(P) = " << height(P, h_prec).str() << "\n";
            std::cout << "delta(P) = " << P.degree_tag() << "\n";
            return kOk;
        }
        if (*weil_cmd) {
            HyperForm H = HyperForm::linear(parse_rat_list(w_line));
            ProjPoint P = parse_coords(w_coords, w_d);
            std::vector<Place> ws =
                w_v == "inf" ? archimedean_places(P.field()) : places_above(P.field(), Int(w_v));
            for (const auto& w : ws)
                std::cout << "lambda_{H," << w.str()
                          << "}(P) = " << local_weil(H, P, w, w_prec).str() << "\n";
            return kOk;
        }
        if (*prox_cmd) {
            Arrangement D = parse_lines(x_lines);
            ProjPoint P = parse_coords(x_coords, x_d);
            PlaceSetS S = parse_places(x_places);
            auto r = ratio(D, S, P, x_prec);
            std::cout << "h(P) = " << r.h.str() << "\n";
            std::cout << "m(P) = " << r.m.str() << "\n";
            std::cout << "m/h  = " << r.ratio.str() << "\n";
            return kOk;
        }
        if (*bounds_cmd) {
            BoundTable t = bound_table(b_delta, b_m, b_n);
            std::cout << "delta=" << t.delta << " m=" << t.m << " n=" << t.n << "\n";
            std::cout << "roth                 = " << t.roth.get_str() << "\n";
            std::cout << "wirsing              = " << t.wirsing.get_str() << "\n";
            std::cout << "stoll / conj-b       = " << t.stoll.get_str() << "\n";
            std::cout << "conj-a               = " << t.conj_a.get_str() << "\n";
            std::cout << "quad-plane           = " << t.quad_plane.get_str() << "\n";
            std::cout << "quad-plane-lines     = " << t.quad_plane_lines.get_str() << "\n";
            std::cout << "excon-line-exception = " << t.excon_line_exception.get_str() << "\n";
            std::cout << "ruwang               = " << t.ruwang.get_str() << "\n";
            if (t.galg) std::cout << "galg                 = " << t.galg->get_str() << "\n";
            if (t.genth) std::cout << "genth                = " << t.genth->get_str() << "\n";
            return kOk;
        }
        if (*gen_sunits) {
            for (const auto& u : s_units_Q(parse_places(g_places), g_max_exp))
                std::cout << u.get_str() << "\n";
            return kOk;
        }
        if (*gen_fibers) {
            BinaryFormPair pair(p1_points_from_text(f_zero), p1_points_from_text(f_inf));
            print_stream(unit_fibers(pair, parse_places(g_places), g_max_exp), g_limit);
            return kOk;
        }
        if (*gen_exinf) {
            ExinfConfig cfg = exinf_config(ge_n, ge_delta);
            if (show_config) {
                std::cout << exinf_config_json(cfg) << "\n";
                return kOk;
            }
            print_stream(exinf_points(cfg, parse_places(g_places), g_max_exp), g_limit);
            return kOk;
        }
        if (*gen_excon) {
            ExconConfig cfg = excon_config();
            if (show_config) {
                std::cout << excon_config_json(cfg) << "\n";
                return kOk;
            }
            print_stream(excon_points(cfg, parse_places(g_places), g_max_exp), g_limit);
            return kOk;
        }
        if (*exc_cmd) {
            std::vector<LineP2> lines;
            std::size_t start = 0;
            while (start <= exc_lines.size()) {
                auto semi = exc_lines.find(';', start);
                std::string tok =
                    exc_lines.substr(start, semi == std::string::npos ? semi : semi - start);
                if (!tok.empty()) {
                    auto cs = parse_rat_list(tok);
                    if (cs.size() != 3) throw ConfigError("each line needs 3 coefficients");
                    lines.emplace_back(cs[0], cs[1], cs[2]);
                }
                if (semi == std::string::npos) break;
                start = semi + 1;
            }
            auto cands = candidate_exceptional_lines(lines);
            std::cout << "candidate exceptional lines (" << cands.size() << ", first "
                      << lines.size() << " are the arrangement):\n";
            for (const auto& l : cands) std::cout << l.str() << "\n";
            return kOk;
        }
        if (*camp_run) {
            CampaignConfig cfg = load_campaign_config(config_path);
            CampaignSummary sum = run_campaign_files(cfg, out_dir);
            std::cout << sum.json << "\n";
            return kOk;
        }
        if (*verify_cmd) {
            bool all_pass = true;
            std::vector<std::string> names =
                suite == "all" ? verify_suite_names() : std::vector<std::string>{suite};
            for (const auto& name : names) {
                SuiteReport r = verify_suite(name, v_samples, v_seed, v_prec);
                std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
                if (!r.details.empty()) std::cout << "  (" << r.details << ")";
                std::cout << "\n";
                all_pass = all_pass && r.pass;
            }
            return all_pass ? kOk : kFail;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kConfig;
}
