#include "heightlab/campaign.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace heightlab {

using nlohmann::json;

// ------------------------------------------------------------------- bounds

Rat galg_bound(long delta, long m, long n) {
    if (delta < 1 || n < 1 || m < n) throw DomainError("need delta >= 1 and m >= n >= 1");
    long dm = delta * m, dn = delta * n;
    if (dm < 2) throw DomainError("need delta*m >= 2");
    Rat r(Int(dm) * Int(dm - 1) * Int(dn + 1), Int(dm + dn - 2));
    r.canonicalize();
    return r;
}

Rat genth_bound(long delta, long n) {
    if (delta < 1 || n < 1) throw DomainError("need delta, n >= 1");
    long dn = delta * n;
    if (2 * dn - 3 <= 0) throw DomainError("need 2*delta*n - 3 > 0");
    Rat r(Int(dn) * Int(dn) * Int(dn - 1), Int(2 * dn - 3));
    r.canonicalize();
    return r;
}

Rat ruwang_bound(long delta, long n) {
    if (delta < 1 || n < 1) throw DomainError("need delta, n >= 1");
    return Rat(2 * binomial(static_cast<unsigned long>(n + delta),
                            static_cast<unsigned long>(delta)) -
               2);
}

BoundTable bound_table(long delta, long m, long n) {
    BoundTable t{delta, m, n,
                 Rat(2),
                 Rat(2 * delta),
                 Rat(2 * delta * n),
                 Rat(2 * delta + n - 1),
                 Rat(8),
                 Rat(15, 2),
                 Rat(6),
                 ruwang_bound(delta, n),
                 std::nullopt,
                 std::nullopt};
    if (delta * m >= 2 && m >= n && n >= 1) t.galg = galg_bound(delta, m, n);
    if (2 * delta * n - 3 > 0) t.genth = genth_bound(delta, n);
    return t;
}

namespace {

json bound_table_json(const BoundTable& t) {
    json j;
    j["delta"] = t.delta;
    j["m"] = t.m;
    j["n"] = t.n;
    j["roth"] = t.roth.get_str();
    j["wirsing"] = t.wirsing.get_str();
    j["stoll"] = t.stoll.get_str();
    j["conj-a"] = t.conj_a.get_str();
    j["conj-b"] = t.stoll.get_str();
    j["quad-plane"] = t.quad_plane.get_str();
    j["quad-plane-lines"] = t.quad_plane_lines.get_str();
    j["excon-line-exception"] = t.excon_line_exception.get_str();
    j["ruwang"] = t.ruwang.get_str();
    if (t.galg) j["galg"] = t.galg->get_str();
    if (t.genth) j["genth"] = t.genth->get_str();
    return j;
}

} // namespace

// ------------------------------------------------------- point round-trips

std::string serialize_point(const ProjPoint& P) { return P.str(); }

QuadElem parse_quad_elem(const std::string& text) {
    auto fail = [&]() { throw ConfigError("cannot parse coordinate: " + text); };
    auto pos = text.find("*sqrt(");
    if (pos == std::string::npos) {
        try {
            Rat r(text);
            r.canonicalize();
            return QuadElem(r);
        } catch (const std::exception&) {
            fail();
        }
    }
    if (text.back() != ')') fail();
    std::string dpart = text.substr(pos + 6, text.size() - pos - 7);
    // split "a+b" / "a-b" at the last +/- that is not a leading sign
    std::string ab = text.substr(0, pos);
    std::size_t split = std::string::npos;
    for (std::size_t i = ab.size(); i-- > 1;) {
        if ((ab[i] == '+' || ab[i] == '-') && ab[i - 1] != '/' && ab[i - 1] != '+' &&
            ab[i - 1] != '-') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) fail();
    try {
        Rat a(ab.substr(0, split));
        Rat b(ab.substr(split + 1));
        if (ab[split] == '-') b = -b;
        a.canonicalize();
        b.canonicalize();
        return QuadElem(a, b, QuadField(Int(dpart)));
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail();
    }
    return QuadElem(); // unreachable
}

ProjPoint parse_point(const std::string& text) {
    std::string t = text;
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    std::vector<QuadElem> coords;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= t.size(); ++i) {
        if (i == t.size() || (t[i] == ':' && depth == 0)) {
            coords.push_back(parse_quad_elem(t.substr(start, i - start)));
            start = i + 1;
        } else if (t[i] == '(') {
            ++depth;
        } else if (t[i] == ')') {
            --depth;
        }
    }
    return ProjPoint(std::move(coords));
}

// ------------------------------------------------------------------- config

namespace {

Rat rat_from_json(const json& v, const std::string& field) {
    try {
        if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
        if (v.is_string()) {
            Rat r(v.get<std::string>());
            r.canonicalize();
            return r;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError("field '" + field + "': expected integer or rational string");
}

PlaceSetS places_from_json(const json& v) {
    if (!v.is_array()) throw ConfigError("field 's_places': expected an array");
    bool inf = false;
    std::vector<Int> primes;
    for (const auto& e : v) {
        if (e.is_string()) {
            if (e.get<std::string>() == "inf") {
                inf = true;
                continue;
            }
            primes.emplace_back(e.get<std::string>());
        } else if (e.is_number_integer()) {
            primes.emplace_back(static_cast<long>(e.get<long long>()));
        } else {
            throw ConfigError("field 's_places': entries must be primes or \"inf\"");
        }
    }
    try {
        return PlaceSetS(inf, std::move(primes));
    } catch (const Error& e) {
        throw ConfigError(std::string("field 's_places': ") + e.what());
    }
}

std::vector<std::array<Int, 2>> p1_list_from_json(const json& v, const std::string& field) {
    if (!v.is_array()) throw ConfigError("field '" + field + "': expected an array");
    std::vector<std::array<Int, 2>> out;
    for (const auto& e : v) {
        if (e.is_string()) {
            // "(a:b)"
            std::string s = e.get<std::string>();
            if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
            auto colon = s.find(':');
            if (colon == std::string::npos)
                throw ConfigError("field '" + field + "': expected \"(a:b)\"");
            out.push_back({Int(s.substr(0, colon)), Int(s.substr(colon + 1))});
        } else if (e.is_array() && e.size() == 2) {
            out.push_back({Int(static_cast<long>(e[0].get<long long>())),
                           Int(static_cast<long>(e[1].get<long long>()))});
        } else {
            throw ConfigError("field '" + field + "': expected \"(a:b)\" or [a, b]");
        }
    }
    return out;
}

} // namespace

CampaignConfig parse_campaign_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("JSON parse error: ") + e.what());
    }
    CampaignConfig cfg;
    if (!j.contains("family") || !j["family"].is_string())
        throw ConfigError("field 'family': required string (exinf|excon|fibers|random)");
    cfg.family = j["family"].get<std::string>();
    if (cfg.family != "exinf" && cfg.family != "excon" && cfg.family != "fibers" &&
        cfg.family != "random")
        throw ConfigError("field 'family': unknown family '" + cfg.family + "'");
    if (j.contains("n")) cfg.n = j["n"].get<int>();
    if (j.contains("delta")) cfg.delta = j["delta"].get<int>();
    if (j.contains("phi_zero")) cfg.phi_zero = p1_list_from_json(j["phi_zero"], "phi_zero");
    if (j.contains("phi_inf")) cfg.phi_inf = p1_list_from_json(j["phi_inf"], "phi_inf");
    if (j.contains("arrangement")) {
        if (!j["arrangement"].is_array())
            throw ConfigError("field 'arrangement': expected an array of coefficient triples");
        std::vector<std::array<Rat, 3>> arr;
        for (const auto& row : j["arrangement"]) {
            if (!row.is_array() || row.size() != 3)
                throw ConfigError("field 'arrangement': each entry is a triple");
            arr.push_back({rat_from_json(row[0], "arrangement"),
                           rat_from_json(row[1], "arrangement"),
                           rat_from_json(row[2], "arrangement")});
        }
        cfg.arrangement = std::move(arr);
    }
    if (!j.contains("s_places")) throw ConfigError("field 's_places': required");
    cfg.S = places_from_json(j["s_places"]);
    if (j.contains("max_exp")) cfg.max_exp = j["max_exp"].get<long>();
    if (j.contains("precision")) cfg.precision = j["precision"].get<long>();
    if (cfg.precision < 64) throw ConfigError("field 'precision': need at least 64 bits");
    if (j.contains("target")) cfg.target = rat_from_json(j["target"], "target");
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
    if (j.contains("coord_bound")) cfg.coord_bound = j["coord_bound"].get<long>();
    if (j.contains("field_d")) cfg.field_d = Int(static_cast<long>(j["field_d"].get<long long>()));
    return cfg;
}

CampaignConfig load_campaign_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_campaign_config(ss.str());
}

namespace {

json lines_json(const std::vector<LineP2>& lines) {
    json arr = json::array();
    for (const auto& l : lines)
        arr.push_back({l.a().get_si(), l.b().get_si(), l.c().get_si()});
    return arr;
}

json points_json(const std::vector<ProjPoint>& pts) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back(serialize_point(p));
    return arr;
}

} // namespace

std::string exinf_config_json(const ExinfConfig& cfg) {
    json j;
    j["family"] = "exinf";
    j["n"] = cfg.n;
    j["delta"] = cfg.delta;
    if (cfg.n == 2) j["arrangement"] = lines_json(cfg.lines);
    j["points"] = points_json(cfg.points);
    json groups = json::array();
    for (const auto& g : cfg.groups) groups.push_back(g);
    j["groups"] = groups;
    json params = json::array();
    for (const auto& [s, t] : cfg.params)
        params.push_back("(" + s.get_str() + ":" + t.get_str() + ")");
    j["carrier_params"] = params;
    return j.dump(2);
}

std::string excon_config_json(const ExconConfig& cfg) {
    json j;
    j["family"] = "excon";
    j["conic"] = cfg.conic.str();
    j["arrangement"] = lines_json(cfg.lines);
    j["points"] = points_json(cfg.points);
    json tp = json::array(), cp = json::array();
    for (const auto& [s, t] : cfg.tangency_params)
        tp.push_back("(" + s.get_str() + ":" + t.get_str() + ")");
    for (const auto& [s, t] : cfg.chord_params)
        cp.push_back("(" + s.get_str() + ":" + t.get_str() + ")");
    j["tangency_params"] = tp;
    j["chord_params"] = cp;
    return j.dump(2);
}

// -------------------------------------------------------------------- run

namespace {

struct Prepared {
    PointStream stream;
    Arrangement arrangement;
    long ambient_n;
};

Arrangement arrangement_from_triples(const std::vector<std::array<Rat, 3>>& rows) {
    std::vector<HyperForm> forms;
    for (const auto& r : rows) forms.push_back(LineP2(r[0], r[1], r[2]).form());
    return Arrangement(std::move(forms));
}

Prepared prepare(const CampaignConfig& cfg) {
    if (cfg.family == "exinf") {
        auto config = exinf_config(cfg.n, cfg.delta);
        Arrangement D = cfg.arrangement ? arrangement_from_triples(*cfg.arrangement)
                                        : config.arrangement();
        return {exinf_points(config, cfg.S, cfg.max_exp, cfg.precision), D, cfg.n};
    }
    if (cfg.family == "excon") {
        auto config = excon_config();
        Arrangement D = cfg.arrangement ? arrangement_from_triples(*cfg.arrangement)
                                        : config.arrangement();
        return {excon_points(config, cfg.S, cfg.max_exp, cfg.precision), D, 2};
    }
    if (cfg.family == "fibers") {
        if (cfg.phi_zero.empty() || cfg.phi_inf.empty())
            throw ConfigError("family 'fibers' needs phi_zero and phi_inf");
        BinaryFormPair pair(cfg.phi_zero, cfg.phi_inf);
        PointStream stream = unit_fibers(pair, cfg.S, cfg.max_exp, cfg.precision);
        PointStream filtered;
        filtered.family = stream.family;
        for (auto& sp : stream.points) {
            if (is_zero_height(sp.param)) continue;
            filtered.points.push_back(std::move(sp));
        }
        Arrangement D(pair.root_divisors());
        return {std::move(filtered), D, 1};
    }
    if (cfg.family == "random") {
        if (!cfg.arrangement) throw ConfigError("family 'random' needs an arrangement");
        Arrangement D = arrangement_from_triples(*cfg.arrangement);
        PointStream stream;
        stream.family = "random";
        for (auto& P : random_points(cfg.seed, cfg.samples, 2, cfg.field_d, cfg.coord_bound)) {
            StreamPoint sp{P, P, Rat(0), P.field() ? P.field()->d() : Int(0), false,
                           Real(cfg.precision)};
            stream.points.push_back(std::move(sp));
        }
        return {std::move(stream), D, 2};
    }
    throw ConfigError("unknown family: " + cfg.family);
}

} // namespace

CampaignSummary run_campaign(const CampaignConfig& cfg, std::ostream& csv) {
    Prepared prep = prepare(cfg);
    CampaignSummary sum;
    sum.family = prep.stream.family;
    sum.target = cfg.target;

    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    csv << "# generated " << std::put_time(std::gmtime(&t), "%Y-%m-%dT%H:%M:%SZ") << "\n";
    csv << "family,u,d,coords,h,m,ratio,defect_vs_target\n";

    Real target_r = Real::of(cfg.target, cfg.precision + kGuardBits);
    bool first = true;
    Real max_ratio(cfg.precision), min_ratio(cfg.precision);
    Real min_defect(cfg.precision), max_defect(cfg.precision), fitted(cfg.precision);
    std::vector<std::string> errors;

    for (const auto& sp : prep.stream.points) {
        try {
            RatioResult r = ratio(prep.arrangement, cfg.S, sp.point, cfg.precision);
            Real defect = r.m - target_r * r.h;
            csv << "\"" << prep.stream.family << "\"," << sp.u.get_str() << ","
                << sp.field_d.get_str() << ",\"" << serialize_point(sp.point) << "\","
                << r.h.str() << "," << r.m.str() << "," << r.ratio.str() << ","
                << defect.str() << "\n";
            if (first || r.ratio > max_ratio) max_ratio = r.ratio;
            if (first || r.ratio < min_ratio) min_ratio = r.ratio;
            if (first || defect < min_defect) min_defect = defect;
            if (first || defect > max_defect) max_defect = defect;
            Real a = abs(defect);
            if (first || a > fitted) fitted = a;
            first = false;
            ++sum.points;
        } catch (const Error& e) {
            errors.push_back(serialize_point(sp.point) + ": " + e.what());
            ++sum.errors;
        }
    }

    json j;
    j["family"] = prep.stream.family;
    j["points"] = sum.points;
    j["errors"] = errors;
    j["target"] = cfg.target.get_str();
    j["s_places"] = cfg.S.str();
    j["max_exp"] = cfg.max_exp;
    j["precision"] = static_cast<long>(cfg.precision);
    if (sum.points) {
        sum.max_ratio = max_ratio.str();
        sum.min_ratio = min_ratio.str();
        sum.min_defect = min_defect.str();
        sum.max_defect = max_defect.str();
        sum.fitted_constant = fitted.str();
        j["max_ratio"] = sum.max_ratio;
        j["min_ratio"] = sum.min_ratio;
        j["min_defect"] = sum.min_defect;
        j["max_defect"] = sum.max_defect;
        j["fitted_constant"] = sum.fitted_constant;
    }
    long bt_n = prep.ambient_n;
    j["bounds"] = bound_table_json(bound_table(cfg.delta, bt_n, bt_n));
    sum.json = j.dump(2);
    return sum;
}

CampaignSummary run_campaign_files(const CampaignConfig& cfg, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::ofstream csv(out_dir + "/records.csv");
    if (!csv) throw ConfigError("cannot write to " + out_dir);
    CampaignSummary sum = run_campaign(cfg, csv);
    std::ofstream js(out_dir + "/summary.json");
    js << sum.json << "\n";
    return sum;
}

std::vector<CampaignRecord> read_campaign_csv(std::istream& in) {
    std::vector<CampaignRecord> out;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true; // column header
            continue;
        }
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (char ch : line) {
            if (ch == '"') {
                quoted = !quoted;
            } else if (ch == ',' && !quoted) {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        fields.push_back(cur);
        if (fields.size() != 8) throw ConfigError("malformed CSV row: " + line);
        CampaignRecord r;
        r.family = fields[0];
        r.u = Rat(fields[1]);
        r.u.canonicalize();
        r.d = Int(fields[2]);
        r.coords = fields[3];
        auto real_of = [&](const std::string& s) {
            Real v(kDefaultPrec);
            mpfr_set_str(v.raw(), s.c_str(), 10, MPFR_RNDN);
            return v;
        };
        r.h = real_of(fields[4]);
        r.m = real_of(fields[5]);
        r.ratio = real_of(fields[6]);
        r.defect_vs_target = real_of(fields[7]);
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace heightlab
