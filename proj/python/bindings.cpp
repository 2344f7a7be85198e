#include "heightlab/campaign.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace heightlab;

namespace {

PlaceSetS places_from_list(const std::vector<std::string>& s) {
    bool inf = false;
    std::vector<Int> primes;
    for (const auto& tok : s) {
        if (tok == "inf")
            inf = true;
        else
            primes.emplace_back(tok);
    }
    return PlaceSetS(inf, std::move(primes));
}

ProjPoint point_from_strings(const std::vector<std::string>& coords) {
    std::vector<QuadElem> c;
    for (const auto& s : coords) c.push_back(parse_quad_elem(s));
    return ProjPoint(std::move(c));
}

Arrangement lines_from_triples(const std::vector<std::array<std::string, 3>>& lines) {
    std::vector<HyperForm> forms;
    for (const auto& t : lines) {
        Rat a(t[0]), b(t[1]), c(t[2]);
        a.canonicalize();
        b.canonicalize();
        c.canonicalize();
        forms.push_back(LineP2(a, b, c).form());
    }
    return Arrangement(std::move(forms));
}

py::dict stream_point_dict(const StreamPoint& sp) {
    py::dict d;
    d["point"] = serialize_point(sp.point);
    d["param"] = serialize_point(sp.param);
    d["u"] = sp.u.get_str();
    d["d"] = sp.field_d.get_str();
    d["tangency"] = sp.tangency;
    d["s_integral_defect"] = sp.s_integral_defect.to_double();
    return d;
}

py::list stream_to_list(const PointStream& stream) {
    py::list out;
    for (const auto& sp : stream.points) out.append(stream_point_dict(sp));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact Weil heights, local Weil functions, and proximity functions "
              "for rational and quadratic points";

    py::register_exception<Error>(m, "HeightlabError");

    m.def(
        "height",
        [](const std::vector<std::string>& coords, long prec) {
            return height(point_from_strings(coords), prec).to_double();
        },
        py::arg("coords"), py::arg("prec") = 192,
        "Weil height of a projective point; coordinates are strings like "
        "'3', '-1/2', or '1+1*sqrt(2)'");

    m.def(
        "height_str",
        [](const std::vector<std::string>& coords, long prec, int digits) {
            return height(point_from_strings(coords), prec).str(digits);
        },
        py::arg("coords"), py::arg("prec") = 192, py::arg("digits") = 30);

    m.def(
        "degree_tag",
        [](const std::vector<std::string>& coords) {
            return point_from_strings(coords).degree_tag();
        },
        py::arg("coords"), "[Q(P):Q], 1 or 2");

    m.def(
        "canonical",
        [](const std::vector<std::string>& coords) {
            return serialize_point(point_from_strings(coords));
        },
        py::arg("coords"), "canonical form of a projective point");

    m.def(
        "proximity",
        [](const std::vector<std::array<std::string, 3>>& lines,
           const std::vector<std::string>& s_places, const std::vector<std::string>& coords,
           long prec) {
            auto r = ratio(lines_from_triples(lines), places_from_list(s_places),
                           point_from_strings(coords), prec);
            py::dict d;
            d["h"] = r.h.to_double();
            d["m"] = r.m.to_double();
            d["ratio"] = r.ratio.to_double();
            return d;
        },
        py::arg("lines"), py::arg("s_places"), py::arg("coords"), py::arg("prec") = 192,
        "h(P), m_{D,S}(P) and m/h for a line arrangement in P^2");

    m.def(
        "places",
        [](const std::string& d, const std::string& v) {
            FieldTag K;
            if (d != "0") K = QuadField(Int(d));
            std::vector<Place> ws =
                v == "inf" ? archimedean_places(K) : places_above(K, Int(v));
            py::list out;
            for (const auto& w : ws) {
                py::dict pd;
                pd["name"] = w.str();
                pd["e"] = w.e;
                pd["f"] = w.f;
                pd["local_degree"] = w.local_degree;
                out.append(pd);
            }
            return out;
        },
        py::arg("d"), py::arg("v"), "places of Q(sqrt(d)) above a base place");

    m.def(
        "product_formula_defect",
        [](const std::string& a, const std::string& b, const std::string& d, long prec) {
            Rat ra(a), rb(b);
            ra.canonicalize();
            rb.canonicalize();
            FieldTag K;
            if (d != "0") K = QuadField(Int(d));
            return product_formula_defect(QuadElem(ra, rb, K), prec).to_double();
        },
        py::arg("a"), py::arg("b") = "0", py::arg("d") = "0", py::arg("prec") = 192);

    m.def("galg_bound", [](long delta, long m, long n) { return galg_bound(delta, m, n).get_str(); });
    m.def("genth_bound", [](long delta, long n) { return genth_bound(delta, n).get_str(); });
    m.def("ruwang_bound", [](long delta, long n) { return ruwang_bound(delta, n).get_str(); });

    m.def(
        "s_units",
        [](const std::vector<std::string>& s_places, long max_exp) {
            std::vector<std::string> out;
            for (const auto& u : s_units_Q(places_from_list(s_places), max_exp))
                out.push_back(u.get_str());
            return out;
        },
        py::arg("s_places"), py::arg("max_exp"));

    m.def(
        "gen_exinf",
        [](int n, int delta, const std::vector<std::string>& s_places, long max_exp) {
            ExinfConfig cfg = exinf_config(n, delta);
            return stream_to_list(exinf_points(cfg, places_from_list(s_places), max_exp));
        },
        py::arg("n"), py::arg("delta"), py::arg("s_places"), py::arg("max_exp"));

    m.def(
        "gen_excon",
        [](const std::vector<std::string>& s_places, long max_exp) {
            return stream_to_list(excon_points(excon_config(), places_from_list(s_places), max_exp));
        },
        py::arg("s_places"), py::arg("max_exp"));

    m.def("exinf_lines", [](int n, int delta) {
        std::vector<std::array<std::string, 3>> out;
        for (const auto& l : exinf_config(n, delta).lines)
            out.push_back({l.a().get_str(), l.b().get_str(), l.c().get_str()});
        return out;
    });

    m.def("excon_lines", [] {
        std::vector<std::array<std::string, 3>> out;
        for (const auto& l : excon_config().lines)
            out.push_back({l.a().get_str(), l.b().get_str(), l.c().get_str()});
        return out;
    });

    m.def(
        "verify",
        [](const std::string& suite, int samples, std::uint64_t seed) {
            SuiteReport r = verify_suite(suite, samples, seed);
            return py::make_tuple(r.pass, r.details);
        },
        py::arg("suite"), py::arg("samples") = 0, py::arg("seed") = 1);

    m.def(
        "run_campaign",
        [](const std::string& config_json, const std::string& out_dir) {
            CampaignConfig cfg = parse_campaign_config(config_json);
            return run_campaign_files(cfg, out_dir).json;
        },
        py::arg("config_json"), py::arg("out_dir"),
        "run a campaign; writes records.csv and summary.json, returns the summary");
}
