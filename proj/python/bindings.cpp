#include "eoregion/eoregion.hpp"
#include "eoregion/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace eoregion;

namespace {

PredictorVec from_qhat(const DataSource& src, const std::vector<double>& qhat)
{
    if (qhat.size() != src.size())
        throw Error(ErrorCode::DimensionMismatch, "qhat has " + std::to_string(qhat.size()) + " entries, source has " +
                                                      std::to_string(src.size()) + " rows");
    return PredictorVec::from_pointwise(src, qhat);
}

py::object to_python(const nlohmann::json& doc)
{
    return py::module_::import("json").attr("loads")(doc.dump());
}

py::dict region_dict(const DataSource& src, const RegionPolygon& region)
{
    py::list vertices;
    py::list witnesses;
    for (std::size_t k = 0; k < region.vertices.size(); ++k) {
        vertices.append(py::make_tuple(region.vertices[k].error, region.vertices[k].opp_diff));
        witnesses.append(region.witnesses[k].pointwise(src));
    }
    py::dict d;
    d["vertices"] = vertices;
    d["witnesses"] = witnesses;
    d["degenerate"] = region.degenerate;
    return d;
}

} // namespace

PYBIND11_MODULE(_eoregion, m)
{
    m.doc() = "Error vs opportunity-difference analysis for discrete data sources";

    static py::exception<Error> base(m, "EoRegionError", PyExc_ValueError);
    static py::exception<UndefinedEOError> undefined(m, "UndefinedEOError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const UndefinedEOError& e) {
            py::object exc = py::reinterpret_borrow<py::object>(undefined.ptr())(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            exc.attr("group") = e.group();
            PyErr_SetObject(undefined.ptr(), exc.ptr());
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(base.ptr())(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            PyErr_SetObject(base.ptr(), exc.ptr());
        }
    });

    py::class_<DataSource>(m, "DataSource")
        .def_static(
            "from_rows",
            [](const std::vector<std::tuple<std::string, int, double, double>>& rows, bool strict) {
                std::vector<SourceRow> out;
                for (const auto& [x, a, p, q] : rows) {
                    if (a != 0 && a != 1)
                        throw Error(ErrorCode::BadLabel, "a must be 0 or 1");
                    out.push_back({x, static_cast<std::uint8_t>(a), p, q});
                }
                return DataSource::from_rows(std::move(out), LoadOptions{.strict = strict});
            },
            py::arg("rows"), py::arg("strict") = false, "Rows are (x, a, p, q) tuples.")
        .def_static(
            "from_samples",
            [](const std::vector<std::tuple<std::string, int, int>>& samples) {
                std::vector<SampleRecord> out;
                for (const auto& [x, a, y] : samples) {
                    if ((a != 0 && a != 1) || (y != 0 && y != 1))
                        throw Error(ErrorCode::BadLabel, "a and y must be 0 or 1");
                    out.push_back({x, static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(y)});
                }
                return eoregion::from_samples(out);
            },
            py::arg("samples"), "Samples are (x, a, y) tuples.")
        .def_static(
            "load", [](const std::string& path, bool strict) { return io::read_distribution(path, {.strict = strict}); },
            py::arg("path"), py::arg("strict") = false)
        .def("__len__", &DataSource::size)
        .def_property_readonly("rows",
                               [](const DataSource& s) {
                                   py::list out;
                                   for (const auto& r : s.rows())
                                       out.append(py::make_tuple(r.x, int(r.a), r.p, r.q));
                                   return out;
                               })
        .def_property_readonly("p", [](const DataSource& s) { return std::vector<double>(s.p().begin(), s.p().end()); })
        .def_property_readonly("q", [](const DataSource& s) { return std::vector<double>(s.q().begin(), s.q().end()); })
        .def_property_readonly("a", [](const DataSource& s) { return std::vector<int>(s.a().begin(), s.a().end()); })
        .def("is_deterministic", &DataSource::is_deterministic)
        .def("to_json", [](const DataSource& s) { return to_python(io::distribution_to_json(s)); });

    m.def("three_region_source", [](const std::array<double, 3>& P, const std::array<double, 3>& Q) {
        return three_region_source(P, Q);
    });
    m.def("fixtures", [] { return paper_fixtures(); }, "The embedded cloud, non-example and ex-plane sources.");

    m.def("positive_rate", &positive_rate);
    m.def("error", [](const DataSource& s, const std::vector<double>& qhat) { return error(s, from_qhat(s, qhat)); });
    m.def("accuracy", [](const DataSource& s, const std::vector<double>& qhat) { return accuracy(s, from_qhat(s, qhat)); });
    m.def("opp_diff", [](const DataSource& s, const std::vector<double>& qhat) { return opp_diff(s, from_qhat(s, qhat)); });
    m.def(
        "bayes",
        [](const DataSource& s, bool inclusive) {
            return bayes(s, inclusive ? Tie::Inclusive : Tie::Strict).pointwise(s);
        },
        py::arg("source"), py::arg("inclusive") = false);
    m.def("bayes_accuracy", &bayes_accuracy);
    m.def("trivial_accuracy", &trivial_accuracy);
    m.def("tau_star", &tau_star);

    m.def("region", [](const DataSource& s) { return region_dict(s, zonotope_region(s)); });
    m.def(
        "brute_force_region", [](const DataSource& s, unsigned threads) { return region_dict(s, brute_force_region(s, threads)); },
        py::arg("source"), py::arg("threads") = 1);
    m.def("eo_slice", [](const DataSource& s) {
        const auto i = eo_slice(zonotope_region(s));
        return py::make_tuple(i.err_min, i.err_max);
    });
    m.def(
        "render_svg",
        [](const DataSource& s, int width, int height) { return io::render_svg(s, zonotope_region(s), {width, height}); },
        py::arg("source"), py::arg("width") = 640, py::arg("height") = 480);

    m.def(
        "min_error_eo",
        [](const DataSource& s, double eps) {
            const auto best = min_error_eo(s, eps);
            py::dict d;
            d["qhat"] = best.predictor.pointwise(s);
            d["error"] = best.error;
            d["opp_diff"] = best.opp_diff;
            return d;
        },
        py::arg("source"), py::arg("eps") = 0.0);
    m.def("oracle_min_error_eo", &oracle_min_error_eo, py::arg("source"), py::arg("threads") = 1);
    m.def("nontrivial_exists", &nontrivial_exists);
    m.def("compatibility_verdict",
          [](const DataSource& s) { return to_python(io::verdict_to_json(compatibility_verdict(s), s)); });

    m.def("algorithm1", [](std::uint64_t seed) {
        const auto inst = algorithm1(seed);
        py::dict d;
        d["seed"] = seed;
        d["P"] = inst.P;
        d["Q"] = inst.Q;
        return d;
    });
    m.def("impossibility_source", [](const std::array<double, 3>& P, const std::array<double, 3>& Q) {
        return impossibility_source({P, Q, 0});
    });
    m.def("check_sufficiency", [](const DataSource& s) {
        const auto r = check_sufficiency(s);
        py::dict d;
        d["above"] = r.above;
        d["below"] = r.below;
        d["holds"] = r.holds;
        return d;
    });
    m.def("sufficiency_predictor", [](const DataSource& s) { return sufficiency_predictor(s).pointwise(s); });
}
