// Python bindings. Squares and entry sets are exposed as classes; structured
// results (certificates, outcomes, bounds, species reports) cross as JSON
// text and are decoded by the pure-Python wrapper.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "plexforge/analyze.hpp"
#include "plexforge/bounds.hpp"
#include "plexforge/construct.hpp"
#include "plexforge/error.hpp"
#include "plexforge/report.hpp"
#include "plexforge/search.hpp"
#include "plexforge/species.hpp"
#include "plexforge/suite.hpp"

namespace py = pybind11;
using namespace plexforge;

namespace {

using Triple = std::tuple<int, int, int>;

std::vector<Entry> to_entries(const std::vector<Triple>& triples)
{
    std::vector<Entry> out;
    out.reserve(triples.size());
    for (auto [r, c, s] : triples)
        out.push_back({r, c, s});
    return out;
}

std::vector<Triple> to_triples(const std::vector<Entry>& entries)
{
    std::vector<Triple> out;
    out.reserve(entries.size());
    for (const auto& e : entries)
        out.emplace_back(e.row, e.col, e.sym);
    return out;
}

Construction construction(const std::string& variant, int n, int k, int m)
{
    if (variant == "kk2")
        return KK2Params{k, m};
    if (variant == "mod4")
        return TriplexVariant::mod4(n);
    if (variant == "mod10of12")
        return TriplexVariant::mod10of12(m);
    if (variant == "mod2of12")
        return TriplexVariant::mod2of12(m);
    if (variant == "special")
        return TriplexVariant::small_order(n);
    throw Error(ErrorCode::BadParams, "unknown variant " + variant);
}

SearchBudget budget(std::optional<std::uint64_t> node_limit, std::optional<std::uint64_t> solution_limit,
                    std::uint64_t seed)
{
    SearchBudget b;
    b.node_limit = node_limit;
    b.solution_limit = solution_limit;
    b.deterministic_seed = seed;
    return b;
}

SearchOptions options(int jobs, bool delta_pruning)
{
    SearchOptions o;
    o.jobs = jobs;
    o.delta_pruning = delta_pruning;
    return o;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Latin squares, plexes and nonexistence certificates";

    static py::exception<Error> error(m, "PlexforgeError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    py::class_<LatinSquare>(m, "LatinSquare")
        .def(py::init([](const std::vector<std::vector<int>>& rows) {
                 return LatinSquare::from_grid(static_cast<int>(rows.size()), rows);
             }),
             py::arg("rows"))
        .def_property_readonly("order", &LatinSquare::order)
        .def("at", &LatinSquare::at, py::arg("row"), py::arg("col"))
        .def("rows", &LatinSquare::rows)
        .def("entries", [](const LatinSquare& s) { return to_triples(s.entries()); })
        .def("to_text", [](const LatinSquare& s) { return to_text(s); })
        .def("digest", [](const LatinSquare& s) { return digest(s); })
        .def_static("parse", [](const std::string& text) { return parse_square(text); })
        .def("__eq__", [](const LatinSquare& a, const LatinSquare& b) { return a == b; })
        .def("__repr__", [](const LatinSquare& s) { return "<LatinSquare order " + std::to_string(s.order()) + ">"; });

    py::class_<EntrySet>(m, "EntrySet")
        .def(py::init([](int order, const std::vector<Triple>& entries) { return EntrySet(order, to_entries(entries)); }),
             py::arg("order"), py::arg("entries"))
        .def_property_readonly("order", &EntrySet::order)
        .def("entries", [](const EntrySet& s) { return to_triples(s.entries()); })
        .def("to_text", [](const EntrySet& s) { return to_text(s); })
        .def_static("parse", [](const std::string& text) { return parse_entry_set(text); })
        .def("__len__", &EntrySet::size)
        .def("__eq__", [](const EntrySet& a, const EntrySet& b) { return a == b; });

    m.def("is_plex", &is_plex, py::arg("square"), py::arg("entries"), py::arg("k"));
    m.def("build_cyclic", &build_cyclic, py::arg("n"));
    m.def(
        "build_square",
        [](const std::string& variant, int n, int k, int mm) {
            if (variant == "special")
                return build_special_square(n);
            return build_modified_square(construction(variant, n, k, mm));
        },
        py::arg("variant"), py::arg("n") = 0, py::arg("k") = 0, py::arg("m") = 0);
    m.def(
        "build_plex",
        [](const std::string& variant, int n, int k, int mm) {
            if (variant == "special")
                return build_special_triplex(n);
            return build_plex(construction(variant, n, k, mm));
        },
        py::arg("variant"), py::arg("n") = 0, py::arg("k") = 0, py::arg("m") = 0);

    m.def("delta", [](const Triple& e, int n, int mm) { return delta({std::get<0>(e), std::get<1>(e), std::get<2>(e)}, n, mm); },
          py::arg("entry"), py::arg("n"), py::arg("m"));
    m.def(
        "certify_json",
        [](const LatinSquare& s, const std::string& method, int k, int mm, int r, bool tighten) {
            Certificate cert;
            if (method == "matching")
                cert = matching_certificate(s, k, mm, tighten);
            else if (method == "botrows")
                cert = botrows_certificate(s, k, mm, r);
            else if (method == "steptype")
                cert = steptype_certificate(s, k, mm);
            else
                throw Error(ErrorCode::BadParams, "unknown method " + method);
            return to_json(cert).dump();
        },
        py::arg("square"), py::arg("method"), py::arg("k"), py::arg("m"), py::arg("r"), py::arg("tighten"));
    m.def(
        "verify_json",
        [](const std::string& cert, const LatinSquare& s) {
            Json j;
            try {
                j = Json::parse(cert);
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorCode::ParseError, std::string("certificate json: ") + e.what());
            }
            return verify_certificate(certificate_from_json(j), s);
        },
        py::arg("certificate"), py::arg("square"));

    m.def(
        "search_json",
        [](const LatinSquare& s, int k, bool count, std::optional<std::uint64_t> node_limit,
           std::optional<std::uint64_t> solution_limit, std::uint64_t seed, int jobs, bool delta_pruning) {
            SearchOutcome out;
            {
                py::gil_scoped_release release;
                const auto b = budget(node_limit, solution_limit, seed);
                const auto o = options(jobs, delta_pruning);
                out = count ? count_plexes(s, k, b, o) : find_plex(s, k, b, o);
            }
            return to_json(out).dump();
        },
        py::arg("square"), py::arg("k"), py::arg("count"), py::arg("node_limit"), py::arg("solution_limit"),
        py::arg("seed"), py::arg("jobs"), py::arg("delta_pruning"));
    m.def(
        "enumerate_completions",
        [](int order, const std::vector<std::vector<int>>& rows) {
            return enumerate_completions(LatinRectangle::from_rows(order, rows));
        },
        py::arg("order"), py::arg("rows"));
    m.def(
        "random_square",
        [](int order, std::uint64_t seed) { return random_completion(LatinRectangle::from_rows(order, {}), seed); },
        py::arg("order"), py::arg("seed"));
    m.def("find_order6_example", &find_order6_example);

    m.def("canonical_key", [](const LatinSquare& s) { return canonical_key(s).hex(); }, py::arg("square"));
    m.def("conjugates", &conjugates, py::arg("square"));
    m.def("relabel", &relabel, py::arg("square"), py::arg("rows"), py::arg("cols"), py::arg("syms"));
    m.def("classify_json", [](const std::vector<LatinSquare>& squares) { return species_report(classify(squares)).dump(); },
          py::arg("squares"));
    m.def(
        "delta_signature",
        [](const LatinSquare& s, const std::vector<int>& rows) { return delta_signature(s, rows).matrix; },
        py::arg("square"), py::arg("rows"));

    m.def(
        "bound_json",
        [](const std::string& formula, int n, int k, int a, int mm, const std::string& mode) {
            if (formula == "extension")
                return to_json(extension_bound(n, k)).dump();
            if (formula == "stepcount")
                return to_json(step_count_bound(a, mm)).dump();
            if (formula == "species-floor") {
                if (mode != "quadratic" && mode != "three-halves")
                    throw Error(ErrorCode::BadParams, "unknown mode " + mode);
                return to_json(species_floor(n, mode == "quadratic" ? SpeciesFloorMode::Quadratic
                                                                    : SpeciesFloorMode::ThreeHalves))
                    .dump();
            }
            throw Error(ErrorCode::BadParams, "unknown formula " + formula);
        },
        py::arg("formula"), py::arg("n"), py::arg("k"), py::arg("a"), py::arg("m"), py::arg("mode"));

    m.def(
        "run_criterion",
        [](int id) {
            CriterionResult r;
            {
                py::gil_scoped_release release;
                r = run_criterion(id);
            }
            return py::make_tuple(r.passed, r.name, r.detail);
        },
        py::arg("id"));
}
