#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lcmix/io.hpp"
#include "lcmix/version.hpp"

namespace py = pybind11;
using namespace lcmix;

namespace {

py::object json_to_py(const io::json& j) {
    namespace nl = nlohmann;
    switch (j.type()) {
        case nl::json::value_t::null: return py::none();
        case nl::json::value_t::boolean: return py::bool_(j.get<bool>());
        case nl::json::value_t::number_integer: return py::int_(j.get<long long>());
        case nl::json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case nl::json::value_t::number_float: return py::float_(j.get<double>());
        case nl::json::value_t::string: return py::str(j.get<std::string>());
        case nl::json::value_t::array: {
            py::list out;
            for (const auto& e : j) out.append(json_to_py(e));
            return out;
        }
        default: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
    }
}

Rat rat_arg(const std::string& s) { return Rat::parse(s); }

} // namespace

PYBIND11_MODULE(lcmix, m) {
    m.doc() = "aperiodicity, mixing times, local consistency, and fooling instances";
    m.attr("__version__") = kVersion;

    py::register_exception<InputError>(m, "InputError");
    py::register_exception<ResourceError>(m, "ResourceError");

    py::class_<RelationalStructure>(m, "Structure")
        .def_static("from_json", [](const std::string& text) { return io::parse_structure_text(text); })
        .def("to_json", [](const RelationalStructure& s) { return io::structure_to_json(s).dump(); })
        .def_property_readonly("domain_size", [](const RelationalStructure& s) { return s.domain_size; })
        .def_property_readonly("is_monic", [](const RelationalStructure& s) { return s.is_monic(); })
        .def_property_readonly("total_tuples", [](const RelationalStructure& s) { return s.total_tuples(); })
        .def("__repr__", [](const RelationalStructure& s) {
            return "<Structure n=" + std::to_string(s.domain_size) + " symbols=" +
                   std::to_string(s.num_symbols()) + ">";
        });

    py::class_<Hypergraph>(m, "Hypergraph")
        .def(py::init([](int n, int r, std::vector<std::vector<int>> edges) {
                 return Hypergraph::make(n, r, std::move(edges));
             }),
             py::arg("n"), py::arg("r"), py::arg("edges"))
        .def_static("from_json", [](const std::string& text) { return io::parse_hypergraph_text(text); })
        .def("to_json", [](const Hypergraph& h) { return io::hypergraph_to_json(h).dump(); })
        .def_readonly("n", &Hypergraph::n)
        .def_readonly("r", &Hypergraph::r)
        .def_readonly("edges", &Hypergraph::edges)
        .def("__repr__", [](const Hypergraph& h) {
            return "<Hypergraph n=" + std::to_string(h.n) + " m=" + std::to_string(h.m()) + ">";
        });

    m.def("cycle_graph", &cycle_graph, py::arg("n"));
    m.def("clique_structure", &clique_structure, py::arg("r"), py::arg("c"));
    m.def("group_structure", &group_structure, py::arg("cayley"));
    m.def("monic_product", &monic_product, py::arg("a"));
    m.def("has_loop", &has_loop, py::arg("b"));
    m.def("find_homomorphism", [](const RelationalStructure& x, const RelationalStructure& a)
              -> std::optional<std::vector<int>> { return find_homomorphism(x, a); },
          py::arg("x"), py::arg("a"));

    m.def("orient", [](const Hypergraph& h, std::uint64_t seed) { return orient(h, seed).s; },
          py::arg("h"), py::arg("seed") = 0);
    m.def("symmetrize",
          [](const RelationalStructure& s) { return symmetrize(OrientedMonicStructure::from(s)); },
          py::arg("oriented"));

    m.def("is_aperiodic",
          [](const RelationalStructure& a) { return json_to_py(io::report_to_json(is_aperiodic(a))); },
          py::arg("a"));
    m.def("mixing_time", [](const RelationalStructure& a) -> py::object {
        auto rep = is_aperiodic(a);
        if (rep.mixing_time) return py::int_(*rep.mixing_time);
        return py::none();
    });

    m.def("girth", [](const Hypergraph& h) -> py::object {
        auto g = girth(h);
        if (g) return py::int_(*g);
        return py::none();
    });
    m.def("links", &links);
    m.def("pendent_edges", &pendent_edges);
    m.def("tau_fibrosity", &tau_fibrosity, py::arg("h"), py::arg("tau"));
    m.def("chromatic_number", &chromatic_number, py::arg("h"),
          py::arg("node_budget") = kDefaultSearchBudget);
    m.def("independence_number", &independence_number, py::arg("h"),
          py::arg("node_budget") = kDefaultSearchBudget);
    m.def("hg_stats", [](const Hypergraph& h, int tau, const std::optional<std::string>& beta) {
              std::optional<Rat> b;
              if (beta) b = rat_arg(*beta);
              return json_to_py(io::report_to_json(fibrosity_report(h, tau, b)));
          },
          py::arg("h"), py::arg("tau") = 1, py::arg("beta") = std::nullopt);
    m.def("is_beta_sparse",
          [](const Hypergraph& h, const std::string& beta) { return is_beta_sparse(h, rat_arg(beta)); });
    m.def("is_hereditarily_beta_sparse", [](const Hypergraph& h, const std::string& beta) {
        return is_hereditarily_beta_sparse(h, rat_arg(beta));
    });
    m.def("is_threshold_sparse",
          [](const Hypergraph& h, const std::string& gamma, const std::string& beta) {
              return json_to_py(io::report_to_json(is_threshold_sparse(h, rat_arg(gamma), rat_arg(beta))));
          });

    m.def("derived_params", [](int g, int h, const std::string& beta, int r) {
              return json_to_py(io::report_to_json(derived_params(g, h, rat_arg(beta), r)));
          },
          py::arg("g"), py::arg("h"), py::arg("beta"), py::arg("r"));
    m.def("sample_er", &sample_er, py::arg("n"), py::arg("p"), py::arg("r"), py::arg("seed"));
    m.def("sparsity_failure_bound", [](int r, double ell, double n, double mu, double nu) {
        return (double)sparsity_failure_bound(r, ell, n, mu, nu);
    });
    m.def("generate_verified",
          [](int n, double p, int r, int g, int h, const std::string& beta,
             const std::string& delta, int max_attempts, std::uint64_t seed) {
              auto [hg, rep] = generate_verified(n, p, r, g, h, rat_arg(beta), rat_arg(delta),
                                                 max_attempts, seed);
              py::object hobj = hg ? py::cast(*hg) : py::object(py::none());
              return py::make_tuple(hobj, json_to_py(io::report_to_json(rep)));
          },
          py::arg("n"), py::arg("p"), py::arg("r"), py::arg("g"), py::arg("h"), py::arg("beta"),
          py::arg("delta") = "0", py::arg("max_attempts") = 20, py::arg("seed") = 0);

    m.def("lc",
          [](const RelationalStructure& x, const RelationalStructure& a, int kappa,
             long long budget) {
              LcOptions opts;
              opts.slot_budget = budget;
              return json_to_py(io::report_to_json(lc(x, a, kappa, opts)));
          },
          py::arg("x"), py::arg("a"), py::arg("kappa"), py::arg("budget") = 50'000'000);

    m.def("check_consistency_gap",
          [](const RelationalStructure& x, const RelationalStructure& a, int kappa,
             const std::string& gamma) {
              return json_to_py(io::report_to_json(check_consistency_gap(x, a, kappa, rat_arg(gamma))));
          },
          py::arg("x"), py::arg("a"), py::arg("kappa"), py::arg("gamma"));

    m.def("epsilon_bound", [](int n_a, int r, long long tau, const std::string& beta, double delta,
                              long long n0) { return (double)epsilon_bound(n_a, r, tau, rat_arg(beta), delta, n0); });

    m.def("fooling_pipeline",
          [](const RelationalStructure& a, const RelationalStructure& b, long long n, double p,
             std::vector<int> kappa_list, std::uint64_t seed, int max_attempts, long long budget,
             int min_girth) {
              PipelineConfig pc;
              pc.n = n;
              pc.p = p;
              pc.kappa_list = std::move(kappa_list);
              pc.seed = seed;
              pc.max_attempts = max_attempts;
              pc.lc_budget = budget;
              pc.min_girth = min_girth;
              return json_to_py(io::report_to_json(fooling_pipeline(a, b, pc)));
          },
          py::arg("a"), py::arg("b"), py::arg("n"), py::arg("p"),
          py::arg("kappa_list") = std::vector<int>{0, 1, 2, 3}, py::arg("seed") = 0,
          py::arg("max_attempts") = 20, py::arg("budget") = 50'000'000,
          py::arg("min_girth") = 2);
}
