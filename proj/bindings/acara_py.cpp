#include "acara/decomp.hpp"
#include "acara/experiment.hpp"
#include "acara/gauge.hpp"
#include "acara/instances.hpp"
#include "acara/solver.hpp"
#include "acara/tensor.hpp"
#include "acara/wsc.hpp"

#include <pybind11/numpy.h>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

namespace py = pybind11;
using namespace acara;

namespace {

Eigen::MatrixXd instance_to_matrix(const NnTensor& t) {
  Eigen::MatrixXd m(t.d, t.d);
  for (int i = 0; i < t.d; ++i)
    for (int j = 0; j < t.d; ++j) m(i, j) = t.entries[std::size_t(i) * std::size_t(t.d) + std::size_t(j)];
  return m;
}

StopRule make_stop(std::optional<double> epsilon, std::optional<long long> k_max) {
  StopRule stop;
  stop.epsilon = epsilon;
  stop.k_max = k_max;
  return stop;
}

py::array_t<Complex> dense_to_array(const DenseTensor& t) {
  std::vector<py::ssize_t> shape(t.dims.begin(), t.dims.end());
  py::array_t<Complex> out(shape);
  std::copy(t.entries.begin(), t.entries.end(), out.mutable_data());
  return out;
}

DenseTensor array_to_dense(const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
  std::vector<int> dims;
  for (py::ssize_t i = 0; i < a.ndim(); ++i) dims.push_back(int(a.shape(i)));
  DenseTensor t(dims);
  std::copy(a.data(), a.data() + a.size(), t.entries.begin());
  return t;
}

}  // namespace

PYBIND11_MODULE(_acara, m) {
  m.doc() = "sparse approximate convex decompositions: Schatten/entrywise norms, the "
            "deterministic approximate Caratheodory solver, and closed-form rank budgets";

  py::register_exception<SolverInfeasible>(m, "SolverInfeasible");
  py::register_exception<SizeCapError>(m, "SizeCapError");

  // norms and derivatives
  m.def("schatten_norm", &schatten_norm, py::arg("matrix"), py::arg("p"));
  m.def("schatten_quasinorm", &schatten_quasinorm, py::arg("matrix"), py::arg("q"));
  m.def("lp_norm", py::overload_cast<const ComplexMatrix&, double>(&lp_norm), py::arg("matrix"),
        py::arg("p"));
  m.def(
      "svd",
      [](const ComplexMatrix& matrix) {
        const SvdResult dec = svd(matrix);
        return py::make_tuple(dec.u, dec.singular_values, dec.v);
      },
      py::arg("matrix"), "thin SVD as (U, singular_values, V) with input = U diag(s) V^*");
  m.def("schatten_directional_derivative", &schatten_directional_derivative, py::arg("x"),
        py::arg("y"), py::arg("p"));
  m.def("lp_directional_derivative",
        py::overload_cast<const ComplexMatrix&, const ComplexMatrix&, double>(
            &lp_directional_derivative),
        py::arg("x"), py::arg("y"), py::arg("p"));
  m.def("hanner_residual", &hanner_residual, py::arg("a"), py::arg("b"), py::arg("p"));
  m.def("estimate_modulus_of_smoothness", &estimate_modulus_of_smoothness, py::arg("p"),
        py::arg("t"), py::arg("samples"), py::arg("seed"), py::arg("dim") = 4);

  // atom oracles
  py::class_<AtomOracle>(m, "AtomOracle")
      .def_property_readonly("size", &AtomOracle::size)
      .def_property_readonly("product_atoms",
                             [](const AtomOracle& o) { return o.product_atoms; })
      .def(
          "atom", [](const AtomOracle& o, std::size_t i) { return o.atoms.at(i).value; },
          py::arg("index"))
      .def(
          "diameter",
          [](const AtomOracle& o, double p, const std::string& kind) {
            return o.diameter(p, norm_kind_from_string(kind));
          },
          py::arg("p"), py::arg("norm_kind"));
  m.def("basis_atoms", &basis_atoms, py::arg("n"), py::arg("d"));
  m.def("product_psd_atoms", &product_psd_atoms, py::arg("dims"), py::arg("p"), py::arg("count"),
        py::arg("seed"), py::arg("with_negatives") = false);
  m.def("diagonal_projector_atoms", &diagonal_projector_atoms, py::arg("dims"));

  // solver
  py::class_<SolveResult>(m, "SolveResult")
      .def_property_readonly("iterate", [](const SolveResult& r) { return r.iterate; })
      .def_property_readonly("final_error", [](const SolveResult& r) { return r.final_error; })
      .def_property_readonly("k", [](const SolveResult& r) { return r.k; })
      .def_property_readonly("atom_ids",
                             [](const SolveResult& r) { return r.combination.atom_ids; })
      .def_property_readonly("weights", [](const SolveResult& r) { return r.combination.weights; })
      .def_property_readonly("errors",
                             [](const SolveResult& r) {
                               std::vector<double> out;
                               for (const TraceRow& row : r.trace.rows) out.push_back(row.error);
                               return out;
                             })
      .def_property_readonly("bounds",
                             [](const SolveResult& r) {
                               std::vector<double> out;
                               for (const TraceRow& row : r.trace.rows) out.push_back(row.bound);
                               return out;
                             })
      .def_property_readonly("exact_representation",
                             [](const SolveResult& r) { return r.trace.exact_representation; })
      .def_property_readonly("reached_epsilon",
                             [](const SolveResult& r) { return r.trace.reached_epsilon; })
      .def("trace_csv", [](const SolveResult& r) { return trace_csv(r.trace); })
      .def("trace_metadata_json", [](const SolveResult& r) { return trace_metadata_json(r.trace); });
  m.def(
      "approx_caratheodory",
      [](const ComplexMatrix& target, const AtomOracle& oracle, double p, const std::string& kind,
         const std::string& method, std::optional<double> epsilon, std::optional<long long> k_max,
         std::uint64_t seed) {
        return approx_caratheodory(target, oracle, p, norm_kind_from_string(kind),
                                   method_from_string(method), make_stop(epsilon, k_max), seed);
      },
      py::arg("target"), py::arg("oracle"), py::arg("p"), py::arg("norm_kind") = "lp",
      py::arg("method") = "greedy", py::arg("epsilon") = std::nullopt,
      py::arg("k_max") = std::nullopt, py::arg("seed") = 0,
      py::call_guard<py::gil_scoped_release>());

  // closed-form bounds and budgets
  m.def(
      "error_bound",
      [](long long k, double diam, double p, const std::string& kind) {
        return error_bound(k, diam, p, norm_kind_from_string(kind));
      },
      py::arg("k"), py::arg("diam"), py::arg("p"), py::arg("norm_kind") = "schatten");
  m.def(
      "required_k",
      [](double epsilon, double diam, double p, const std::string& kind) {
        return required_k(epsilon, diam, p, norm_kind_from_string(kind));
      },
      py::arg("epsilon"), py::arg("diam"), py::arg("p"), py::arg("norm_kind") = "schatten");

  py::class_<RankBudget>(m, "RankBudget")
      .def_readonly("bound_kind", &RankBudget::bound_kind)
      .def_readonly("value", &RankBudget::value)
      .def_readonly("epsilon", &RankBudget::epsilon)
      .def_readonly("p", &RankBudget::p)
      .def_readonly("group_order", &RankBudget::group_order)
      .def("__repr__", [](const RankBudget& b) {
        return "RankBudget(" + b.bound_kind + ", value=" + std::to_string(b.value) + ")";
      });
  m.def(
      "budget_rank",
      [](double epsilon, double p, double mu, long long group_order, const std::string& kind) {
        return budget_rank(epsilon, p, mu, group_order, norm_kind_from_string(kind));
      },
      py::arg("epsilon"), py::arg("p"), py::arg("mu"), py::arg("group_order") = 1,
      py::arg("norm_kind") = "schatten");
  m.def(
      "budget_puri",
      [](double epsilon, double p, double mu_sqrt, long long group_order, const std::string& kind) {
        return budget_puri(epsilon, p, mu_sqrt, group_order, norm_kind_from_string(kind));
      },
      py::arg("epsilon"), py::arg("p"), py::arg("mu_sqrt"), py::arg("group_order") = 1,
      py::arg("norm_kind") = "schatten");
  m.def(
      "budget_sep",
      [](double epsilon, double p, long long group_order, const std::string& kind) {
        return budget_sep(epsilon, p, group_order, norm_kind_from_string(kind));
      },
      py::arg("epsilon"), py::arg("p"), py::arg("group_order") = 1,
      py::arg("norm_kind") = "schatten");
  m.def("budget_schatten1", &budget_schatten1, py::arg("epsilon"), py::arg("p2_budget"),
        py::arg("d"), py::arg("n"));
  m.def("budget_nn", &budget_nn, py::arg("epsilon"), py::arg("p"), py::arg("k_l1"),
        py::arg("group_order") = 1);

  // diagonal gauge values and the square-root pipeline
  m.def(
      "mu1_diagonal_exact",
      [](const RealVector& diag) { return mu1_diagonal_exact(DiagonalMatrix(diag)); },
      py::arg("diag"));
  m.def(
      "mu_sqrt_bounds_diagonal",
      [](const RealVector& diag, double p) {
        const GaugeEstimate est = mu_sqrt_bounds_diagonal(DiagonalMatrix(diag), p);
        return py::make_tuple(est.lower, est.upper);
      },
      py::arg("diag"), py::arg("p"));
  py::class_<SqrtPipelineResult>(m, "SqrtPipelineResult")
      .def_property_readonly("rho_prime",
                             [](const SqrtPipelineResult& r) { return r.rho_prime.diag; })
      .def_property_readonly("sqrt_iterate",
                             [](const SqrtPipelineResult& r) { return r.sqrt_iterate.diag; })
      .def_readonly("achieved_error", &SqrtPipelineResult::achieved_error)
      .def_readonly("k", &SqrtPipelineResult::k)
      .def_readonly("distinct_atoms", &SqrtPipelineResult::distinct_atoms)
      .def_readonly("mu", &SqrtPipelineResult::mu)
      .def_readonly("delta", &SqrtPipelineResult::delta)
      .def_readonly("budget", &SqrtPipelineResult::budget);
  m.def(
      "approx_sqrt_pipeline",
      [](const RealVector& rho_diag, double epsilon, double p, const std::string& method,
         long long group_order) {
        return approx_sqrt_pipeline(DiagonalMatrix(rho_diag), epsilon, p,
                                    method_from_string(method), group_order);
      },
      py::arg("rho_diag"), py::arg("epsilon"), py::arg("p"), py::arg("method") = "greedy",
      py::arg("group_order") = 1, py::call_guard<py::gil_scoped_release>());

  // instances
  m.def(
      "build_random_instance",
      [](int d, std::uint64_t seed) { return instance_to_matrix(build_random_instance(d, seed)); },
      py::arg("d"), py::arg("seed"));
  m.def(
      "build_rank1_instance",
      [](int d, std::uint64_t seed) { return instance_to_matrix(build_rank1_instance(d, seed)); },
      py::arg("d"), py::arg("seed"));
  m.def(
      "build_euclid_instance", [](int d) { return instance_to_matrix(build_euclid_instance(d)); },
      py::arg("d"));
  m.def(
      "build_slack_instance", [](int d) { return instance_to_matrix(build_slack_instance(d)); },
      py::arg("d"));

  // weighted simplicial complexes and group actions
  py::class_<Wsc>(m, "Wsc")
      .def_property_readonly("n", [](const Wsc& w) { return w.n; })
      .def("__repr__", [](const Wsc& w) {
        return "Wsc(n=" + std::to_string(w.n) + ", facets=" +
               std::to_string(facets(w).facets.size()) + ")";
      });
  py::class_<GroupAction>(m, "GroupAction")
      .def_property_readonly("size", &GroupAction::size)
      .def("__repr__",
           [](const GroupAction& g) { return "GroupAction(order=" + std::to_string(g.size()) + ")"; });
  m.def("build_simplex", &build_simplex, py::arg("n"));
  m.def("build_line", &build_line, py::arg("n"));
  m.def("build_circle", &build_circle, py::arg("n"));
  m.def("build_cyclic_action", &build_cyclic_action, py::arg("wsc"));
  m.def("trivial_action", &trivial_action, py::arg("wsc"));
  m.def(
      "validate_wsc",
      [](const Wsc& w) {
        const ValidationReport rep = validate_wsc(w);
        return py::make_tuple(rep.ok, rep.message);
      },
      py::arg("wsc"));
  m.def(
      "validate_group_action",
      [](const Wsc& w, const GroupAction& g) {
        const ValidationReport rep = validate_group_action(w, g);
        return py::make_tuple(rep.ok, rep.message);
      },
      py::arg("wsc"), py::arg("action"));
  m.def("is_connected", &is_connected, py::arg("wsc"));
  m.def("is_free_action", &is_free_action, py::arg("wsc"), py::arg("action"));
  m.def(
      "facets",
      [](const Wsc& w) {
        const FacetMultiset fm = facets(w);
        std::vector<std::pair<std::vector<int>, std::uint64_t>> out;
        for (std::size_t f = 0; f < fm.facets.size(); ++f)
          out.emplace_back(simplex_vertices(fm.facets[f]), fm.multiplicity[f]);
        return out;
      },
      py::arg("wsc"), "facets as (sorted vertex list, multiplicity) pairs");
  m.def("parse_wsc", &parse_wsc_string, py::arg("text"));
  m.def("format_wsc", &format_wsc, py::arg("wsc"));
  m.def("parse_group_action", &parse_group_action_string, py::arg("wsc"), py::arg("text"));
  m.def("format_group_action", &format_group_action, py::arg("wsc"), py::arg("action"));

  // decompositions, interchanged through the JSON serialization
  py::class_<OmegaGDecomposition>(m, "OmegaGDecomposition")
      .def_property_readonly("index_set_size",
                             [](const OmegaGDecomposition& d) { return d.index_set_size; })
      .def_property_readonly("local_dims",
                             [](const OmegaGDecomposition& d) { return d.local_dims; })
      .def("__repr__", [](const OmegaGDecomposition& d) {
        return "OmegaGDecomposition(index_set_size=" + std::to_string(d.index_set_size) + ")";
      });
  m.def(
      "decomposition_from_json",
      [](const std::string& text) { return decomposition_from_json(nlohmann::json::parse(text)); },
      py::arg("text"));
  m.def(
      "decomposition_to_json",
      [](const OmegaGDecomposition& dec) { return decomposition_to_json(dec).dump(2); },
      py::arg("decomposition"));
  m.def(
      "evaluate", [](const OmegaGDecomposition& dec) { return dense_to_array(evaluate(dec)); },
      py::arg("decomposition"),
      "dense tensor of the decomposition, indexed site by site");
  m.def(
      "check_g_compatibility",
      [](const OmegaGDecomposition& dec) {
        const ValidationReport rep = check_g_compatibility(dec);
        return py::make_tuple(rep.ok, rep.message);
      },
      py::arg("decomposition"));
  m.def(
      "symmetrize",
      [](const py::array_t<Complex, py::array::c_style | py::array::forcecast>& m_prime,
         const GroupAction& action, const OmegaGDecomposition& dec) {
        const SymmetrizeResult out = symmetrize(array_to_dense(m_prime), action, dec);
        return py::make_tuple(dense_to_array(out.averaged), out.dec);
      },
      py::arg("m_prime"), py::arg("action"), py::arg("decomposition"),
      "group average of the tensor plus an equivariant decomposition over the "
      "index set enlarged by the group order");
}
