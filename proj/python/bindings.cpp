#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mclass/errors.hpp"
#include "mclass/finite_function.hpp"
#include "mclass/matrix_distribution.hpp"
#include "mclass/reconstruction.hpp"
#include "mclass/sampling.hpp"
#include "mclass/symmetry.hpp"

namespace py = pybind11;
using namespace mclass;

namespace {

// Rationals cross the boundary as fractions.Fraction; anything whose str()
// parses as p/q or an integer is accepted on the way in.
py::object to_fraction(const Rational& r) {
  static const py::object fraction = py::module_::import("fractions").attr("Fraction");
  const py::object to_int = py::module_::import("builtins").attr("int");
  return fraction(to_int(boost::multiprecision::numerator(r).str()),
                  to_int(boost::multiprecision::denominator(r).str()));
}

Rational from_py(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>(), false); }

std::vector<Rational> rationals(const py::sequence& seq) {
  std::vector<Rational> out;
  for (const auto& item : seq) out.push_back(from_py(item));
  return out;
}

py::list fractions(const std::vector<Rational>& rs) {
  py::list out;
  for (const auto& r : rs) out.append(to_fraction(r));
  return out;
}

FiniteMeasureSpace make_space(const py::sequence& weights, const std::optional<std::vector<std::string>>& ids) {
  std::vector<Rational> w = rationals(weights);
  if (!ids) return FiniteMeasureSpace::from_weights(std::move(w));
  return FiniteMeasureSpace(*ids, std::move(w));
}

std::vector<std::vector<Label>> rows_of(const FiniteFunction& f) {
  std::vector<std::vector<Label>> rows;
  for (std::size_t i = 0; i < f.rows(); ++i) rows.emplace_back(f.row(i).begin(), f.row(i).end());
  return rows;
}

py::tuple metric_tuple(const MetricType& t) { return py::tuple(fractions(t.weights())); }

py::tuple form_tuple(const CanonicalForm& form) {
  py::list cells;
  for (const auto& v : form.values) cells.append(py::make_tuple(v.base, metric_tuple(v.row_type), metric_tuple(v.col_type)));
  return py::make_tuple(py::tuple(fractions(form.x_weights)), py::tuple(fractions(form.y_weights)), py::tuple(cells));
}

py::object witness_pair(const std::optional<IsoWitness>& w) {
  if (!w) return py::none();
  return py::make_tuple(w->rows, w->cols);
}

py::dict corner_dict(const CornerDistribution& d) {
  py::dict out;
  for (const auto& [cells, p] : d.entries) {
    py::list rows;
    for (std::size_t i = 0; i < d.k; ++i) {
      rows.append(py::tuple(py::cast(std::vector<Label>(cells.begin() + i * d.k, cells.begin() + (i + 1) * d.k))));
    }
    out[py::tuple(rows)] = to_fraction(p);
  }
  return out;
}

py::object collision_dict(const std::optional<CollisionWitness>& w) {
  if (!w) return py::none();
  py::dict out;
  out["first_rows"] = w->first_rows;
  out["first_cols"] = w->first_cols;
  out["second_rows"] = w->second_rows;
  out["second_cols"] = w->second_cols;
  return out;
}

CollisionWitness collision_from(const py::dict& d) {
  return {d["first_rows"].cast<std::vector<std::size_t>>(), d["first_cols"].cast<std::vector<std::size_t>>(),
          d["second_rows"].cast<std::vector<std::size_t>>(), d["second_cols"].cast<std::vector<std::size_t>>()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact computations on finite two-variable functions";

  auto error = py::register_exception<Error>(m, "MclassError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());
  py::register_exception<AmbiguousCell>(m, "AmbiguousCell", error.ptr());
  py::register_exception<SearchLimitExceeded>(m, "SearchLimitExceeded", error.ptr());

  py::class_<FiniteFunction>(m, "FiniteFunction")
      .def(py::init([](const py::sequence& x_weights, const py::sequence& y_weights,
                       const std::vector<std::vector<Label>>& values,
                       const std::optional<std::vector<std::string>>& x_atoms,
                       const std::optional<std::vector<std::string>>& y_atoms) {
             return FiniteFunction(make_space(x_weights, x_atoms), make_space(y_weights, y_atoms), values);
           }),
           py::arg("x_weights"), py::arg("y_weights"), py::arg("values"), py::arg("x_atoms") = py::none(),
           py::arg("y_atoms") = py::none())
      .def_property_readonly("x_weights", [](const FiniteFunction& f) { return fractions(f.x_space().weights()); })
      .def_property_readonly("y_weights", [](const FiniteFunction& f) { return fractions(f.y_space().weights()); })
      .def_property_readonly("x_atoms", [](const FiniteFunction& f) { return f.x_space().atom_ids(); })
      .def_property_readonly("y_atoms", [](const FiniteFunction& f) { return f.y_space().atom_ids(); })
      .def_property_readonly("values", &rows_of)
      .def_property_readonly("shape", [](const FiniteFunction& f) { return py::make_tuple(f.rows(), f.cols()); })
      .def(py::self == py::self)
      .def("__repr__", [](const FiniteFunction& f) {
        return "FiniteFunction(" + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) + ")";
      });

  m.def("is_pure", &is_pure);
  m.def("purify", [](const FiniteFunction& f) {
    auto p = purify(f);
    return py::make_tuple(p.pure, p.maps.row_projection, p.maps.col_projection);
  }, "Returns (pure, row_projection, col_projection).");
  m.def("canonical_form", [](const FiniteFunction& f) { return form_tuple(canonical_form(f)); },
        "Hashable tuple (x_weights, y_weights, cells); equal iff the functions are isomorphic.");
  m.def("isomorphic", [](const FiniteFunction& f, const FiniteFunction& g) { return witness_pair(isomorphic(f, g)); },
        "None, or (rows, cols) mapping purified atoms of f to those of g.");

  m.def("corner_distribution",
        [](const FiniteFunction& f, std::size_t k, std::uint64_t budget) {
          return corner_dict(exact_corner_distribution(f, k, budget));
        },
        py::arg("f"), py::arg("k"), py::arg("budget") = kDefaultEnumerationBudget,
        "Maps each k x k matrix (tuple of row tuples) to its exact probability.");
  m.def("corner_total_variation",
        [](const FiniteFunction& f, const FiniteFunction& g, std::size_t k, std::uint64_t budget) {
          return to_fraction(total_variation(exact_corner_distribution(f, k, budget),
                                             exact_corner_distribution(g, k, budget)));
        },
        py::arg("f"), py::arg("g"), py::arg("k"), py::arg("budget") = kDefaultEnumerationBudget);

  m.def("philox4x32_10", &philox4x32_10, py::arg("counter"), py::arg("key"));
  m.def("sample_matrix",
        [](const FiniteFunction& f, std::size_t n, std::uint64_t seed) {
          const SampledMatrix s = sample_matrix(f, n, seed);
          std::vector<std::vector<Label>> rows(n);
          for (std::size_t i = 0; i < n; ++i) rows[i].assign(s.values.begin() + i * n, s.values.begin() + (i + 1) * n);
          return rows;
        },
        py::arg("f"), py::arg("n"), py::arg("seed"));

  m.def("reconstruct",
        [](const std::vector<std::vector<Label>>& rows, std::size_t depth, const py::object& min_class_mass) {
          return reconstruct(SampledMatrix::from_rows(rows), depth, from_py(min_class_mass));
        },
        py::arg("matrix"), py::arg("depth"), py::arg("min_class_mass") = "1/100");
  m.def("reconstruction_check",
        [](const FiniteFunction& f, std::size_t n, std::size_t depth, std::uint64_t seed, const py::object& tol,
           const py::object& min_class_mass) {
          const auto r = reconstruction_check(f, n, depth, seed, from_py(tol), from_py(min_class_mass));
          py::dict out;
          out["reconstructed"] = r.reconstructed;
          out["isomorphic_to_source"] = r.isomorphic_to_source;
          out["weight_tv"] = to_fraction(r.weight_tv);
          out["depth_used"] = r.depth_used;
          out["matching"] = witness_pair(r.matching);
          return out;
        },
        py::arg("f"), py::arg("n"), py::arg("depth"), py::arg("seed"), py::arg("tol") = "1/20",
        py::arg("min_class_mass") = "1/100");

  m.def("congruence_group", [](const FiniteFunction& f) {
    py::list out;
    for (const auto& e : congruence_group(f).elements) out.append(py::make_tuple(e.rows, e.cols));
    return out;
  });
  m.def("simplicity_decision", &simplicity_decision);
  m.def("is_completely_pure", &is_completely_pure);
  m.def("collision_search_length", &collision_search_length, py::arg("f"), py::arg("trials"));
  m.def("collision_witness",
        [](const FiniteFunction& f, std::size_t length, std::size_t trials, std::uint64_t seed) {
          return collision_dict(collision_witness(f, length, trials, seed));
        },
        py::arg("f"), py::arg("length"), py::arg("trials"), py::arg("seed"));
  m.def("verify_collision", [](const FiniteFunction& f, const py::dict& w) { return verify_collision(f, collision_from(w)); });
}
