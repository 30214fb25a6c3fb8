#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sqpack/approx.h"
#include "sqpack/bounds.h"
#include "sqpack/errors.h"
#include "sqpack/exact.h"
#include "sqpack/ffds.h"
#include "sqpack/instance.h"
#include "sqpack/model.h"
#include "sqpack/ptas.h"
#include "sqpack/shelves.h"

namespace py = pybind11;

// Rationals cross the boundary as fractions.Fraction. Ints, strings ("3/8",
// "0.25") and anything else whose str() parses are accepted on the way in.
namespace pybind11::detail {
template <>
struct type_caster<sqpack::Rational> {
  PYBIND11_TYPE_CASTER(sqpack::Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src || src.is_none()) return false;
    try {
      const py::module_ fractions = py::module_::import("fractions");
      std::string text;
      if (py::isinstance(src, fractions.attr("Fraction"))) {
        text = py::str(src.attr("numerator")).cast<std::string>() + "/" +
               py::str(src.attr("denominator")).cast<std::string>();
      } else if (py::isinstance<py::float_>(src)) {
        return false;  // binary floats are not exact sizes
      } else {
        text = py::str(src).cast<std::string>();
      }
      value = sqpack::Rational::parse(text);
      return true;
    } catch (const sqpack::ParseError&) {
      return false;
    }
  }

  static handle cast(const sqpack::Rational& r, return_value_policy, handle) {
    const py::module_ fractions = py::module_::import("fractions");
    return fractions
        .attr("Fraction")(py::int_(py::str(r.numerator_str())), py::int_(py::str(r.denominator_str())))
        .release();
  }
};
}  // namespace pybind11::detail

namespace sqpack {
namespace {

std::vector<Rational> sizes_of(const Instance& inst) {
  std::vector<Rational> out;
  out.reserve(inst.size());
  for (const Item& it : inst.items()) out.push_back(it.size);
  return out;
}

py::dict approx_report(const ApproxReport& r) {
  py::dict d;
  d["cost"] = r.cost;
  d["lb1"] = r.lb1;
  d["lb2"] = r.lb2;
  d["R"] = r.R;
  d["r"] = r.r;
  d["k"] = r.k;
  d["b"] = r.b;
  d["small_bins"] = r.small_bins;
  d["ffds0"] = r.ffds0;
  d["upper_bound"] = r.upper_bound_2R_plus_ffds;
  d["ratio_vs_max_lb"] = r.ratio_vs_max_lb;
  return d;
}

py::list stage_rows(const StageReport& rep) {
  py::list rows;
  for (const StageRow& s : rep.rows) {
    py::dict d;
    d["stage"] = s.name;
    d["cost_before"] = s.cost_before;
    d["cost_after"] = s.cost_after;
    d["inflation"] = s.inflation;
    d["bound"] = s.bound;
    d["premises"] = s.asserted;
    rows.append(d);
  }
  return rows;
}

}  // namespace
}  // namespace sqpack

PYBIND11_MODULE(_sqpack, m) {
  using namespace sqpack;
  m.doc() = "Square min-sum bin packing with exact rational sizes";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<StrictModeInfeasible>(m, "StrictModeInfeasible", PyExc_RuntimeError);
  py::register_exception<InvariantFailure>(m, "InvariantFailure", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance")
      .def(py::init([](std::vector<Rational> sizes) { return Instance::from_sizes(std::move(sizes)); }),
           py::arg("sizes"))
      .def_static("parse", [](const std::string& text) { return parse_instance(text); })
      .def_static(
          "generate",
          [](const std::string& family, int n, std::uint64_t seed, std::optional<Rational> lo,
             std::optional<Rational> hi, int t) {
            GeneratorSpec spec;
            spec.family = parse_family(family);
            spec.n = n;
            spec.seed = seed;
            spec.t = t;
            if (lo) {
              spec.lo = *lo;
            } else if (spec.family == Family::kUniform) {
              spec.lo = Rational(1, kSizeDenominator);
            } else if (spec.family == Family::kAllLarge) {
              spec.lo = Rational(1, 2);
            }
            if (hi) spec.hi = *hi;
            return generate(spec);
          },
          py::arg("family"), py::arg("n") = 0, py::arg("seed") = 1, py::arg("lo") = py::none(),
          py::arg("hi") = py::none(), py::arg("t") = 3)
      .def_static("adversarial", &gen_adversarial, py::arg("t"))
      .def("serialize", [](const Instance& inst) { return serialize_instance(inst); })
      .def_property_readonly("sizes", &sizes_of)
      .def_property_readonly("total_area", &Instance::total_area)
      .def("__len__", &Instance::size);

  py::class_<Packing>(m, "Packing")
      .def_static("parse", [](const std::string& text, const Instance& inst) {
        return parse_packing(text, inst);
      })
      .def("serialize", [](const Packing& p) { return serialize_packing(p); })
      .def_property_readonly("placements",
                             [](const Packing& p) {
                               py::list out;
                               for (const Placement& pl : p.placements()) {
                                 out.append(py::make_tuple(pl.item_id, pl.bin, pl.x, pl.y));
                               }
                               return out;
                             })
      .def_property_readonly("bin_count", &Packing::bin_count)
      .def_property_readonly("counts", &Packing::counts)
      .def_property_readonly("cost", [](const Packing& p) { return cost(p); })
      .def("reorder_by_count", &reorder_bins_by_count)
      .def("__len__", &Packing::item_count);

  m.def("validate", [](const Packing& p, const Instance& inst) {
    std::vector<std::string> out;
    for (const Violation& v : validate(p, inst)) out.push_back(v.message);
    return out;
  });
  m.def("render_svg", &render_svg, py::arg("packing"), py::arg("instance"));

  m.def("nfdh", [](const Instance& inst) { return nfdh(inst.items()); });
  m.def("ffdh", [](const Instance& inst) { return ffdh(inst.items()); });
  m.def("ffds", [](const Instance& inst) { return ffds(inst.items()); });
  m.def("approx5322", [](const Instance& inst) {
    ApproxResult r = solve_53_22(inst);
    return py::make_tuple(std::move(r.packing), approx_report(r.report));
  });
  m.def(
      "exact",
      [](const Instance& inst, int max_items, double time_budget_seconds) {
        SearchLimits limits;
        limits.max_items = max_items;
        limits.time_budget_seconds = time_budget_seconds;
        py::gil_scoped_release release;
        return exact_min_sum(inst, limits).packing;
      },
      py::arg("instance"), py::arg("max_items") = 9, py::arg("time_budget_seconds") = 120.0);
  m.def(
      "fits",
      [](const std::vector<Rational>& sizes, int max_items) {
        SearchLimits limits;
        limits.max_items = max_items;
        return fits_in_unit_bin(sizes, limits).feasible;
      },
      py::arg("sizes"), py::arg("max_items") = 9);
  m.def(
      "ptas",
      [](const Instance& inst, const Rational& eps, const std::string& mode,
         std::optional<Rational> small, std::optional<Rational> large) {
        PtasParams p;
        p.eps = eps;
        p.mode = parse_mode(mode);
        p.small_threshold = small;
        p.large_threshold = large;
        PtasResult r = [&] {
          py::gil_scoped_release release;
          return ptas_solve(inst, p);
        }();
        return py::make_tuple(std::move(r.packing), stage_rows(r.report));
      },
      py::arg("instance"), py::arg("eps") = Rational(1, 4), py::arg("mode") = "relaxed",
      py::arg("small") = py::none(), py::arg("large") = py::none());

  m.def("bounds", [](const Instance& inst) {
    const BoundsSummary bs = compute_bounds(inst);
    py::dict d;
    d["lb1"] = bs.lb1;
    d["lb2"] = bs.lb2;
    d["R"] = bs.groups.R;
    d["r"] = bs.groups.r;
    d["k"] = bs.kb.k;
    d["b"] = bs.kb.b;
    d["ffds0"] = bs.ffds0;
    d["refined_rhs"] = bs.refined_rhs;
    d["small"] = bs.small;
    d["medium"] = bs.medium;
    d["large"] = bs.large;
    return d;
  });
}
