#include "collatz_spectra/cli.hpp"
#include "collatz_spectra/decimal.hpp"
#include "collatz_spectra/families.hpp"
#include "collatz_spectra/stopping.hpp"
#include "collatz_spectra/trees.hpp"
#include "collatz_spectra/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace collatz;

namespace {

// Python ints and Fractions cross the boundary as decimal strings.
BigInt to_big(py::handle n) { return BigInt(py::cast<std::string>(py::str(n))); }

py::int_ to_py(const BigInt& n) { return py::int_(py::module_::import("builtins").attr("int")(n.get_str())); }

py::object to_py(const BigRat& q) {
  py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_py(BigInt(q.get_num())), to_py(BigInt(q.get_den())));
}

BigRat to_rat(const py::object& q) {
  py::object num = q.attr("numerator");
  py::object den = q.attr("denominator");
  BigRat r(to_big(num), to_big(den));
  r.canonicalize();
  return r;
}

MapId map_arg(const std::string& name) {
  const auto m = parse_map(name);
  if (!m) throw py::value_error("unknown map: " + name);
  return *m;
}

Flavor flavor_arg(const std::string& name) {
  const auto f = parse_flavor(name);
  if (!f) throw py::value_error("unknown flavor: " + name);
  return *f;
}

py::list int_list(const std::vector<BigInt>& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

py::dict family_dict(const SequenceFamily& f) {
  py::dict d;
  d["length"] = f.length();
  d["word"] = f.word.label();
  d["x_rep"] = to_py(f.x_class.rep());
  d["x_mod"] = to_py(f.x_class.modulus());
  d["y_rep"] = to_py(f.y_class.rep());
  d["y_mod"] = to_py(f.y_class.modulus());
  d["A"] = to_py(f.relation.A);
  d["B"] = to_py(f.relation.B);
  d["C"] = to_py(f.relation.C);
  d["direction"] = direction_name(f.direction);
  d["sequence"] = int_list(realize(f, f.x_class.rep()));
  return d;
}

py::dict branch_dict(const Branch& b) {
  py::dict d;
  d["start"] = to_py(b.start);
  d["end"] = to_py(b.end);
  d["length"] = b.length();
  d["complete"] = b.complete;
  d["direction"] = direction_name(b.direction);
  d["values"] = int_list(b.values());
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact residue-class spectra of the 3x+1 and 5x+1 maps";

  m.def("step", [](const std::string& map, const py::int_& n) {
    const auto r = step(map_arg(map), to_big(n));
    return py::make_tuple(r.branch, to_py(r.output));
  }, py::arg("map"), py::arg("n"));

  m.def("solve_word", [](const std::string& map, const std::vector<int>& middle) {
    return family_dict(solve_word(OperationWord{map_arg(map), middle}));
  }, py::arg("map"), py::arg("middle"));

  m.def("families", [](const std::string& map, int length) {
    py::list out;
    for (const auto& f : enumerate_families(map_arg(map), length).families) out.append(family_dict(f));
    return out;
  }, py::arg("map"), py::arg("length"));

  m.def("distribution_DL", [](const std::string& map, int length) { return to_py(distribution_DL(map_arg(map), length)); },
        py::arg("map"), py::arg("length"));
  m.def("cumulative_SL", [](const std::string& map, int length) { return to_py(cumulative_SL(map_arg(map), length)); },
        py::arg("map"), py::arg("length"));

  m.def("rising_fraction", [](const std::string& map, int lmax, int levels, std::size_t threads,
                              std::uint64_t work_budget) {
    DensityOptions o;
    o.threads = threads;
    o.work_budget = work_budget;
    const MapId id = map_arg(map);
    DensityReport r;
    {
      py::gil_scoped_release release;
      r = rising_fraction(id, lmax, levels, o);
    }
    py::dict d;
    py::list rising;
    for (const auto& f : r.rising) rising.append(to_py(f));
    d["rising"] = rising;
    d["lmax_requested"] = r.lmax_requested;
    d["lmax_achieved"] = r.lmax_achieved;
    d["partial"] = r.partial;
    d["coverage"] = to_py(r.coverage);
    return d;
  }, py::arg("map"), py::arg("lmax"), py::arg("levels") = 1, py::arg("threads") = 1,
     py::arg("work_budget") = DensityOptions{}.work_budget);

  m.def("stopping_time", [](const std::string& map, const py::int_& n, std::size_t budget) -> py::object {
    const auto s = stopping_time(map_arg(map), to_big(n), budget);
    if (s.exceeded) return py::none();
    return py::int_(s.k);
  }, py::arg("map"), py::arg("n"), py::arg("budget") = 100000);

  m.def("distribution_F", [](const std::string& map, int k, const std::string& flavor) {
    return to_py(distribution_F(map_arg(map), k, flavor_arg(flavor)));
  }, py::arg("map"), py::arg("k"), py::arg("flavor") = "strict");

  m.def("survivor_triangle", [](const std::string& map, int k_max, const std::string& flavor) {
    const auto tri = build_triangle(map_arg(map), k_max, flavor_arg(flavor));
    py::list rows;
    for (const auto& row : tri.rows) rows.append(int_list(row));
    return rows;
  }, py::arg("map"), py::arg("k_max"), py::arg("flavor") = "strict");

  m.def("branch", [](const std::string& map, const py::int_& n, std::size_t budget) {
    return branch_dict(branch_from(map_arg(map), to_big(n), budget));
  }, py::arg("map"), py::arg("n"), py::arg("budget") = 100000);

  m.def("chain", [](const std::string& map, const py::int_& start, int levels, std::size_t budget) {
    const auto c = chain_from(map_arg(map), to_big(start), levels, budget);
    py::list out;
    for (const auto& l : c.levels) {
      py::dict d = branch_dict(l.branch);
      d["against_origin"] = direction_name(l.against_origin);
      d["against_level"] = direction_name(l.against_level);
      out.append(d);
    }
    return py::make_tuple(out, c.budget_exhausted);
  }, py::arg("map"), py::arg("start"), py::arg("levels"), py::arg("budget") = 100000);

  m.def("slices", [](const std::string& map, int levels, const py::int_& n_max, std::size_t threads) {
    SliceOptions o;
    o.threads = threads;
    std::vector<SliceReport> reports;
    const BigInt n = to_big(n_max);
    const MapId id = map_arg(map);
    {
      py::gil_scoped_release release;
      reports = slice_fractions(id, levels, n, o);
    }
    py::list out;
    for (const auto& r : reports) {
      py::dict d;
      d["level"] = r.level;
      d["count"] = to_py(r.count);
      d["total"] = to_py(r.total);
      d["unresolved"] = to_py(r.unresolved);
      d["fraction"] = to_py(r.fraction());
      d["analytic"] = r.analytic ? to_py(*r.analytic) : py::object(py::none());
      out.append(d);
    }
    return out;
  }, py::arg("map"), py::arg("levels"), py::arg("n_max"), py::arg("threads") = 1);

  m.def("to_decimal", [](const py::object& q, int digits) { return to_decimal(to_rat(q), digits); },
        py::arg("value"), py::arg("digits") = 7);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
