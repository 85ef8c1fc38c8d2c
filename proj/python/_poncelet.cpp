#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "poncelet/census.hpp"
#include "poncelet/chain.hpp"

namespace py = pybind11;
using namespace poncelet;

namespace {

Conic conic_from(const FieldCtx& f, const std::vector<int64_t>& c) {
  if (c.size() != 6) throw std::invalid_argument("a conic needs six coefficients xx,yy,zz,xy,xz,yz");
  return Conic::from_form(f(c[0]), f(c[1]), f(c[2]), f(c[3]), f(c[4]), f(c[5]));
}

std::vector<uint32_t> coords(const PPoint& p) {
  std::vector<uint32_t> out;
  for (const Fq& x : p.coords()) out.push_back(x.rep());
  return out;
}

py::dict worked_example() {
  const WorkedExample ex = verify_worked_example();
  py::list items;
  for (const auto& a : ex.assertions) {
    py::dict d;
    d["name"] = a.name;
    d["pass"] = a.pass;
    d["detail"] = a.detail;
    items.append(d);
  }
  py::dict out;
  out["assertions"] = items;
  out["trace"] = ex.trace;
  out["all_pass"] = ex.all_pass();
  return out;
}

std::string pencil_census_json(int cls, uint32_t p, uint32_t r, int n, const std::vector<int64_t>& params) {
  const Field f = FieldCtx::make(p, r);
  DicksonClass c{parse_dickson_tag(std::to_string(cls)), {}};
  for (int64_t v : params) c.params.push_back((*f)(v));
  return to_json(pencil_census(c, *f, n));
}

std::string pair_census_json(uint32_t p, uint32_t r, int n, bool exhaustive, uint64_t mc, uint64_t seed,
                             unsigned workers) {
  const Field f = FieldCtx::make(p, r);
  py::gil_scoped_release release;
  if (exhaustive) return to_json(exhaustive_pair_census(*f, n, workers));
  if (mc == 0) throw std::invalid_argument("give exhaustive=True or mc > 0");
  return to_json(monte_carlo_census(*f, n, mc, seed, workers));
}

bool ngon(uint32_t p, uint32_t r, const std::vector<int64_t>& a, const std::vector<int64_t>& b, int n) {
  const Field f = FieldCtx::make(p, r);
  return ngon_condition(conic_from(*f, a), conic_from(*f, b), n);
}

py::dict trace(uint32_t p, int64_t a, int64_t b, const std::vector<int64_t>& start, int branch) {
  const Field f = FieldCtx::make(p);
  if (start.size() != 3) throw std::invalid_argument("start needs x,y,z");
  const ChainOutcome out = trace_chain(PPoint::of(*f, start[0], start[1], start[2]),
                                       branch == 2 ? Branch::Second : Branch::First, c_alpha((*f)(a)),
                                       c_alpha((*f)(b)));
  py::list verts;
  for (const auto& v : out.vertices) verts.append(coords(v));
  py::dict d;
  d["kind"] = to_string(out.kind);
  d["n"] = out.n;
  d["vertices"] = verts;
  d["text"] = format_trace(out);
  return d;
}

std::string char3_json(uint32_t r) {
  const Field f = FieldCtx::make(3, r);
  return to_json(char3_experiment(*f));
}

}  // namespace

PYBIND11_MODULE(_poncelet, m) {
  m.doc() = "Poncelet closure over finite fields";
  m.def("verify_example", &worked_example);
  m.def("pencil_census_json", &pencil_census_json, py::arg("cls"), py::arg("p"), py::arg("r") = 1,
        py::arg("n") = 3, py::arg("params") = std::vector<int64_t>{});
  m.def("pair_census_json", &pair_census_json, py::arg("p"), py::arg("r") = 1, py::arg("n") = 3,
        py::arg("exhaustive") = false, py::arg("mc") = 0, py::arg("seed") = 1, py::arg("workers") = 1);
  m.def("ngon_condition", &ngon, py::arg("p"), py::arg("r"), py::arg("a"), py::arg("b"), py::arg("n"));
  m.def("trace", &trace, py::arg("p"), py::arg("a"), py::arg("b"), py::arg("start"), py::arg("branch") = 1);
  m.def("char3_json", &char3_json, py::arg("r"));
  m.def("theorem_bounds", [](uint32_t q) { return py::make_tuple(theorem_lower(q), theorem_upper(q)); });
}
