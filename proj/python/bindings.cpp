#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sqcert/certificate.hpp"
#include "sqcert/cli.hpp"
#include "sqcert/replay.hpp"
#include "sqcert/solver.hpp"
#include "sqcert/three_squares.hpp"

namespace py = pybind11;
using namespace sqcert;

namespace {

py::tuple triple(const Representation& r) { return py::make_tuple(r.a, r.b, r.c); }

// Rationals cross the boundary as "p/q" strings; fractions.Fraction parses them.
py::dict values_dict(const std::vector<std::pair<std::uint64_t, Rational>>& v) {
  py::dict d;
  for (const auto& [n, q] : v) d[py::int_(n)] = q.to_string();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the sqcert core library";
  m.attr("__version__") = engine_version();

  m.def("isqrt", &isqrt);
  m.def(
      "classify",
      [](std::uint64_t n) { return describe(classify(n)); },
      "Three-squares class of n as a description string.");
  m.def("class_tag", [](std::uint64_t n) { return class_tag(classify(n)); });
  m.def(
      "representations",
      [](std::uint64_t n, bool nonvanishing) {
        std::vector<py::tuple> out;
        for (const auto& r : representations(n, nonvanishing)) {
          out.push_back(triple(r));
        }
        return out;
      },
      py::arg("n"), py::arg("nonvanishing") = false);
  m.def("verify_hurwitz", &verify_hurwitz);
  m.def("hurwitz_exceptions", &hurwitz_exceptions);

  m.def(
      "verify",
      [](std::uint64_t bound) {
        VerifyResult r = verify_up_to(bound);
        py::dict out;
        out["steps"] = r.summary.steps;
        py::dict hist;
        for (Branch b : {Branch::Direct, Branch::NotRepresentable,
                         Branch::TwoSquare, Branch::PureSquare}) {
          hist[py::str(branch_name(b))] = r.summary.histogram[b];
        }
        out["branches"] = hist;
        out["values"] = values_dict(r.store.entries());
        out["certificate"] = serialize(r.certificate);
        return out;
      },
      py::arg("bound"));

  m.def(
      "check",
      [](const std::string& text) {
        const CheckReport r = check_text(text);
        py::dict out;
        out["valid"] = r.valid;
        out["failing_step"] =
            r.failing_step ? py::object(py::int_(*r.failing_step)) : py::none();
        out["reason"] = r.reason;
        out["steps_checked"] = r.steps_checked;
        return out;
      },
      py::arg("text"));

  m.def(
      "search",
      [](std::uint64_t horizon, std::uint64_t report, std::size_t cap) {
        SearchOptions options;
        options.branch_cap = cap;
        const SearchReport r = search(horizon, report, options);
        py::dict out;
        out["constraints"] = r.constraints;
        out["nodes"] = r.nodes;
        out["branch_points"] = r.branch_points;
        out["contradictions"] = r.contradictions;
        out["leaves"] = r.leaves.size();
        out["forced"] = values_dict(r.forced);
        out["unforced"] = r.unforced;
        out["identity"] = r.all_identity();
        return out;
      },
      py::arg("horizon") = 200, py::arg("report") = 100,
      py::arg("branch_cap") = kDefaultBranchCap);

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "Runs a CLI command; returns (exit code, stdout, stderr).");
}
