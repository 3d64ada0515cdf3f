// Copyright 2026 The nttkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nttkit/errors.hpp"
#include "nttkit/planner.hpp"
#include "nttkit/polymul.hpp"
#include "nttkit/ring.hpp"

namespace py = pybind11;

namespace nttkit {
namespace {

PyObject* error_type = nullptr;

Poly to_poly(const RingSpec& ring, const std::vector<std::int64_t>& c) {
  NTTKIT_REQUIRE(c.size() == ring.n(), ErrorCode::kLengthMismatch,
                 "expected " + std::to_string(ring.n()) + " coefficients, got " +
                     std::to_string(c.size()));
  return Poly::from_signed(ring, c);
}

PlanPreferences::Partial parse_partial(const std::string& s) {
  if (s == "incomplete") return PlanPreferences::Partial::kIncomplete;
  if (s == "split") return PlanPreferences::Partial::kSplit;
  if (s == "hntt") return PlanPreferences::Partial::kHNtt;
  fail(ErrorCode::kParseError, "unknown partial route '" + s + "'");
}

PlanPreferences::Unfriendly parse_unfriendly(const std::string& s) {
  if (s == "bigprime") return PlanPreferences::Unfriendly::kBigPrime;
  if (s == "rns") return PlanPreferences::Unfriendly::kRns;
  if (s == "composite") return PlanPreferences::Unfriendly::kComposite;
  fail(ErrorCode::kParseError, "unknown large-modulus route '" + s + "'");
}

PlanPreferences::Embedding parse_embedding(const std::string& s) {
  if (s == "pad") return PlanPreferences::Embedding::kPad;
  if (s == "good") return PlanPreferences::Embedding::kGood;
  if (s == "schonhage") return PlanPreferences::Embedding::kSchonhage;
  fail(ErrorCode::kParseError, "unknown embedding '" + s + "'");
}

py::dict counts_dict(const OpCounter& c) {
  py::dict d;
  d["mults"] = c.mults;
  d["adds"] = c.adds;
  d["subs"] = c.subs;
  d["forward_transforms"] = c.forward_transforms;
  d["inverse_transforms"] = c.inverse_transforms;
  return d;
}

}  // namespace
}  // namespace nttkit

PYBIND11_MODULE(_nttkit, m) {
  using namespace nttkit;
  m.doc() = "NTT-based polynomial multiplication";
  m.attr("__version__") = NTTKIT_VERSION;

  error_type =
      py::exception<NttError>(m, "NttError", PyExc_ValueError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NttError& e) {
      py::object err = py::reinterpret_borrow<py::object>(error_type)(e.what());
      err.attr("code") = std::string(error_code_name(e.code()));
      PyErr_SetObject(error_type, err.ptr());
    }
  });

  py::class_<RingSpec>(m, "Ring")
      .def(py::init([](const std::string& form, std::size_t n, std::uint64_t q) {
             return RingSpec(parse_form(form), n, q);
           }),
           py::arg("form"), py::arg("n"), py::arg("q"))
      .def_static("cyclic", &RingSpec::cyclic, py::arg("n"), py::arg("q"))
      .def_static("negacyclic", &RingSpec::negacyclic, py::arg("n"), py::arg("q"))
      .def_property_readonly("form",
                             [](const RingSpec& r) { return form_token(r.form()); })
      .def_property_readonly("n", &RingSpec::n)
      .def_property_readonly("q", &RingSpec::q)
      .def("__eq__", [](const RingSpec& a, const RingSpec& b) { return a == b; })
      .def("__repr__", &RingSpec::describe);

  py::class_<NttDomainPoly>(m, "Domain")
      .def_readonly("values", &NttDomainPoly::values)
      .def_readonly("leaf_degree", &NttDomainPoly::leaf_degree)
      .def("__len__", [](const NttDomainPoly& d) { return d.values.size(); });

  py::class_<NttPlan>(m, "Plan")
      .def_property_readonly("ring", &NttPlan::ring)
      .def_property_readonly("strategy",
                             [](const NttPlan& p) { return describe(p.strategy()); })
      .def_property_readonly("checks", &NttPlan::checks)
      .def_property_readonly("has_domain", &NttPlan::has_domain)
      .def("multiply",
           [](const NttPlan& p, const std::vector<std::int64_t>& a,
              const std::vector<std::int64_t>& b) {
             return p.multiply(to_poly(p.ring(), a), to_poly(p.ring(), b)).coeffs;
           },
           py::arg("a"), py::arg("b"))
      .def("multiply_counted",
           [](const NttPlan& p, const std::vector<std::int64_t>& a,
              const std::vector<std::int64_t>& b) {
             const Poly pa = to_poly(p.ring(), a);
             const Poly pb = to_poly(p.ring(), b);
             OpCounter counter;
             std::vector<Residue> c;
             {
               ScopedOpCounter scope(counter);
               c = p.multiply(pa, pb).coeffs;
             }
             return py::make_tuple(c, counts_dict(counter));
           },
           py::arg("a"), py::arg("b"))
      .def("forward",
           [](const NttPlan& p, const std::vector<std::int64_t>& a) {
             return p.forward(to_poly(p.ring(), a));
           },
           py::arg("a"))
      .def("inverse",
           [](const NttPlan& p, const NttDomainPoly& a_hat) {
             return p.inverse(a_hat).coeffs;
           },
           py::arg("a_hat"))
      .def("pointwise", &NttPlan::pointwise, py::arg("u"), py::arg("v"))
      .def("__repr__", &NttPlan::describe);

  m.def("make_plan",
        [](const RingSpec& ring, bool allow_bigmod, std::optional<unsigned> beta,
           std::optional<unsigned> alpha, const std::string& partial,
           const std::string& unfriendly, const std::string& embedding) {
          PlanPreferences prefs;
          prefs.allow_bigmod = allow_bigmod;
          prefs.beta = beta;
          prefs.alpha = alpha;
          prefs.partial = parse_partial(partial);
          prefs.unfriendly = parse_unfriendly(unfriendly);
          prefs.embedding = parse_embedding(embedding);
          return make_plan(ring, prefs);
        },
        py::arg("ring"), py::arg("allow_bigmod") = false,
        py::arg("beta") = py::none(), py::arg("alpha") = py::none(),
        py::arg("partial") = "incomplete", py::arg("unfriendly") = "bigprime",
        py::arg("embedding") = "good");

  m.def("classify", [](const RingSpec& ring) { return classify(ring).describe(); },
        py::arg("ring"));

  m.def("preset", [](const std::string& name) { return preset(name).plan; },
        py::arg("name"));
  m.def("preset_names", [] {
    std::vector<std::string> names;
    for (const Preset& p : presets()) names.push_back(p.name);
    return names;
  });

  m.def("schoolbook",
        [](const RingSpec& ring, const std::vector<std::int64_t>& a,
           const std::vector<std::int64_t>& b) {
          return schoolbook_multiply(to_poly(ring, a), to_poly(ring, b)).coeffs;
        },
        py::arg("ring"), py::arg("a"), py::arg("b"));
}
