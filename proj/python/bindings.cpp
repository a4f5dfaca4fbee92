#include "engel/algorithmics.hpp"
#include "engel/analysis.hpp"
#include "engel/catalog.hpp"
#include "engel/io.hpp"
#include "engel/net.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace engel;

namespace {

py::int_ to_py(const BigInt& v) { return py::int_(py::module_::import("builtins").attr("int")(v.str())); }
BigInt from_py(const py::int_& v) {
  const std::string s = py::str(py::handle(v));
  return BigInt(s);
}

py::list to_py(const ExpVec& v) {
  py::list out;
  for (const auto& e : v) out.append(to_py(e));
  return out;
}

struct Group {
  PresentationPtr p;
};

GroupElement word(const Group& g, const std::string& text) { return collect(g.p, FreeWord::parse(text, g.p->ngens())); }

py::dict outcome_dict(const SessionOutcome& s) {
  py::dict d;
  d["ok"] = s.ok;
  d["error"] = s.error;
  py::list parties;
  for (const auto& p : s.parties) {
    py::dict e;
    e["index"] = p.index;
    e["role"] = p.role;
    e["ok"] = p.ok;
    e["error"] = p.error;
    e["key_hash"] = p.key_hash;
    e["result"] = p.summary;
    if (p.verdict) e["verdict"] = *p.verdict;
    parties.append(e);
  }
  d["parties"] = parties;
  d["transcript"] = py::bytes(reinterpret_cast<const char*>(s.transcript_bytes.data()), s.transcript_bytes.size());
  d["transcript_sha256"] = s.transcript_hash;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Polycyclic collection, Engel laws and group-based protocols";

  // Later registrations are tried first, so the base class goes first.
  py::register_exception<Error>(m, "EngelError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<ProtocolError>(m, "ProtocolError", PyExc_RuntimeError);
  py::register_exception<TransportError>(m, "TransportError", PyExc_RuntimeError);

  py::class_<GroupElement>(m, "Element")
      .def_property_readonly("exponents", [](const GroupElement& x) { return to_py(x.exponents()); })
      .def("is_identity", &GroupElement::is_identity)
      .def("inverse", [](const GroupElement& x) { return inverse(x); })
      .def("order", [](const GroupElement& x) -> py::object {
        const auto o = element_order(x);
        return o.infinite() ? py::object(py::none()) : py::object(to_py(*o.value));
      })
      .def("__mul__", [](const GroupElement& x, const GroupElement& y) { return x * y; })
      .def("__pow__", [](const GroupElement& x, const py::int_& k) { return power(x, from_py(k)); })
      .def("__eq__", [](const GroupElement& x, const GroupElement& y) { return x == y; })
      .def("__hash__", [](const GroupElement& x) { return GroupElementHash{}(x); })
      .def("to_bytes", [](const GroupElement& x) {
        const auto b = encode_element(x);
        return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
      })
      .def("__str__", [](const GroupElement& x) { return x.is_identity() ? std::string("1") : x.to_string(); })
      .def("__repr__", [](const GroupElement& x) { return "<Element " + (x.is_identity() ? "1" : x.to_string()) + ">"; });

  m.def("commutator", [](const std::vector<GroupElement>& xs) { return commutator(xs); }, "left-normed [x1, ..., xk]");
  m.def("engel_commutator", &engel_commutator, py::arg("x"), py::arg("y"), py::arg("n"));

  py::class_<Group>(m, "Group")
      .def_static("catalog", [](const std::string& name) { return Group{catalog_by_name(name)}; })
      .def_static("from_text", [](const std::string& text) { return Group{parse_presentation(text)}; })
      .def("to_text", [](const Group& g) { return emit_presentation(*g.p); })
      .def_property_readonly("label", [](const Group& g) { return g.p->label(); })
      .def_property_readonly("ngens", [](const Group& g) { return g.p->ngens(); })
      .def_property_readonly("order", [](const Group& g) -> py::object {
        const auto o = g.p->group_order();
        return o ? py::object(to_py(*o)) : py::object(py::none());
      })
      .def("identity", [](const Group& g) { return GroupElement::identity(g.p); })
      .def("generator", [](const Group& g, std::size_t i) { return GroupElement::generator(g.p, i); })
      .def("element", &word, py::arg("word"))
      .def("from_exponents", [](const Group& g, const std::vector<py::int_>& v) {
        ExpVec e;
        for (const auto& x : v) e.push_back(from_py(x));
        if (e.size() != g.p->ngens() || !g.p->is_normal(e)) throw InvalidArgument("not a normal form");
        return GroupElement(g.p, std::move(e));
      })
      .def("from_bytes", [](const Group& g, const py::bytes& b) {
        const std::string s = b;
        return decode_element(Bytes(s.begin(), s.end()), g.p);
      })
      .def("elements", [](const Group& g) { return enumerate_elements(g.p); })
      .def("describe", [](const Group& g) {
        if (!ElementTable::fits(*g.p)) throw InvalidArgument("group too large for a dense table");
        const auto s = describe_group(ElementTable(g.p));
        py::dict d;
        d["order"] = to_py(s.order);
        d["exponent"] = to_py(s.exponent);
        d["nilpotency_class"] = s.nilpotency_class ? py::object(py::int_(*s.nilpotency_class)) : py::object(py::none());
        d["center"] = s.center_size;
        d["abelian"] = s.abelian;
        d["conjugacy_classes"] = s.conjugacy_classes;
        d["lower_central_series"] = s.lower_central_sizes;
        return d;
      });

  m.def(
      "check_law",
      [](const Group& g, const std::string& law, std::uint64_t samples, std::uint64_t seed) {
        const auto mode = samples ? CheckMode::sampled(samples, seed) : CheckMode::full();
        const auto v = check_law(g.p, LawSpec::parse(law), mode);
        py::dict d;
        d["holds"] = v.holds;
        d["checked"] = v.checked;
        d["witness"] = v.witness;
        return d;
      },
      py::arg("group"), py::arg("law"), py::arg("samples") = 0, py::arg("seed") = 0);

  m.def(
      "degree",
      [](const Group& g, unsigned n, const std::string& mode, std::uint64_t samples, std::uint64_t seed,
         double confidence) {
        py::dict d;
        if (mode == "exact") {
          const auto r = degree_exact(g.p, n);
          d["fraction"] = r.fraction();
          d["value"] = r.value;
        } else if (mode == "montecarlo") {
          const auto r = degree_montecarlo(g.p, n, samples, confidence, seed);
          d["value"] = r.value;
          d["lower"] = r.lower;
          d["upper"] = r.upper;
        } else {
          throw InvalidArgument("mode must be exact or montecarlo");
        }
        return d;
      },
      py::arg("group"), py::arg("n") = 1, py::arg("mode") = "exact", py::arg("samples") = 100000,
      py::arg("seed") = 0, py::arg("confidence") = 0.95);

  m.def("word_problem", [](const Group& g, const std::string& w) { return word_problem(g.p, FreeWord::parse(w, g.p->ngens())); });
  m.def("power_decision", [](const GroupElement& x, const GroupElement& y) -> py::object {
    const auto r = power_decision(x, y);
    if (r.status == SearchStatus::kExhausted) throw BudgetExceeded("search budget exhausted");
    return r.status == SearchStatus::kFound ? py::object(to_py(r.n)) : py::object(py::none());
  });
  m.def("dlp_cyclic", [](const GroupElement& x, const GroupElement& y) -> py::object {
    const auto r = dlp_cyclic(x, y);
    if (r.status == SearchStatus::kExhausted) throw BudgetExceeded("search budget exhausted");
    return r.status == SearchStatus::kFound ? py::object(to_py(r.n)) : py::object(py::none());
  });
  m.def("geodesic_length", [](const Group& g, const std::vector<GroupElement>& X, const GroupElement& x) -> py::object {
    const auto r = geodesic_length(g.p, X, x);
    if (r.status == SearchStatus::kExhausted) throw BudgetExceeded("search budget exhausted");
    return r.status == SearchStatus::kFound ? py::object(py::int_(r.length)) : py::object(py::none());
  });

  m.def(
      "run_session",
      [](const std::string& protocol, std::uint64_t seed, const std::string& transport, const std::string& group,
         unsigned users, std::size_t participants, std::size_t bits) {
        ProtocolConfig cfg;
        cfg.protocol = protocol;
        cfg.seed = seed;
        cfg.group = group;
        cfg.n = users - 1;
        cfg.participants = participants;
        cfg.bits = bits;
        const auto kind = parse_transport(transport);
        SessionOutcome s;
        {
          py::gil_scoped_release release;
          s = session_run(cfg, kind);
        }
        return outcome_dict(s);
      },
      py::arg("protocol"), py::arg("seed"), py::arg("transport") = "inproc", py::arg("group") = "",
      py::arg("users") = 3, py::arg("participants") = 5, py::arg("bits") = 128);
}
