#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lukprover/algebra.hpp"
#include "lukprover/corpus.hpp"
#include "lukprover/eq.hpp"
#include "lukprover/hilbert.hpp"
#include "lukprover/sequent.hpp"
#include "lukprover/translate.hpp"

namespace py = pybind11;
using namespace luk;

namespace {

py::dict algebra_dict(const FiniteAlgebra& m) {
  py::dict d;
  d["size"] = m.n;
  d["add"] = m.add_table;
  d["res"] = m.res_table;
  d["top"] = m.top ? py::cast(*m.top) : py::none();
  return d;
}

FiniteAlgebra algebra_from(const py::dict& d) {
  FiniteAlgebra m;
  m.n = d["size"].cast<int>();
  m.add_table = d["add"].cast<std::vector<int>>();
  m.res_table = d["res"].cast<std::vector<int>>();
  if (d.contains("top") && !d["top"].is_none()) m.top = d["top"].cast<int>();
  return m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("theories", [] {
    std::vector<std::string> out;
    for (TheoryId t : TheoryId::all()) out.push_back(t.name());
    return out;
  });
  m.def("normalize_formula", [](const std::string& f) { return print(parse(f)); }, py::arg("formula"));
  m.def("expand", [](const std::string& f) { return print(expand_derived(parse(f))); }, py::arg("formula"));
  m.def("canonical", [](const std::string& f) { return print(canonical(parse(f))); }, py::arg("formula"));

  m.def(
      "prove",
      [](const std::string& seq, const std::string& theory, int depth) -> std::optional<std::string> {
        auto p = bounded_prove(parse_sequent(seq), TheoryId::parse(theory), depth);
        if (!p) return std::nullopt;
        return write_proof(*p);
      },
      py::arg("sequent"), py::arg("theory"), py::arg("depth") = 8,
      "Proof text of a bounded proof, or None.");
  m.def(
      "check_proof",
      [](const std::string& text, const std::string& theory) {
        Verdict v = check_proof(read_proof(text), TheoryId::parse(theory));
        return py::make_tuple(v.ok, v.message);
      },
      py::arg("proof"), py::arg("theory"));
  m.def(
      "to_hilbert",
      [](const std::string& proof, const std::string& theory) {
        HilbertDerivation d = sequent_to_hilbert(read_proof(proof));
        Verdict v = check_derivation(d, HilbertSystemId::of(TheoryId::parse(theory)));
        if (!v.ok) throw std::runtime_error(v.message);
        return write_derivation(d);
      },
      py::arg("proof"), py::arg("theory"));

  m.def("lukasiewicz_chain", [](int k) { return algebra_dict(lukasiewicz_chain(k)); }, py::arg("k"));
  m.def(
      "class_flags",
      [](const py::dict& a) {
        ClassFlags f = check_class(algebra_from(a));
        py::dict d;
        d["pocrim"] = f.pocrim;
        d["hoop"] = f.hoop;
        d["bounded"] = f.bounded;
        d["involutive"] = f.involutive;
        d["idempotent"] = f.idempotent;
        return d;
      },
      py::arg("algebra"));
  m.def(
      "count_models",
      [](int size, const std::string& theory) {
        std::size_t n = 0;
        enumerate(size, class_of(TheoryId::parse(theory)), [&](const FiniteAlgebra& a) {
          n += a.n == size;
          return true;
        });
        return n;
      },
      py::arg("size"), py::arg("theory"));
  m.def(
      "find_countermodel",
      [](const std::string& seq, const std::string& theory, int max_size, double seconds) -> std::optional<py::dict> {
        std::optional<Countermodel> cm;
        {
          py::gil_scoped_release release;
          cm = find_countermodel(parse_sequent(seq), TheoryId::parse(theory), max_size, seconds);
        }
        if (!cm) return std::nullopt;
        py::dict d = algebra_dict(cm->algebra);
        d["assignment"] = cm->assignment;
        return d;
      },
      py::arg("sequent"), py::arg("theory"), py::arg("max_size") = 10, py::arg("seconds") = 60.0);
  m.def(
      "valid",
      [](const std::string& seq, const py::dict& a) { return valid(parse_sequent(seq), algebra_from(a)); },
      py::arg("sequent"), py::arg("algebra"));

  m.def(
      "translate",
      [](const std::string& scheme, const std::string& f) { return print(translate(parse_translation(scheme), parse(f))); },
      py::arg("scheme"), py::arg("formula"));

  m.def(
      "check_script",
      [](const std::string& text, const std::string& corpus) {
        Registry reg = corpus.empty() ? Registry::primitives() : corpus_registry(corpus);
        py::list out;
        for (const auto& s : parse_scripts(text)) {
          ScriptResult r = check_script(s, reg);
          out.append(py::make_tuple(s.id, r.verdict.ok, r.verdict.message));
        }
        return out;
      },
      py::arg("text"), py::arg("corpus") = "",
      "Checks every lemma block; cites corpus lemmas when a corpus directory is given.");
  m.def(
      "run_corpus",
      [](const std::string& root, const std::string& filter, unsigned jobs) {
        CorpusOptions opt;
        opt.filter = filter;
        opt.jobs = jobs;
        CorpusReport r;
        {
          py::gil_scoped_release release;
          r = run_corpus(root, opt);
        }
        py::list out;
        for (const auto& e : r.entries) {
          py::dict d;
          d["id"] = e.id;
          d["ok"] = e.ok;
          d["detail"] = e.detail;
          d["seconds"] = e.seconds;
          out.append(d);
        }
        return out;
      },
      py::arg("root"), py::arg("filter") = "", py::arg("jobs") = 1);
  m.def(
      "k_contradiction", [](int k) { return generate_k_contradiction(k).text; }, py::arg("k"));
}
