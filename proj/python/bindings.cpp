#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mcmlab/catalog.hpp"
#include "mcmlab/errors.hpp"

namespace py = pybind11;
using namespace mcmlab;

namespace {

using Rows = std::vector<std::vector<std::string>>;
using Seq = ShortExactSequence<Fp>;

PolyMatrix<Fp> mat(const RingPtr<Fp>& r, const Rows& rows) { return PolyMatrix<Fp>::parse(*r, rows); }

Rows rows_of(const RingSpec<Fp>& r, const PolyMatrix<Fp>& m) {
  Rows out(m.rows(), std::vector<std::string>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = r.print(m(i, j));
  }
  return out;
}

std::vector<Fp> coords(const RingSpec<Fp>& r, const std::vector<std::int64_t>& c) {
  std::vector<Fp> out;
  for (auto v : c) out.push_back(r.scalar(v));
  return out;
}

std::vector<std::int64_t> ints(const std::vector<Fp>& c) {
  std::vector<std::int64_t> out;
  for (const auto& v : c) out.push_back(static_cast<std::int64_t>(v.value()));
  return out;
}

py::object integer(const BigInt& v) { return py::int_(py::str(v.str())); }

py::list integers(const std::vector<BigInt>& v) {
  py::list out;
  for (const auto& x : v) out.append(integer(x));
  return out;
}

std::vector<std::string> fit_coefficients(const PolyFit& fit) {
  std::vector<std::string> out;
  for (const auto& c : fit.coefficients) out.push_back(to_string(c));
  return out;
}

FiltrationSpec<Fp> ideal_filtration(const RingPtr<Fp>& r, const std::vector<std::string>& gens, FiltrationKind k) {
  FiltrationSpec<Fp> F;
  F.kind = k;
  for (const auto& g : gens) F.ideal.push_back(r->parse(g));
  if (k == FiltrationKind::IntegralClosure) monomial_exponents(F.ideal);
  return F;
}

py::dict report(const catalog::ScenarioReport& rep) {
  py::list checks;
  for (const auto& c : rep.checks) {
    py::dict d;
    d["quantity"] = c.quantity;
    d["expected"] = c.expected;
    d["actual"] = c.actual;
    d["provenance"] = catalog::to_string(c.provenance);
    d["ok"] = c.ok;
    checks.append(d);
  }
  py::dict out;
  out["name"] = rep.name;
  out["description"] = rep.description;
  out["ok"] = rep.ok();
  out["checks"] = checks;
  out["trace"] = rep.trace;
  return out;
}

}  // namespace

PYBIND11_MODULE(_mcmlab, m) {
  m.doc() = "Hilbert coefficients, Tor and e^T of maximal Cohen-Macaulay modules over F_p";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
  py::register_exception<TruncationInsufficient>(m, "TruncationInsufficient", base.ptr());
  py::register_exception<WindowTooShort>(m, "WindowTooShort", base.ptr());
  py::register_exception<NotGraded>(m, "NotGraded", base.ptr());
  py::register_exception<InvariantViolation>(m, "InvariantViolation", base.ptr());

  py::class_<RingSpec<Fp>, std::shared_ptr<RingSpec<Fp>>>(m, "Ring")
      .def_property_readonly("vars", [](const RingSpec<Fp>& r) { return r.vars; })
      .def_property_readonly("relations",
                             [](const RingSpec<Fp>& r) {
                               std::vector<std::string> out;
                               for (const auto& g : r.relations) out.push_back(r.print(g));
                               return out;
                             })
      .def_property_readonly("characteristic", [](const RingSpec<Fp>& r) { return r.field.characteristic; })
      .def_property_readonly("weights", [](const RingSpec<Fp>& r) { return r.weights; })
      .def_property_readonly("dim", &RingSpec<Fp>::dim)
      .def("__repr__", [](const RingSpec<Fp>& r) {
        std::string s = "Ring(" + std::to_string(r.nvars()) + " vars";
        for (const auto& g : r.relations) s += ", " + r.print(g);
        return s + ")";
      });

  m.def(
      "make_ring",
      [](const std::vector<std::string>& vars, const std::vector<std::string>& relations, std::uint32_t p) {
        if (p == 0) throw InputError("the Python module works over F_p; use the command line for the rationals");
        return std::const_pointer_cast<RingSpec<Fp>>(make_ring<Fp>(vars, relations, FieldSpec{p}));
      },
      py::arg("vars"), py::arg("relations"), py::arg("p") = 32003);

  py::class_<Module<Fp>>(m, "Module")
      .def_static(
          "from_mf",
          [](std::shared_ptr<RingSpec<Fp>> r, const Rows& phi, const Rows& psi, std::size_t free) {
            RingPtr<Fp> ring = r;
            MatrixFactorization<Fp> mf{mat(ring, phi), mat(ring, psi)};
            auto check = mf_validate(*ring, mf);
            if (!check.ok) throw InputError(check.message);
            return Module<Fp>::from_mf(ring, std::move(mf), free);
          },
          py::arg("ring"), py::arg("phi"), py::arg("psi"), py::arg("free") = 0)
      .def_static(
          "from_presentation",
          [](std::shared_ptr<RingSpec<Fp>> r, const Rows& P) {
            RingPtr<Fp> ring = r;
            return Module<Fp>::from_presentation(ring, mat(ring, P));
          },
          py::arg("ring"), py::arg("presentation"))
      .def_static(
          "free", [](std::shared_ptr<RingSpec<Fp>> r, std::size_t rank) { return Module<Fp>::free(r, rank); },
          py::arg("ring"), py::arg("rank"))
      .def_property_readonly("num_generators", &Module<Fp>::num_generators)
      .def_property_readonly("is_mf", &Module<Fp>::is_mf)
      .def_property_readonly("presentation",
                             [](const Module<Fp>& M) { return rows_of(M.ring(), M.presentation()); })
      .def("mu", [](const Module<Fp>& M) { return mu(M); })
      .def("is_free", [](const Module<Fp>& M) { return is_free(M); })
      .def("__add__", [](const Module<Fp>& a, const Module<Fp>& b) { return direct_sum(a, b); })
      .def("__repr__", [](const Module<Fp>& M) {
        return "Module(" + std::to_string(M.num_generators()) + " generators" + (M.is_mf() ? ", factorization)" : ")");
      });

  py::class_<FiltrationSpec<Fp>>(m, "Filtration");
  m.def("m_adic", [](std::shared_ptr<RingSpec<Fp>> r) { return FiltrationSpec<Fp>::m_adic(*r); });
  m.def("adic", [](std::shared_ptr<RingSpec<Fp>> r, const std::vector<std::string>& gens) {
    return ideal_filtration(r, gens, FiltrationKind::Adic);
  });
  m.def("integral_closure", [](std::shared_ptr<RingSpec<Fp>> r, const std::vector<std::string>& gens) {
    return ideal_filtration(r, gens, FiltrationKind::IntegralClosure);
  });

  m.def(
      "hilbert_coefficients",
      [](const Module<Fp>& M, const FiltrationSpec<Fp>& F) {
        auto rep = hilbert_coefficients(M, F);
        py::dict d;
        d["e"] = integers(rep.e);
        d["lengths"] = rep.table.values;
        d["polynomial"] = fit_coefficients(rep.fit);
        d["stabilization_index"] = rep.fit.stabilization_index;
        return d;
      },
      py::arg("module"), py::arg("filtration"));

  m.def(
      "tor_lengths",
      [](std::size_t i, const Module<Fp>& M, const FiltrationSpec<Fp>& F, long hi) {
        return tor_table(i, M, F, 0, hi).values;
      },
      py::arg("i"), py::arg("module"), py::arg("filtration"), py::arg("hi") = 12);

  m.def(
      "etor",
      [](const Module<Fp>& M, const FiltrationSpec<Fp>& F, const std::string& method) {
        auto e = etor(M, F, parse_etor_method(method));
        py::dict d;
        d["etor"] = e.value;
        d["method_agreement"] = e.method_agreement;
        d["limit"] = e.limit_value ? py::object(py::int_(*e.limit_value)) : py::none();
        d["formula"] = e.formula_value ? py::object(py::int_(*e.formula_value)) : py::none();
        d["window"] = py::make_tuple(e.window_lo, e.window_hi);
        return d;
      },
      py::arg("module"), py::arg("filtration"), py::arg("method") = "both");

  m.def("betti_numbers", [](const Module<Fp>& M, std::size_t upto) { return betti_numbers(M, upto); },
        py::arg("module"), py::arg("upto"));
  m.def("complexity", [](const std::vector<std::size_t>& b) { return complexity_estimate(b).complexity; });

  py::class_<Seq>(m, "Sequence")
      .def(py::init([](const Module<Fp>& N, const Module<Fp>& E, const Module<Fp>& M, const Rows& inject,
                       const Rows& project) {
             auto r = M.ring_ptr();
             return Seq{N, E, M, mat(r, inject), mat(r, project)};
           }),
           py::arg("N"), py::arg("E"), py::arg("M"), py::arg("inject"), py::arg("project"))
      .def_readonly("N", &Seq::N)
      .def_readonly("E", &Seq::E)
      .def_readonly("M", &Seq::M)
      .def_property_readonly("inject", [](const Seq& s) { return rows_of(s.M.ring(), s.inject); })
      .def_property_readonly("project", [](const Seq& s) { return rows_of(s.M.ring(), s.project); });

  m.def("split_sequence", [](const Module<Fp>& N, const Module<Fp>& M) { return split_sequence(N, M); });
  m.def("is_exact", [](const Seq& s, long level) { return verify_exactness(s, level).ok; }, py::arg("sequence"),
        py::arg("level") = 6);
  m.def(
      "etor_of_sequence",
      [](const Seq& s, const FiltrationSpec<Fp>& F) {
        auto v = etor_of_sequence(s, F);
        py::dict d;
        d["etor_alpha"] = v.value;
        d["tsplit"] = v.tsplit;
        d["etor_N"] = v.etor_N;
        d["etor_E"] = v.etor_E;
        d["etor_M"] = v.etor_M;
        return d;
      },
      py::arg("sequence"), py::arg("filtration"));
  m.def("is_tsplit", [](const Seq& s, const FiltrationSpec<Fp>& F) { return is_tsplit(s, F); });
  m.def("baer_sum", [](const Seq& s, const Seq& t) { return baer_sum(s, t); });
  m.def("scalar_mult", [](const std::string& r, const Seq& s) { return scalar_mult(s.M.ring().parse(r), s); },
        py::arg("r"), py::arg("sequence"));
  m.def("pushout", [](const Seq& s, const Rows& g, const Module<Fp>& N2) { return pushout(s, mat(N2.ring_ptr(), g), N2); },
        py::arg("sequence"), py::arg("g"), py::arg("target"));
  m.def("pullback", [](const Seq& s, const Rows& h, const Module<Fp>& M2) { return pullback(s, mat(M2.ring_ptr(), h), M2); },
        py::arg("sequence"), py::arg("h"), py::arg("source"));
  m.def(
      "annihilation_index",
      [](const Seq& s, const std::string& a, const FiltrationSpec<Fp>& F, long cap) {
        return annihilation_index(s, s.M.ring().parse(a), F, cap);
      },
      py::arg("sequence"), py::arg("a"), py::arg("filtration"), py::arg("cap") = 8);

  py::class_<ExtGroup<Fp>>(m, "ExtGroup")
      .def(py::init<const Module<Fp>&, const Module<Fp>&>(), py::arg("M"), py::arg("N"))
      .def_property_readonly("dim", &ExtGroup<Fp>::dim)
      .def_property_readonly("degrees", &ExtGroup<Fp>::degrees)
      .def("elements", [](const ExtGroup<Fp>& e, std::size_t limit) {
             std::vector<std::vector<std::int64_t>> out;
             for (const auto& c : e.elements(limit)) out.push_back(ints(c));
             return out;
           }, py::arg("limit") = 100000)
      .def("extension", [](const ExtGroup<Fp>& e, const std::vector<std::int64_t>& c) {
        return e.extension(coords(e.M().ring(), c));
      })
      .def("class_of", [](const ExtGroup<Fp>& e, const Seq& s) { return ints(e.class_of(s)); });

  m.def("catalog_list", &catalog::scenario_names);
  m.def("catalog_run", [](const std::string& name) { return report(catalog::run_scenario(name)); });
}
