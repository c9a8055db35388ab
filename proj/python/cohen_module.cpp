#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"

#include "cohen/cache.hpp"
#include "cohen/collect.hpp"
#include "cohen/identities.hpp"
#include "cohen/perm.hpp"
#include "cohen/subgroups.hpp"
#include "cohen/verify.hpp"

namespace py = pybind11;

namespace {

struct ContextHolder {
  cohen::ContextPtr ctx;
};

struct ExprHolder {
  cohen::words::ExprPtr expr;
};

struct NormalFormHolder {
  cohen::NormalForm nf;
  cohen::ContextPtr ctx;
};

cohen::CoeffMode resolve_mode(const std::string& mode, std::uint32_t p, std::uint32_t r) {
  if (mode == "z") return cohen::CoeffMode::integers();
  if (mode == "mod") return cohen::CoeffMode::mod_prime_power(p, r);
  throw std::invalid_argument("mode must be 'z' or 'mod'");
}

void check_same_context(const NormalFormHolder& a, const NormalFormHolder& b) {
  if (a.ctx != b.ctx) throw std::invalid_argument("normal forms from different contexts");
}

py::object json_to_py(const std::string& text) {
  return py::module_::import("json").attr("loads")(text);
}

}  // namespace

PYBIND11_MODULE(cohenpy, m) {
  m.doc() = "exact normal forms and verification battery for reduced free groups "
            "with torsion generators";

  py::class_<ContextHolder>(m, "Context")
      .def_property_readonly("n", [](const ContextHolder& c) { return c.ctx->n(); })
      .def_property_readonly("mode",
                             [](const ContextHolder& c) { return c.ctx->mode().to_string(); })
      .def_property_readonly("class_bound",
                             [](const ContextHolder& c) { return c.ctx->class_bound(); })
      .def_property_readonly("basis_size",
                             [](const ContextHolder& c) { return c.ctx->basis_size(); })
      .def("basis",
           [](const ContextHolder& c) {
             std::vector<std::string> out;
             for (std::uint32_t i = 0; i < c.ctx->basis_size(); ++i)
               out.push_back(c.ctx->basis_at(i).to_string());
             return out;
           })
      .def("basis_order_hash", [](const ContextHolder& c) { return c.ctx->basis_order_hash(); })
      .def("save_cache",
           [](const ContextHolder& c, const std::string& path) {
             cohen::save_structure_cache(*c.ctx, path);
           })
      .def("load_cache", [](const ContextHolder& c, const std::string& path) {
        return cohen::load_structure_cache(*c.ctx, path);
      });

  py::class_<ExprHolder>(m, "Expr")
      .def("__str__", [](const ExprHolder& e) { return cohen::words::print(e.expr); })
      .def("__repr__",
           [](const ExprHolder& e) { return "Expr(" + cohen::words::print(e.expr) + ")"; });

  py::class_<NormalFormHolder>(m, "NormalForm")
      .def("__str__",
           [](const NormalFormHolder& v) { return cohen::print_normal_form(v.nf, *v.ctx); })
      .def("__repr__",
           [](const NormalFormHolder& v) {
             return "NormalForm(" + cohen::print_normal_form(v.nf, *v.ctx) + ")";
           })
      .def("__eq__",
           [](const NormalFormHolder& a, const NormalFormHolder& b) {
             return a.ctx == b.ctx && a.nf == b.nf;
           })
      .def("is_identity", [](const NormalFormHolder& v) { return v.nf.is_identity(); })
      .def("coeffs", [](const NormalFormHolder& v) {
        std::vector<std::pair<std::uint32_t, long long>> out(v.nf.coeffs.begin(),
                                                             v.nf.coeffs.end());
        return out;
      });

  m.def(
      "make_context",
      [](int n, const std::string& mode, std::uint32_t p, std::uint32_t r, int class_bound) {
        return ContextHolder{cohen::make_context(n, resolve_mode(mode, p, r), class_bound)};
      },
      py::arg("n"), py::arg("mode") = "mod", py::arg("p") = 3, py::arg("r") = 2,
      py::arg("class_bound") = 0);

  m.def(
      "parse", [](const std::string& text, int n) { return ExprHolder{cohen::words::parse(text, n)}; },
      py::arg("text"), py::arg("n"));

  m.def(
      "engel",
      [](const ExprHolder& x, const ExprHolder& y, int depth) {
        return ExprHolder{cohen::words::engel(x.expr, y.expr, depth)};
      },
      py::arg("x"), py::arg("y"), py::arg("depth"));

  m.def(
      "collect",
      [](const ExprHolder& e, const ContextHolder& c) {
        return NormalFormHolder{cohen::collect(*e.expr, *c.ctx), c.ctx};
      },
      py::arg("expr"), py::arg("ctx"));

  m.def("multiply", [](const NormalFormHolder& a, const NormalFormHolder& b) {
    check_same_context(a, b);
    return NormalFormHolder{cohen::multiply(a.nf, b.nf, *a.ctx), a.ctx};
  });
  m.def("inverse",
        [](const NormalFormHolder& a) { return NormalFormHolder{cohen::inverse(a.nf, *a.ctx), a.ctx}; });
  m.def("power", [](const NormalFormHolder& a, long long k) {
    return NormalFormHolder{cohen::power(a.nf, k, *a.ctx), a.ctx};
  });
  m.def("commutator", [](const NormalFormHolder& a, const NormalFormHolder& b) {
    check_same_context(a, b);
    return NormalFormHolder{cohen::commutator(a.nf, b.nf, *a.ctx), a.ctx};
  });
  m.def("structure_constant", [](const ContextHolder& c, std::uint32_t i, std::uint32_t j) {
    return NormalFormHolder{cohen::structure_constant(i, j, *c.ctx), c.ctx};
  });

  m.def(
      "consistency_check",
      [](const ContextHolder& c, int trials, std::uint64_t seed) {
        auto rep = cohen::consistency_check(*c.ctx, trials, seed);
        py::dict out;
        out["passed"] = rep.passed;
        out["trials"] = rep.trials;
        out["checks_run"] = rep.checks_run;
        out["witness"] = rep.witness;
        out["notes"] = rep.notes;
        out["elapsed_ms"] = rep.elapsed_ms;
        return out;
      },
      py::arg("ctx"), py::arg("trials") = 100, py::arg("seed") = 0x5EEDC0DEULL);

  // combinatorics
  m.def("count_divisions", &cohen::perm::count_divisions, py::arg("perm"), py::arg("l"));
  m.def(
      "sigma_ln",
      [](int n, int l) {
        std::vector<std::pair<std::vector<int>, long long>> out;
        for (const auto& s : cohen::perm::sigma_ln(n, l)) out.emplace_back(s.perm, s.d);
        return out;
      },
      py::arg("n"), py::arg("l"));
  m.def(
      "sigma_ln_at",
      [](int n, int l, int i) {
        std::vector<std::pair<std::vector<int>, long long>> out;
        for (const auto& s : cohen::perm::sigma_ln_at(n, l, i)) out.emplace_back(s.perm, s.d);
        return out;
      },
      py::arg("n"), py::arg("l"), py::arg("i"));
  m.def(
      "stirling2",
      [](int n, int l) {
        return py::module_::import("builtins").attr("int")(
            cohen::perm::stirling2(n, l).to_string());
      },
      py::arg("n"), py::arg("l"));
  m.def("shuffles", &cohen::perm::shuffles, py::arg("block_sizes"));

  // verification battery
  m.def(
      "verify",
      [](const std::string& claim, int n, std::uint32_t p, std::uint32_t r, bool profile_explicit,
         int kmax, int l, int jobs, int trials, std::uint64_t seed, const std::string& cache_dir) {
        cohen::verify::Options opt;
        opt.claim = claim;
        opt.n = n;
        opt.p = p;
        opt.r = r;
        opt.profile_explicit = profile_explicit;
        opt.kmax = kmax;
        opt.l = l;
        opt.jobs = jobs;
        opt.trials = trials;
        opt.seed = seed;
        opt.cache_dir = cache_dir;
        return json_to_py(cohen::verify::manifest_string(cohen::verify::run(opt)));
      },
      py::arg("claim") = "all", py::arg("n") = 0, py::arg("p") = 3, py::arg("r") = 2,
      py::arg("profile_explicit") = false, py::arg("kmax") = 12, py::arg("l") = 0,
      py::arg("jobs") = 1, py::arg("trials") = 500, py::arg("seed") = 0xC0DE5EEDULL,
      py::arg("cache_dir") = "");

  m.def(
      "verify_claim",
      [](const std::string& claim_id, int n, std::uint32_t p, std::uint32_t r, int l) {
        cohen::subgroups::ClaimParams q;
        q.n = n;
        q.p = p;
        q.r = r;
        q.l = l;
        py::list out;
        for (const auto& v : cohen::subgroups::verify_claims(claim_id, q)) {
          py::dict d;
          d["claim"] = v.claim;
          d["element"] = v.element;
          d["subgroup"] = v.subgroup;
          d["status"] = cohen::subgroups::to_string(v.status);
          d["note"] = v.note;
          out.append(d);
        }
        return out;
      },
      py::arg("claim_id"), py::arg("n"), py::arg("p") = 3, py::arg("r") = 2, py::arg("l") = 2);

  m.attr("__version__") = cohen::verify::kToolVersion;
}
