#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>

#include "ram/axioms.hpp"
#include "ram/decomp.hpp"
#include "ram/interim.hpp"
#include "ram/io.hpp"
#include "ram/mechanisms.hpp"

namespace py = pybind11;
using namespace ram;

// Rational <-> fractions.Fraction (ints are accepted on the way in).
namespace pybind11::detail {
template <>
struct type_caster<Rational> {
  PYBIND11_TYPE_CASTER(Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src || !py::hasattr(src, "numerator") || !py::hasattr(src, "denominator")) return false;
    if (PyFloat_Check(src.ptr())) return false;
    const std::string num = py::str(src.attr("numerator"));
    const std::string den = py::str(src.attr("denominator"));
    try {
      value = Rational::parse(num + "/" + den);
    } catch (const InputError&) {
      return false;
    }
    return true;
  }

  static handle cast(const Rational& r, return_value_policy, handle) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::int_(py::str(r.numerator_string())), py::int_(py::str(r.denominator_string())))
        .release();
  }
};
}  // namespace pybind11::detail

namespace {

using Matrix = std::vector<std::vector<Rational>>;
using Rankings = std::vector<std::vector<int>>;

Profile to_profile(const Rankings& rankings) {
  std::vector<Preference> prefs;
  for (const auto& r : rankings) prefs.emplace_back(r);
  return Profile(std::move(prefs));
}

std::vector<int> to_list(const Preference& p) { return {p.ranking().begin(), p.ranking().end()}; }

Rankings to_lists(const Profile& p) {
  Rankings out;
  for (const auto& pref : p.preferences()) out.push_back(to_list(pref));
  return out;
}

Prior to_prior(int n, const std::vector<Rational>& probabilities) { return Prior(n, probabilities); }

SweepOptions sweep(const std::string& mode, int threads) {
  SweepOptions o;
  o.threads = threads;
  if (mode == "exhaustive") {
    o.mode = SweepMode::kExhaustive;
  } else if (mode == "first") {
    o.mode = SweepMode::kFirstViolation;
  } else if (mode != "auto") {
    throw InputError("mode must be auto, exhaustive or first");
  }
  return o;
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::kAtLeast:
      return "at-least";
    case Relation::kAtMost:
      return "at-most";
    case Relation::kEqual:
      return "equal";
    case Relation::kNone:
      break;
  }
  return "none";
}

py::dict report_dict(const ViolationReport& v) {
  py::dict d;
  d["axiom"] = std::string(axiom_name(v.axiom));
  d["agent"] = v.agent;
  d["profile"] = v.profile ? py::cast(to_lists(*v.profile)) : py::none();
  d["truthful"] = v.truthful ? py::cast(to_list(*v.truthful)) : py::none();
  d["deviation"] = v.deviation ? py::cast(to_list(*v.deviation)) : py::none();
  d["swap"] = v.swap ? py::cast(std::make_tuple(v.swap->position, v.swap->lowered, v.swap->raised)) : py::none();
  if (v.permutation) {
    std::vector<int> image;
    for (int a = 0; a < v.permutation->size(); ++a) image.push_back((*v.permutation)(a));
    d["permutation"] = image;
  } else {
    d["permutation"] = py::none();
  }
  d["other_agent"] = v.other_agent ? py::cast(*v.other_agent) : py::none();
  d["component"] = v.component ? py::cast(std::vector<int>(v.component->objects().begin(),
                                                           v.component->objects().end()))
                               : py::none();
  d["witness"] = v.witness;
  d["prefix_length"] = v.prefix_length;
  d["relation"] = relation_name(v.relation);
  d["lhs"] = v.lhs;
  d["rhs"] = v.rhs;
  return d;
}

py::dict outcome_dict(const CheckOutcome& o) {
  py::dict d;
  d["axiom"] = std::string(axiom_name(o.axiom));
  d["satisfied"] = o.satisfied();
  py::list violations;
  for (const auto& v : o.violations) violations.append(report_dict(v));
  d["violations"] = violations;
  d["profiles_checked"] = o.stats.profiles_checked;
  d["comparisons"] = o.stats.comparisons;
  return d;
}

py::list decomposition_list(const Decomposition& dec) {
  py::list out;
  for (const auto& t : dec.terms()) {
    out.append(py::make_tuple(t.weight, std::vector<int>(t.component.objects().begin(), t.component.objects().end())));
  }
  return out;
}

EatingSpeedSchedule to_speeds(const std::vector<std::vector<std::tuple<Rational, Rational, Rational>>>& pieces) {
  std::vector<std::vector<SpeedPiece>> out;
  for (const auto& agent : pieces) {
    std::vector<SpeedPiece> row;
    for (const auto& [start, end, speed] : agent) row.push_back({start, end, speed});
    out.push_back(std::move(row));
  }
  return EatingSpeedSchedule(std::move(out));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact random assignment mechanisms and incentive checks";

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_AssertionError);
  (void)input_error;

  py::class_<Mechanism>(m, "Mechanism")
      .def_property_readonly("n", &Mechanism::n)
      .def_property_readonly("descriptor", &Mechanism::descriptor)
      .def("__call__", [](const Mechanism& self, const Rankings& profile) {
        return self.evaluate(to_profile(profile)).rows();
      }, py::arg("profile"))
      .def("__repr__", [](const Mechanism& self) { return "<Mechanism " + self.descriptor() + ">"; });

  m.def("ps", &make_probabilistic_serial, py::arg("n"));
  m.def("rp", [](int n) { return make_random_priority(n); }, py::arg("n"));
  m.def("sd", [](const std::vector<int>& order) { return make_serial_dictatorship(PriorityOrder(order)); },
        py::arg("order"));
  m.def("sea", [](const std::vector<std::vector<std::tuple<Rational, Rational, Rational>>>& pieces) {
    return make_simultaneous_eating(to_speeds(pieces));
  }, py::arg("speeds"));
  m.def("tabulated", [](int n, const std::map<Rankings, Matrix>& table) {
    std::map<Profile, Matrix> rows;
    for (const auto& [k, v] : table) rows.emplace(to_profile(k), v);
    return tabulated_mechanism(Instance::with_default_names(n), rows);
  }, py::arg("n"), py::arg("table"));
  m.def("load_table", [](const std::string& text) { return load_table_mechanism(text); }, py::arg("text"));

  m.def("probabilistic_serial", [](const Rankings& p) { return probabilistic_serial(to_profile(p)).rows(); },
        py::arg("profile"));
  m.def("random_priority", [](const Rankings& p) { return random_priority(to_profile(p)).rows(); },
        py::arg("profile"));
  m.def("serial_dictatorship", [](const Rankings& p, const std::vector<int>& order) {
    return serial_dictatorship(to_profile(p), PriorityOrder(order)).rows();
  }, py::arg("profile"), py::arg("order"));

  m.def("fosd", [](const std::vector<Rational>& x, const std::vector<Rational>& y, const std::vector<int>& r) {
    return fosd(x, y, Preference(r));
  }, py::arg("first"), py::arg("second"), py::arg("ranking"));

  m.def("check", [](const std::string& axiom, const Mechanism& mech, const std::string& mode, int threads) {
    const Axiom a = parse_axiom(axiom);
    const SweepOptions o = sweep(mode, threads);
    CheckOutcome out;
    {
      py::gil_scoped_release release;
      out = check_axiom(a, mech, o);
    }
    return outcome_dict(out);
  }, py::arg("axiom"), py::arg("mechanism"), py::arg("mode") = "auto", py::arg("threads") = 0);

  m.def("ordinally_efficient", [](const Matrix& l, const Rankings& p) {
    const auto r = check_ordinal_efficiency(validate_assignment(l), to_profile(p));
    return py::make_tuple(r.efficient, r.cycle);
  }, py::arg("assignment"), py::arg("profile"));
  m.def("lp_dominance", [](const Matrix& l, const Rankings& p) {
    const auto r = lp_dominance(validate_assignment(l), to_profile(p));
    return py::make_tuple(r.optimum, r.dominating ? py::cast(r.dominating->rows()) : py::none());
  }, py::arg("assignment"), py::arg("profile"));
  m.def("ex_post_efficient", [](const Matrix& l, const Rankings& p) {
    return check_ex_post_efficiency(validate_assignment(l), to_profile(p));
  }, py::arg("assignment"), py::arg("profile"));

  m.def("decompose", [](const Matrix& l) { return decomposition_list(birkhoff_decompose(validate_assignment(l))); },
        py::arg("assignment"));
  m.def("recombine", [](const std::vector<std::pair<Rational, std::vector<int>>>& terms) {
    std::vector<DecompositionTerm> t;
    for (const auto& [w, objects] : terms) t.push_back({w, DeterministicAssignment(objects)});
    return recombine(Decomposition(std::move(t))).rows();
  }, py::arg("terms"));

  m.def("uniform_prior", [](int n) {
    const Prior p = uniform_prior(n);
    return std::vector<Rational>(p.probabilities().begin(), p.probabilities().end());
  }, py::arg("n"));
  m.def("interim_shares", [](const Mechanism& mech, int agent, const std::vector<int>& report,
                             const std::vector<Rational>& prior) {
    return interim_share_vector(mech, agent, Preference(report), to_prior(mech.n(), prior)).shares;
  }, py::arg("mechanism"), py::arg("agent"), py::arg("report"), py::arg("prior"));
  m.def("check_obic", [](const Mechanism& mech, const std::vector<Rational>& prior) {
    const Prior p = to_prior(mech.n(), prior);
    CheckOutcome out;
    {
      py::gil_scoped_release release;
      out = check_obic(mech, p);
    }
    return outcome_dict(out);
  }, py::arg("mechanism"), py::arg("prior"));
  m.def("obic_decomposition", [](const Mechanism& mech, const std::vector<Rational>& prior) {
    const Prior p = to_prior(mech.n(), prior);
    std::optional<ObicDecomposition> d;
    {
      py::gil_scoped_release release;
      d = obic_decomposition_report(mech, p);
    }
    py::dict out;
    out["obic"] = outcome_dict(d->obic);
    out["interim-em"] = outcome_dict(d->elementary_monotonicity);
    out["interim-ui"] = outcome_dict(d->upper_invariance);
    out["interim-li"] = outcome_dict(d->lower_invariance);
    return out;
  }, py::arg("mechanism"), py::arg("prior"));
  m.def("rank_vectors", [](const Mechanism& mech, const std::vector<Rational>& prior, int agent) {
    const auto r = rank_vector_report(mech, to_prior(mech.n(), prior), agent);
    py::dict out;
    Rankings reports;
    for (const auto& p : r.reports) reports.push_back(to_list(p));
    out["reports"] = reports;
    out["shares"] = r.shares;
    out["rank_vectors"] = r.rank_vectors;
    out["rank_invariant"] = r.rank_invariant;
    out["rank_monotone"] = r.rank_monotone;
    return out;
  }, py::arg("mechanism"), py::arg("prior"), py::arg("agent"));
  m.def("sample_prior", [](int n, const std::vector<Rational>& center, const Rational& epsilon, std::uint64_t seed) {
    const auto s = sample_prior_in_ball(to_prior(n, center), epsilon, seed);
    return std::vector<Rational>(s.sample.probabilities().begin(), s.sample.probabilities().end());
  }, py::arg("n"), py::arg("center"), py::arg("epsilon"), py::arg("seed"));
  m.def("lrobic_search", [](const Mechanism& mech, const std::vector<Rational>& center, const Rational& epsilon,
                            int samples, std::uint64_t seed, bool targeted) -> py::object {
    LrobicOptions o;
    o.targeted = targeted;
    const Prior c = to_prior(mech.n(), center);
    std::optional<LrobicViolation> found;
    {
      py::gil_scoped_release release;
      found = lrobic_search(mech, c, epsilon, samples, seed, o);
    }
    if (!found) return py::none();
    py::dict out;
    out["sample"] = found->sample_index;
    out["seed"] = found->prior.seed;
    out["prior"] = std::vector<Rational>(found->prior.sample.probabilities().begin(),
                                         found->prior.sample.probabilities().end());
    out["witness"] = report_dict(found->witness);
    return out;
  }, py::arg("mechanism"), py::arg("center"), py::arg("epsilon"), py::arg("samples"), py::arg("seed"),
     py::arg("targeted") = false);
}
