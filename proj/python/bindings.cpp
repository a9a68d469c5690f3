#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prefbound/bounds.hpp"
#include "prefbound/errors.hpp"
#include "prefbound/oracles.hpp"
#include "prefbound/pathology.hpp"
#include "prefbound/perm.hpp"
#include "prefbound/permutohedron.hpp"
#include "prefbound/sweep.hpp"

namespace py = pybind11;
using namespace prefbound;

namespace {

Profile to_profile(int num_alternatives, const std::vector<std::vector<int>>& rankings) {
  std::vector<Preference> prefs;
  prefs.reserve(rankings.size());
  for (const auto& r : rankings) prefs.emplace_back(r);
  return Profile(num_alternatives, std::move(prefs));
}

py::int_ to_py(const BigInt& v) {
  PyObject* obj = PyLong_FromString(v.str().c_str(), nullptr, 10);
  if (obj == nullptr) throw py::error_already_set();
  return py::reinterpret_steal<py::int_>(obj);
}

BoundParams make_params(int A, int I, int d, std::optional<int> K, const std::string& ball_mode) {
  BoundParams p;
  p.A = A;
  p.I = I;
  p.d = d;
  p.K = K;
  p.ball_mode = parse_ball_mode(ball_mode);
  return p;
}

py::object count_to_py(const Count& c) {
  if (c.is_exact()) return to_py(c.value());
  return py::float_(c.to_double());
}

}  // namespace

PYBIND11_MODULE(_prefbound, m) {
  m.doc() = "Bounds on the expressiveness of d-dimensional Euclidean preference models";

  static py::exception<CapacityError> capacity_error(m, "CapacityError", PyExc_RuntimeError);
  static py::exception<DegeneracyError> degeneracy_error(m, "DegeneracyError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const CapacityError& e) {
      PyErr_SetString(capacity_error.ptr(), e.what());
    } catch (const DegeneracyError& e) {
      PyErr_SetString(degeneracy_error.ptr(), e.what());
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def(
      "kendall_distance",
      [](const std::vector<int>& p, const std::vector<int>& q) { return kendall_distance(Preference(p), Preference(q)); },
      py::arg("p"), py::arg("q"), "Adjacent-swap distance between two rankings (lists, top choice first).");

  m.def(
      "restrict_to",
      [](const std::vector<int>& p, const std::vector<int>& subset) {
        const auto sub = restrict_to(Preference(p), subset);
        return std::vector<int>(sub.order().begin(), sub.order().end());
      },
      py::arg("p"), py::arg("subset"));

  m.def(
      "find_circulant",
      [](int A, const std::vector<std::vector<int>>& profile, int k) -> py::object {
        const auto w = find_circulant(to_profile(A, profile), k);
        if (!w) return py::none();
        py::dict out;
        out["subset"] = w->subset;
        out["cycle"] = std::vector<int>(w->cycle.alternatives().begin(), w->cycle.alternatives().end());
        out["individuals"] = w->individuals;
        return out;
      },
      py::arg("num_alternatives"), py::arg("profile"), py::arg("k"));

  m.def(
      "contains_circulant",
      [](int A, const std::vector<std::vector<int>>& profile, int k) { return contains_circulant(to_profile(A, profile), k); },
      py::arg("num_alternatives"), py::arg("profile"), py::arg("k"));

  m.def(
      "event_B_holds", [](const std::vector<int>& p, int d) { return event_B_holds(Preference(p), d).holds; },
      py::arg("p"), py::arg("d"));

  m.def(
      "mahonian_counts",
      [](int A) {
        const auto table = mahonian_counts(A);
        py::list out;
        for (int j = 0; j <= table.max_distance(); ++j) out.append(count_to_py(table.count(j)));
        return out;
      },
      py::arg("num_alternatives"), "Permutations by inversion number; floats above the log-space threshold.");

  m.def("ball_sizes_bfs", &ball_sizes_bfs, py::arg("num_alternatives"));

  m.def(
      "pathology_probability_lower_bound",
      [](int A, int I, int d) { return pathology_probability_lower_bound(make_params(A, I, d, std::nullopt, "paper")); },
      py::arg("A"), py::arg("I"), py::arg("d"));

  m.def("banned_probability", &banned_probability, py::arg("A"), py::arg("d"));

  m.def(
      "max_representable_upper_bound",
      [](int A, int d) {
        const auto r = max_representable_upper_bound(A, d);
        py::dict out;
        out["p_banned"] = r.p_banned;
        out["rhat"] = r.rhat;
        out["log_rhat"] = r.log_rhat;
        out["fraction"] = r.fraction;
        out["rhat_count"] = count_to_py(r.rhat_count);
        return out;
      },
      py::arg("A"), py::arg("d"));

  m.def(
      "info_loss_lower_bound",
      [](int A, int d, std::optional<int> K, const std::string& ball_mode) {
        const auto b = info_loss_lower_bound(make_params(A, 0, d, K, ball_mode));
        py::dict out;
        out["expectation_lb"] = b.expectation_lb;
        out["scaled_lb"] = b.scaled_lb;
        out["terms"] = b.terms;
        out["rhat_used"] = b.rhat_used;
        out["vacuous"] = b.vacuous;
        return out;
      },
      py::arg("A"), py::arg("d"), py::arg("K") = py::none(), py::arg("ball_mode") = "paper");

  m.def(
      "info_loss_cdf_bound",
      [](int k, int A, int d, const std::string& ball_mode) {
        return info_loss_cdf_bound(k, make_params(A, 0, d, std::nullopt, ball_mode));
      },
      py::arg("k"), py::arg("A"), py::arg("d"), py::arg("ball_mode") = "paper");

  m.def("sufficiency_threshold", &sufficiency_threshold, py::arg("A"), py::arg("I"));

  m.def(
      "exact_pathology_probability",
      [](int A, int I, int k) {
        const auto f = exact_pathology_probability(A, I, k);
        return py::make_tuple(f.numerator, f.denominator);
      },
      py::arg("A"), py::arg("I"), py::arg("k"));

  m.def(
      "mc_pathology_probability",
      [](int A, int I, int k, std::uint64_t trials, std::uint64_t seed, int jobs) {
        McEstimate est;
        {
          py::gil_scoped_release release;
          est = mc_pathology_probability(A, I, k, trials, seed, jobs);
        }
        py::dict out;
        out["estimate"] = est.estimate;
        out["std_error"] = est.std_error;
        out["trials"] = est.trials;
        out["hits"] = est.hits;
        out["seed"] = est.seed;
        return out;
      },
      py::arg("A"), py::arg("I"), py::arg("k"), py::arg("trials"), py::arg("seed") = 1, py::arg("jobs") = 1);

  m.def(
      "enumerate_event_B",
      [](int A, int d) {
        const auto f = enumerate_event_B(A, d);
        return py::make_tuple(f.numerator, f.denominator);
      },
      py::arg("A"), py::arg("d"));

  m.def("one_dim_distinct_orders", [](const std::vector<double>& loc) { return one_dim_distinct_orders(loc); },
        py::arg("locations"));

  m.def(
      "run_csv",
      [](const std::string& subcommand, const std::optional<std::string>& A, const std::optional<std::string>& I,
         const std::optional<std::string>& d, std::optional<int> K, const std::string& ball_mode,
         std::optional<std::uint64_t> trials, std::optional<std::uint64_t> seed, int jobs) {
        Subcommand cmd;
        if (subcommand == "bound-c") {
          cmd = Subcommand::bound_c;
        } else if (subcommand == "rhat") {
          cmd = Subcommand::rhat;
        } else if (subcommand == "info-loss") {
          cmd = Subcommand::info_loss;
        } else if (subcommand == "verify") {
          cmd = Subcommand::verify;
        } else {
          throw InvalidArgument("unknown subcommand '" + subcommand + "'");
        }
        auto spec = default_spec(cmd);
        if (A) spec.A = IntRange::parse(*A);
        if (I) spec.I = IntRange::parse(*I);
        if (d) spec.d = IntRange::parse(*d);
        spec.K = K;
        spec.ball_mode = parse_ball_mode(ball_mode);
        if (trials) spec.trials = *trials;
        if (seed) spec.seed = *seed;
        spec.jobs = jobs;
        bool passed = true;
        std::string text;
        {
          py::gil_scoped_release release;
          text = to_csv(run_to_document(spec, &passed));
        }
        return py::make_tuple(text, passed);
      },
      py::arg("subcommand"), py::arg("A") = py::none(), py::arg("I") = py::none(), py::arg("d") = py::none(),
      py::arg("K") = py::none(), py::arg("ball_mode") = "paper", py::arg("trials") = py::none(),
      py::arg("seed") = py::none(), py::arg("jobs") = 1,
      "Runs a sweep and returns (csv_text, all_passed) exactly as the CLI would write it.");
}
