#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bellrand/app/analysis.hpp"
#include "bellrand/bell.hpp"
#include "bellrand/complexity.hpp"
#include "bellrand/error.hpp"
#include "bellrand/ingest.hpp"
#include "bellrand/nist/battery.hpp"
#include "bellrand/series.hpp"
#include "bellrand/version.hpp"

namespace py = pybind11;
using namespace bellrand;

namespace {

using Bits = std::vector<std::uint8_t>;

nist::BatteryConfig battery_config(double alpha) {
  nist::BatteryConfig cfg;
  cfg.alpha = alpha;
  return cfg;
}

py::dict test_dict(const nist::TestResult& r) {
  py::dict d;
  d["test_id"] = r.test_id;
  d["name"] = r.name;
  d["status"] = std::string(nist::to_string(r.status));
  d["p_values"] = r.p_values;
  d["params"] = r.params;
  return d;
}

py::dict battery_dict(const nist::BatteryReport& rep) {
  py::dict d;
  d["n"] = rep.n;
  d["alpha"] = rep.alpha;
  d["first6_pass"] = rep.first6_pass;
  d["full_pass_excepting_9"] = rep.full_pass_excepting_9;
  py::list results;
  for (const auto& r : rep.results) results.append(test_dict(r));
  d["results"] = results;
  return d;
}

app::AnalysisConfig analysis_config(double alpha, double k_min, const std::string& criteria,
                                    const std::string& quaternary_map, bool gap_series,
                                    const std::string& chsh_pattern) {
  app::AnalysisConfig cfg;
  cfg.battery = battery_config(alpha);
  cfg.k_min = k_min;
  cfg.criteria = app::parse_criteria_mode(criteria);
  cfg.quaternary_map = series::parse_quaternary_map(quaternary_map);
  cfg.include_gap_series = gap_series;
  cfg.chsh_pattern = bell::parse_sign_pattern(chsh_pattern);
  return cfg;
}

std::vector<ingest::DetectionEvent> events_from(const std::vector<std::tuple<ingest::Tick, int, int>>& raw,
                                                ingest::Station station) {
  std::vector<ingest::DetectionEvent> out;
  out.reserve(raw.size());
  for (const auto& [t, s, d] : raw) {
    out.push_back({station, t, static_cast<std::uint8_t>(s & 1), static_cast<std::uint8_t>(d & 1)});
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Randomness assessment of two-station Bell-test outcome data";
  m.attr("__version__") = kVersion;

  static py::exception<Error> error(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<ingest::RunDataset>(m, "RunDataset")
      .def_readonly("name", &ingest::RunDataset::name)
      .def_readonly("metadata", &ingest::RunDataset::metadata)
      .def("__len__", &ingest::RunDataset::size)
      .def("coincidences", [](const ingest::RunDataset& run) {
        py::list out;
        for (const auto& c : run.coincidences) {
          out.append(py::make_tuple(c.coincidence_time, c.alice.setting, c.alice.detector, c.bob.setting,
                                    c.bob.detector));
        }
        return out;
      }, "List of (time, settingA, detectorA, settingB, detectorB) tuples.")
      .def("to_text", [](const ingest::RunDataset& run) {
        std::ostringstream out;
        ingest::write_coincidences(out, run);
        return out.str();
      }, "Canonical coincidence file contents.");

  m.def("read_coincidences", [](const std::string& path, bool strict) {
    return ingest::parse_coincidences_file(path, strict).run;
  }, py::arg("path"), py::arg("strict") = true);

  m.def("parse_coincidences", [](const std::string& text, bool strict, const std::string& name) {
    std::istringstream in(text);
    return ingest::parse_coincidences(in, strict, name).run;
  }, py::arg("text"), py::arg("strict") = true, py::arg("name") = "run");

  m.def("match_coincidences",
        [](const std::vector<std::tuple<ingest::Tick, int, int>>& alice,
           const std::vector<std::tuple<ingest::Tick, int, int>>& bob, ingest::Tick window, const std::string& name) {
          ingest::RunDataset run;
          run.name = name;
          run.coincidences = ingest::match_coincidences(events_from(alice, ingest::Station::Alice),
                                                        events_from(bob, ingest::Station::Bob), window);
          return run;
        },
        py::arg("alice"), py::arg("bob"), py::arg("window"), py::arg("name") = "run",
        "Match (timestamp, setting, detector) events from the two stations.");

  m.def("synth_generate", [](std::size_t n, std::uint64_t seed, const std::string& table) {
    ingest::SynthConfig cfg;
    if (table == "chsh") {
      cfg.prob = ingest::chsh_optimal_table();
    } else if (table == "deterministic") {
      cfg.prob = ingest::deterministic_table();
    } else {
      throw Error(ErrorKind::InvalidParams, "table must be chsh|deterministic");
    }
    cfg.n = n;
    cfg.seed = seed;
    return ingest::synth_generate(cfg);
  }, py::arg("n"), py::arg("seed") = 0, py::arg("table") = "chsh");

  m.def("lz76_phrase_count", [](const Bits& bits) { return complexity::lz76_phrase_count(bits); },
        py::arg("bits"));

  m.def("normalized_complexity", [](const Bits& bits) {
    const auto r = complexity::normalized_complexity(bits);
    py::dict d;
    d["n"] = r.n;
    d["phrase_count"] = r.phrase_count;
    d["k"] = r.normalized;
    d["limit"] = r.limit_used;
    return d;
  }, py::arg("bits"));

  m.def("run_test", [](int test_id, const Bits& bits, double alpha) {
    return test_dict(nist::run_test(test_id, bits, battery_config(alpha)));
  }, py::arg("test_id"), py::arg("bits"), py::arg("alpha") = 0.01);

  m.def("run_battery", [](const Bits& bits, double alpha) {
    return battery_dict(nist::run_battery(bits, battery_config(alpha)));
  }, py::arg("bits"), py::arg("alpha") = 0.01);

  m.def("chsh", [](const ingest::RunDataset& run, const std::string& pattern) {
    const auto r = bell::chsh_from_counts(bell::tabulate_counts(run), bell::parse_sign_pattern(pattern));
    py::dict d;
    d["correlations"] = r.correlations;
    d["s"] = r.s_value;
    d["violates_local_bound"] = r.violates_local_bound;
    d["max_s"] = r.max_s_value;
    d["max_pattern"] = std::string(bell::to_string(r.max_pattern));
    return d;
  }, py::arg("run"), py::arg("pattern") = "11");

  py::class_<app::ReportRow>(m, "ReportRow")
      .def_readonly("label", &app::ReportRow::series_label)
      .def_readonly("k", &app::ReportRow::k)
      .def_readonly("phrase_count", &app::ReportRow::phrase_count)
      .def_readonly("n", &app::ReportRow::n)
      .def_property_readonly("verdict", [](const app::ReportRow& r) {
        return std::string(app::verdict_string(r.verdict.classification));
      })
      .def_property_readonly("reason", [](const app::ReportRow& r) { return r.verdict.reason; })
      .def_property_readonly("bell_stat", [](const app::ReportRow& r) -> py::object {
        if (!r.bell_stat) return py::none();
        return py::str(r.bell_stat->text);
      })
      .def_property_readonly("battery", [](const app::ReportRow& r) { return battery_dict(r.verdict.battery); });

  m.def("analyze_run",
        [](const ingest::RunDataset& run, double alpha, double k_min, const std::string& criteria,
           const std::string& quaternary_map, bool gap_series, const std::string& chsh_pattern) {
          return app::analyze_run(run, analysis_config(alpha, k_min, criteria, quaternary_map, gap_series, chsh_pattern));
        },
        py::arg("run"), py::arg("alpha") = 0.01, py::arg("k_min") = app::kDefaultKMin, py::arg("criteria") = "full",
        py::arg("quaternary_map") = "two-bit", py::arg("gap_series") = false, py::arg("chsh_pattern") = "11");

  m.def("analyze_bits",
        [](const Bits& bits, const std::string& label, double alpha, double k_min, const std::string& criteria) {
          return app::analyze_series({label, bits}, analysis_config(alpha, k_min, criteria, "two-bit", false, "11"));
        },
        py::arg("bits"), py::arg("label") = "series", py::arg("alpha") = 0.01, py::arg("k_min") = app::kDefaultKMin,
        py::arg("criteria") = "full");

  m.def("render", [](const std::vector<app::ReportRow>& rows, const std::string& format) {
    return app::render(rows, app::parse_report_format(format));
  }, py::arg("rows"), py::arg("format") = "table");
}
