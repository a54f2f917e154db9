#pragma once
// Batch jobs: JSON job descriptions in, JSON reports out.
//
// A job names a ring, a functor chain (stages listed innermost first, each an
// ideal given by monomial exponent vectors plus a cohomological slot), the slot
// of the outer H_m, and the outputs to produce. See README.md for the schema.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "grf/cech.hpp"
#include "grf/frobenius.hpp"
#include "grf/oracle.hpp"
#include "grf/structure.hpp"

namespace grf {

using Json = nlohmann::json;

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kInputError = 2 };

/// Malformed job input; the message names the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleRequest {
  std::vector<Multidegree> points;
  long long bound = 6;
  std::size_t samples = 20;
  std::uint64_t seed = 1;
};

struct DualityRequest {
  int l = 1;
  FiniteGradedModule source;
  FiniteGradedModule target;
};

struct JobSpec {
  std::string name;
  RingSpec ring;
  std::optional<FunctorChain> chain;
  DegreeWindow window;
  bool dimensions = false;
  bool verify = false;
  std::optional<MonomialIdeal> lyubeznik;
  std::optional<std::set<long long>> threshold;
  std::optional<DualityRequest> duality;
  std::optional<OracleRequest> oracle;
  Json expect = Json::object();
};

namespace detail {

template <class T>
T field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + "." + key + ": missing");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(where + "." + key + ": wrong type");
  }
}

inline std::vector<Exponent> parse_generators(const Json& j, const RingSpec& ring, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected a list of exponent vectors");
  std::vector<Exponent> gens;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    Exponent e;
    try {
      e = j[k].get<Exponent>();
    } catch (const nlohmann::json::exception&) {
      throw InputError(at + ": expected a list of integers");
    }
    if (static_cast<int>(e.size()) != ring.n())
      throw InputError(at + ": expected " + std::to_string(ring.n()) + " exponents");
    if (std::any_of(e.begin(), e.end(), [](int v) { return v < 0; })) throw InputError(at + ": negative exponent");
    if (std::all_of(e.begin(), e.end(), [](int v) { return v == 0; })) throw InputError(at + ": empty monomial generator");
    gens.push_back(std::move(e));
  }
  if (gens.empty()) throw InputError(where + ": ideal needs at least one generator");
  return gens;
}

inline FpMatrix parse_matrix(const Json& j, std::size_t dim, std::uint32_t p, const std::string& where) {
  std::vector<std::vector<long long>> rows;
  try {
    rows = j.get<std::vector<std::vector<long long>>>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(where + ": expected a matrix (list of rows)");
  }
  if (rows.size() != dim) throw InputError(where + ": expected " + std::to_string(dim) + " rows");
  for (const auto& r : rows)
    if (r.size() != dim) throw InputError(where + ": expected " + std::to_string(dim) + " columns");
  return FpMatrix::from_rows(rows, p);
}

}  // namespace detail

inline RingSpec parse_ring(const Json& j, const std::string& where = "ring") {
  const int n = detail::field<int>(j, "n", where);
  const auto p = detail::field<long long>(j, "p", where);
  if (p < 2 || p > static_cast<long long>(RingSpec::kMaxPrime)) throw InputError(where + ".p: out of range");
  std::vector<std::string> names;
  if (j.contains("names")) names = detail::field<std::vector<std::string>>(j, "names", where);
  try {
    return RingSpec(n, static_cast<std::uint32_t>(p), names);
  } catch (const Error& e) {
    throw InputError(where + ": " + e.what());
  }
}

/// A finite graded module, either explicit ({"degrees", "actions"}) or one of
/// {"kind": "residue", "degree"}, {"kind": "truncated_dual", "t", "shift"},
/// {"kind": "quotient", "generators", "shift"}.
inline FiniteGradedModule parse_module(const Json& j, const RingSpec& ring, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  try {
    const std::string kind = j.value("kind", std::string("explicit"));
    if (kind == "residue") return residue_field(ring, j.value("degree", 0LL));
    if (kind == "truncated_dual")
      return truncated_dual(ring, detail::field<int>(j, "t", where), j.value("shift", 0LL));
    if (kind == "quotient")
      return monomial_quotient(ring, detail::parse_generators(j.at("generators"), ring, where + ".generators"),
                               j.value("shift", 0LL));
    if (kind != "explicit") throw InputError(where + ".kind: unknown module kind '" + kind + "'");
    auto degrees = detail::field<std::vector<long long>>(j, "degrees", where);
    if (!j.contains("actions") || !j["actions"].is_array() || static_cast<int>(j["actions"].size()) != ring.n())
      throw InputError(where + ".actions: expected " + std::to_string(ring.n()) + " matrices");
    std::vector<FpMatrix> actions;
    for (int i = 0; i < ring.n(); ++i)
      actions.push_back(detail::parse_matrix(j["actions"][i], degrees.size(), ring.p(),
                                             where + ".actions[" + std::to_string(i) + "]"));
    return build_module(ring, std::move(degrees), std::move(actions));
  } catch (const Error& e) {
    throw InputError(where + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(where + ": " + e.what());
  }
}

inline DegreeWindow parse_window(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("--window: expected LO:HI");
  try {
    DegreeWindow w{std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
    if (w.lo > w.hi) throw InputError("--window: LO > HI");
    return w;
  } catch (const std::logic_error&) {
    throw InputError("--window: expected integers LO:HI");
  }
}

inline JobSpec parse_job(const Json& j) {
  if (!j.is_object()) throw InputError("job: expected a JSON object");
  JobSpec job;
  job.name = j.value("name", std::string());
  if (!j.contains("ring")) throw InputError("ring: missing");
  job.ring = parse_ring(j["ring"]);
  const RingSpec& ring = job.ring;
  job.window = DegreeWindow::standard(ring.n());
  if (j.contains("window")) {
    auto w = j["window"];
    if (!w.is_array() || w.size() != 2 || !w[0].is_number_integer() || !w[1].is_number_integer() || w[0] > w[1])
      throw InputError("window: expected [lo, hi] with lo <= hi");
    job.window = {w[0].get<long long>(), w[1].get<long long>()};
  }

  if (j.contains("chain") || j.contains("final_slot")) {
    FunctorChain chain{ring, {}, 0};
    if (j.contains("chain")) {
      if (!j["chain"].is_array()) throw InputError("chain: expected a list of stages");
      for (std::size_t k = 0; k < j["chain"].size(); ++k) {
        const std::string where = "chain[" + std::to_string(k) + "]";
        const Json& stage = j["chain"][k];
        if (!stage.is_object() || !stage.contains("ideal")) throw InputError(where + ".ideal: missing");
        auto gens = detail::parse_generators(stage["ideal"], ring, where + ".ideal");
        const int slot = detail::field<int>(stage, "slot", where);
        if (slot < 0 || slot > ring.n()) throw InputError(where + ".slot: must lie in [0, n]");
        chain.stages.push_back({MonomialIdeal(ring, gens), slot});
      }
    }
    chain.final_slot = detail::field<int>(j, "final_slot", "job");
    if (chain.final_slot < 0 || chain.final_slot > ring.n()) throw InputError("final_slot: must lie in [0, n]");
    job.chain = std::move(chain);
  }

  std::set<std::string> outputs;
  if (j.contains("outputs")) {
    try {
      for (const auto& o : j["outputs"].get<std::vector<std::string>>()) outputs.insert(o);
    } catch (const nlohmann::json::exception&) {
      throw InputError("outputs: expected a list of strings");
    }
  }
  for (const auto& o : outputs)
    if (o != "dimensions" && o != "verify" && o != "lyubeznik" && o != "threshold" && o != "duality" && o != "oracle")
      throw InputError("outputs: unknown output '" + o + "'");
  job.dimensions = outputs.count("dimensions") > 0;
  job.verify = outputs.count("verify") > 0;
  if ((job.dimensions || job.verify || outputs.count("oracle")) && !job.chain)
    throw InputError("chain: required by the requested outputs");

  if (outputs.count("lyubeznik")) {
    if (j.contains("lyubeznik")) {
      job.lyubeznik = MonomialIdeal(ring, detail::parse_generators(detail::field<Json>(j["lyubeznik"], "ideal", "lyubeznik"),
                                                                   ring, "lyubeznik.ideal"));
    } else if (job.chain && !job.chain->stages.empty()) {
      job.lyubeznik = job.chain->stages.front().ideal;
    } else {
      throw InputError("lyubeznik.ideal: missing");
    }
  }
  if (outputs.count("threshold")) {
    auto support = detail::field<std::vector<long long>>(detail::field<Json>(j, "threshold", "job"), "support", "threshold");
    job.threshold = std::set<long long>(support.begin(), support.end());
  }
  if (outputs.count("duality")) {
    const Json d = detail::field<Json>(j, "duality", "job");
    DualityRequest req;
    req.l = detail::field<int>(d, "l", "duality");
    if (req.l < 1) throw InputError("duality.l: must be positive");
    req.source = parse_module(detail::field<Json>(d, "source", "duality"), ring, "duality.source");
    req.target = parse_module(detail::field<Json>(d, "target", "duality"), ring, "duality.target");
    job.duality = std::move(req);
  }
  if (outputs.count("oracle")) {
    OracleRequest req;
    if (j.contains("oracle")) {
      const Json& o = j["oracle"];
      req.bound = o.value("bound", req.bound);
      req.samples = o.value("samples", req.samples);
      req.seed = o.value("seed", req.seed);
      if (o.contains("points")) {
        try {
          req.points = o["points"].get<std::vector<Multidegree>>();
        } catch (const nlohmann::json::exception&) {
          throw InputError("oracle.points: expected a list of multidegrees");
        }
        for (const auto& a : req.points)
          if (static_cast<int>(a.size()) != ring.n()) throw InputError("oracle.points: wrong multidegree length");
      }
    }
    job.oracle = std::move(req);
  }
  if (j.contains("expect")) {
    if (!j["expect"].is_object()) throw InputError("expect: expected an object");
    job.expect = j["expect"];
  }
  return job;
}

inline JobSpec load_job(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": malformed JSON: " + e.what());
  }
  return parse_job(j);
}

struct Report {
  Json body = Json::object();
  int exit_code = kPass;
  std::vector<std::string> failures;

  void fail(const std::string& why) {
    failures.push_back(why);
    exit_code = std::max(exit_code, static_cast<int>(kVerificationFailure));
  }
};

inline Json ring_json(const RingSpec& ring) { return {{"n", ring.n()}, {"p", ring.p()}, {"names", ring.names()}}; }

inline Json dimension_table(const PatternModule& m, DegreeWindow window) {
  Json patterns = Json::object();
  for (Pattern set = 0; set < m.pattern_count(); ++set) patterns[pattern_name(set, m.ring().n())] = m.dim(set);
  Json degrees = Json::array();
  for (long long d = window.lo; d <= window.hi; ++d) {
    auto h = hilbert_dimension(m, d);
    degrees.push_back({{"degree", d}, {"dimension", h ? Json(*h) : Json("infinite")}});
  }
  return {{"patterns", patterns}, {"hilbert", degrees}, {"window", {window.lo, window.hi}}};
}

inline std::string dimension_csv(const PatternModule& m, DegreeWindow window) {
  std::ostringstream out;
  out << "degree,dimension\n";
  for (long long d = window.lo; d <= window.hi; ++d) {
    auto h = hilbert_dimension(m, d);
    out << d << "," << (h ? std::to_string(*h) : std::string("inf")) << "\n";
  }
  return out.str();
}

inline Json structure_json(const StructureReport& r) {
  return {{"zero_dimensional", r.zero_dimensional},
          {"multiplicity", r.multiplicity},
          {"socle_degree", r.socle_degree ? Json(*r.socle_degree) : Json(nullptr)},
          {"hilbert_profile_ok", r.hilbert_profile_ok},
          {"frobenius_identity_ok", r.frobenius_identity_ok},
          {"window", {r.window.lo, r.window.hi}},
          {"verdict", r.pass ? "pass" : "fail"},
          {"reasons", r.reasons}};
}

inline Json duality_roundtrip(const FiniteGradedModule& source, const FiniteGradedModule& target, int l,
                              std::vector<std::string>* failures) {
  const DualityCheck check = check_duality(source, target, l);
  if (check.first_failure && failures)
    failures->push_back("duality fails in shift class " + std::to_string(*check.first_failure));
  Json classes = Json::array();
  for (const auto& c : check.classes)
    classes.push_back({{"shift", c.shift},
                       {"restricted_dim", c.restricted_dim},
                       {"pullback_dim", c.pullback_dim},
                       {"roundtrip", c.roundtrip}});
  return {{"l", l},
          {"source_dim", source.dim()},
          {"target_dim", target.dim()},
          {"pullback_dim", check.pullback_dim},
          {"shift_classes", classes},
          {"verdict", check.ok() ? "pass" : "fail"}};
}

inline Json threshold_json(const std::set<long long>& support, int n, std::uint32_t p) {
  return {{"support", support}, {"n", n}, {"p", p}, {"threshold", vanishing_threshold(support, n, p)}};
}

inline std::vector<Multidegree> sample_points(int n, const OracleRequest& req) {
  if (!req.points.empty()) return req.points;
  std::mt19937_64 rng(req.seed);
  std::uniform_int_distribution<long long> coord(-req.bound, req.bound);
  std::vector<Multidegree> points;
  points.push_back(Multidegree(n, -1));
  while (points.size() < req.samples) {
    Multidegree a(n);
    for (auto& v : a) v = coord(rng);
    points.push_back(a);
  }
  return points;
}

inline Json oracle_json(const FunctorChain& chain, const PatternModule& final_module, const OracleRequest& req,
                        std::vector<std::string>* failures) {
  auto points = sample_points(chain.ring.n(), req);
  auto brute = oracle_dimensions(chain, points, req.bound);
  Json rows = Json::array();
  bool ok = true;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const std::size_t fast = dim_at(final_module, points[k]);
    if (fast != brute[k]) {
      if (ok && failures) {
        std::string where;
        for (auto v : points[k]) where += (where.empty() ? "" : ",") + std::to_string(v);
        failures->push_back("oracle mismatch at multidegree (" + where + ")");
      }
      ok = false;
    }
    rows.push_back({{"multidegree", points[k]}, {"pattern_pipeline", fast}, {"oracle", brute[k]}});
  }
  return {{"bound", req.bound}, {"points", rows}, {"verdict", ok ? "pass" : "fail"}};
}

namespace detail {

inline void check_expectation(Report& report, const Json& expect, const std::string& key, const Json& actual) {
  if (!expect.contains(key)) return;
  if (expect[key] != actual) report.fail("expected " + key + " = " + expect[key].dump() + ", got " + actual.dump());
}

}  // namespace detail

/// Runs every requested computation. Library errors that indicate invalid
/// requests (e.g. -n in a threshold support) are reported as input errors.
inline Report run_job(const JobSpec& job) {
  Report report;
  Json& body = report.body;
  body["name"] = job.name;
  body["ring"] = ring_json(job.ring);
  try {
    std::optional<PatternModule> final_module;
    if (job.chain) {
      final_module = iterated_chain(*job.chain);
      Json stages = Json::array();
      for (const auto& s : job.chain->stages) stages.push_back({{"ideal", s.ideal.generators()}, {"slot", s.slot}});
      body["chain"] = {{"stages", stages}, {"final_slot", job.chain->final_slot}};
    }
    if (job.dimensions) body["dimensions"] = dimension_table(*final_module, job.window);
    if (job.verify) {
      try {
        const StructureReport s = verify_injective_structure(*final_module, job.window);
        body["structure"] = structure_json(s);
        for (const auto& r : s.reasons) report.fail(r);
        detail::check_expectation(report, job.expect, "multiplicity", s.multiplicity);
        detail::check_expectation(report, job.expect, "socle_degree",
                                  s.socle_degree ? Json(*s.socle_degree) : Json(nullptr));
      } catch (const Error& e) {
        if (e.code() != Errc::NotZeroDimensional) throw;
        body["structure"] = {{"verdict", "fail"}, {"reasons", {e.what()}}};
        report.fail(e.what());
      }
    }
    if (job.lyubeznik) {
      auto table = lyubeznik_table(*job.lyubeznik);
      body["lyubeznik"] = {{"ideal", job.lyubeznik->generators()}, {"table", table}};
      detail::check_expectation(report, job.expect, "lyubeznik", table);
    }
    if (job.threshold) {
      body["threshold"] = threshold_json(*job.threshold, job.ring.n(), job.ring.p());
      detail::check_expectation(report, job.expect, "threshold", body["threshold"]["threshold"]);
    }
    if (job.duality) {
      body["duality"] = duality_roundtrip(job.duality->source, job.duality->target, job.duality->l, &report.failures);
      if (body["duality"]["verdict"] != "pass") report.exit_code = std::max<int>(report.exit_code, kVerificationFailure);
      if (job.expect.contains("vanishing")) {
        const bool vanishes = verify_vanishing(job.duality->source, job.duality->target, job.duality->l);
        body["duality"]["vanishing"] = vanishes;
        detail::check_expectation(report, job.expect, "vanishing", vanishes);
      }
    }
    if (job.oracle) body["oracle"] = oracle_json(*job.chain, *final_module, *job.oracle, &report.failures);
    if (body.contains("oracle") && body["oracle"]["verdict"] != "pass")
      report.exit_code = std::max<int>(report.exit_code, kVerificationFailure);
  } catch (const Error& e) {
    switch (e.code()) {
      case Errc::MinusNInSupport:
      case Errc::InvalidInput:
      case Errc::InvalidRing:
      case Errc::InvalidSlot:
      case Errc::EmptyIdeal:
      case Errc::SizeLimit:
      case Errc::NonCommutingActions:
      case Errc::DegreeIncompatible:
        throw InputError(e.what());
      default:
        report.fail(e.what());
    }
  }
  body["failures"] = report.failures;
  body["status"] = report.exit_code == kPass ? "pass" : "fail";
  return report;
}

struct CorpusSummary {
  Json body;
  int exit_code = kPass;
};

/// Runs every *.json job in `dir` (sorted by name).
inline CorpusSummary run_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw InputError(dir.string() + ": not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  CorpusSummary summary;
  Json jobs = Json::array();
  std::size_t passed = 0, failed = 0, errors = 0;
  for (const auto& f : files) {
    Json row{{"file", f.filename().string()}};
    try {
      Report r = run_job(load_job(f));
      row["status"] = r.exit_code == kPass ? "pass" : "fail";
      row["failures"] = r.failures;
      if (r.exit_code == kPass) {
        ++passed;
      } else {
        ++failed;
        summary.exit_code = std::max<int>(summary.exit_code, kVerificationFailure);
      }
    } catch (const InputError& e) {
      row["status"] = "input-error";
      row["error"] = e.what();
      ++errors;
      summary.exit_code = kInputError;
    }
    jobs.push_back(row);
  }
  summary.body = {{"jobs", jobs}, {"total", files.size()}, {"passed", passed}, {"failed", failed}, {"input_errors", errors}};
  return summary;
}

}  // namespace grf
