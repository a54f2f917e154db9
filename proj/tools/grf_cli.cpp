#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "grf/job.hpp"
#include "grf/sampling.hpp"

namespace {

using grf::Json;

struct Options {
  std::string job_path;
  std::string window;
  std::string format = "json";
  bool oracle = false;
  std::uint64_t seed = 1;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw grf::InputError(path + ": cannot open");
  try {
    Json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw grf::InputError(path + ": malformed JSON: " + e.what());
  }
}

grf::JobSpec load(const Options& opt, std::initializer_list<const char*> outputs) {
  Json j = read_json(opt.job_path);
  if (!j.is_object()) throw grf::InputError("job: expected a JSON object");
  Json list = Json::array();
  for (const char* o : outputs) list.push_back(o);
  if (opt.oracle) list.push_back("oracle");
  j["outputs"] = list;
  grf::JobSpec job = grf::parse_job(j);
  if (!opt.window.empty()) job.window = grf::parse_window(opt.window);
  if (opt.oracle && job.oracle) job.oracle->seed = opt.seed;
  return job;
}

int emit(const grf::Report& r) {
  std::cout << r.body.dump(2) << "\n";
  return r.exit_code;
}

int cmd_lc(const Options& opt) {
  auto job = load(opt, {"dimensions"});
  auto report = grf::run_job(job);
  if (opt.format == "csv") {
    std::cout << grf::dimension_csv(grf::iterated_chain(*job.chain), job.window);
    return report.exit_code;
  }
  return emit(report);
}

int cmd_verify(const Options& opt) {
  auto report = grf::run_job(load(opt, {"verify"}));
  if (opt.format == "csv") {
    const Json& s = report.body["structure"];
    std::cout << "verdict,multiplicity,socle_degree\n"
              << s.value("verdict", std::string("fail")) << "," << s.value("multiplicity", Json(nullptr)).dump() << ","
              << s.value("socle_degree", Json(nullptr)).dump() << "\n";
    return report.exit_code;
  }
  return emit(report);
}

int cmd_lyubeznik(const Options& opt) {
  auto report = grf::run_job(load(opt, {"lyubeznik"}));
  if (opt.format == "csv") {
    const Json& t = report.body["lyubeznik"]["table"];
    std::cout << "i,j,value\n";
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < t[i].size(); ++j) std::cout << i << "," << j << "," << t[i][j] << "\n";
    return report.exit_code;
  }
  return emit(report);
}

int cmd_threshold(const std::vector<long long>& support, int n, std::uint32_t p, const std::string& format) {
  grf::RingSpec ring(n, p);
  Json out = grf::threshold_json({support.begin(), support.end()}, ring.n(), ring.p());
  if (format == "csv")
    std::cout << "threshold\n" << out["threshold"] << "\n";
  else
    std::cout << out.dump(2) << "\n";
  return grf::kPass;
}

struct DualityOptions {
  int n = 1;
  std::uint32_t p = 2;
  int l = 1;
  std::vector<std::string> modules;
  std::size_t sweep = 0;
  std::size_t max_dim = 3;
};

int cmd_duality(const DualityOptions& d, const Options& opt) {
  grf::RingSpec ring(d.n, d.p);
  Json out;
  int code = grf::kPass;
  if (!d.modules.empty()) {
    if (d.modules.size() != 2) throw grf::InputError("duality: expected SOURCE and TARGET module files");
    auto source = grf::parse_module(read_json(d.modules[0]), ring, "source");
    auto target = grf::parse_module(read_json(d.modules[1]), ring, "target");
    std::vector<std::string> failures;
    out = grf::duality_roundtrip(source, target, d.l, &failures);
    if (!failures.empty()) code = grf::kVerificationFailure;
  } else {
    std::mt19937_64 rng(opt.seed);
    std::size_t passed = 0;
    Json cases = Json::array();
    for (std::size_t k = 0; k < d.sweep; ++k) {
      auto source = grf::random_module(ring, rng, d.max_dim, -3, 3);
      auto target = grf::random_module(ring, rng, d.max_dim, -3, 3);
      std::vector<std::string> failures;
      auto r = grf::duality_roundtrip(source, target, d.l, &failures);
      if (failures.empty()) ++passed;
      else code = grf::kVerificationFailure;
      cases.push_back({{"case", k}, {"verdict", r["verdict"]}, {"shift_classes", r["shift_classes"].size()}});
    }
    out = {{"seed", opt.seed}, {"cases", cases}, {"passed", passed}, {"total", d.sweep}};
  }
  if (opt.format == "csv")
    std::cout << "verdict\n" << (code == grf::kPass ? "pass" : "fail") << "\n";
  else
    std::cout << out.dump(2) << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local cohomology of monomial ideals and Frobenius duality over F_p"};
  app.require_subcommand(1);
  Options opt;
  auto add_common = [&](CLI::App* sub, bool job) {
    if (job) sub->add_option("job", opt.job_path, "job file (JSON)")->required();
    sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", opt.seed, "random seed");
  };

  auto* lc = app.add_subcommand("lc", "iterated local cohomology dimensions");
  add_common(lc, true);
  lc->add_option("--window", opt.window, "degree window LO:HI");
  lc->add_flag("--oracle", opt.oracle, "cross-check with the brute-force oracle");

  auto* verify = app.add_subcommand("verify", "check the injective-hull structure of the final module");
  add_common(verify, true);
  verify->add_option("--window", opt.window, "degree window LO:HI");
  verify->add_flag("--oracle", opt.oracle, "cross-check with the brute-force oracle");

  auto* lyubeznik = app.add_subcommand("lyubeznik", "table of injective multiplicities");
  add_common(lyubeznik, true);

  std::vector<long long> support;
  int tn = 1;
  std::uint32_t tp = 2;
  auto* threshold = app.add_subcommand("threshold", "Frobenius vanishing threshold of a degree support");
  add_common(threshold, false);
  threshold->add_option("support", support, "degrees in the support");
  threshold->add_option("--n", tn, "number of variables")->required();
  threshold->add_option("--p", tp, "characteristic")->required();

  DualityOptions dopt;
  auto* duality = app.add_subcommand("duality", "Frobenius duality round trip");
  add_common(duality, false);
  duality->add_option("modules", dopt.modules, "SOURCE TARGET module files");
  duality->add_option("--n", dopt.n, "number of variables");
  duality->add_option("--p", dopt.p, "characteristic");
  duality->add_option("--l", dopt.l, "Frobenius power")->check(CLI::PositiveNumber);
  duality->add_option("--sweep", dopt.sweep, "number of random pairs when no files are given");
  duality->add_option("--max-dim", dopt.max_dim, "largest random module dimension");

  auto* run = app.add_subcommand("run", "run a job with the outputs it lists");
  add_common(run, true);

  std::string corpus_dir;
  auto* corpus = app.add_subcommand("corpus", "run every job in a directory");
  corpus->add_option("dir", corpus_dir, "directory of job files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), grf::kInputError);
  }

  try {
    if (*lc) return cmd_lc(opt);
    if (*verify) return cmd_verify(opt);
    if (*lyubeznik) return cmd_lyubeznik(opt);
    if (*threshold) return cmd_threshold(support, tn, tp, opt.format);
    if (*duality) return cmd_duality(dopt, opt);
    if (*run) {
      auto job = grf::load_job(opt.job_path);
      return emit(grf::run_job(job));
    }
    if (*corpus) {
      auto summary = grf::run_corpus(corpus_dir);
      std::cout << summary.body.dump(2) << "\n";
      return summary.exit_code;
    }
  } catch (const grf::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return grf::kInputError;
  } catch (const grf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return grf::kInputError;
  }
  return grf::kInputError;
}
