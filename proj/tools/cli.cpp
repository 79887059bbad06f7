#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "regdecomp/io.hpp"
#include "regdecomp/orbit.hpp"
#include "regdecomp/regularity.hpp"
#include "regdecomp/seminorm.hpp"
#include "regdecomp/tensor.hpp"
#include "regdecomp/truncation.hpp"
#include "regdecomp/version.hpp"

namespace regdecomp::cli {

namespace {

using nlohmann::json;

// Lemma tag constants carried verbatim in every report for traceability.
const char* lemma_tag(const std::string& op) {
  if (op == "norm") return "sec-2";
  if (op == "opnorm") return "sec-1.2";
  if (op == "cutnorm") return "sec-3";
  if (op == "rnorm") return "eq-3";
  if (op == "decompose") return "lemma-3.3";
  if (op == "pipeline") return "lemma-3.4";
  if (op == "strong") return "lemma-3.6";
  if (op == "truncate") return "lemma-4.2";
  if (op == "rank1split") return "lemma-4.3";
  if (op == "sparsify") return "lemma-5.2";
  if (op == "kbound") return "lemma-5.2";
  if (op == "orbitdist") return "sec-3";
  if (op == "cover") return "thm-3.1";
  if (op == "interp") return "eq-4";
  if (op == "rtcheck") return "cor-4.4";
  return "unknown";
}

Exponent parse_exponent(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "inf" || t == "infinity") return Exponent::infinity();
  double v = 0.0;
  std::size_t used = 0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw precondition_error("cannot parse exponent '" + text + "'");
  }
  if (used != t.size()) {
    throw precondition_error("cannot parse exponent '" + text + "'");
  }
  return Exponent(v);
}

json exponent_json(const Exponent& p) {
  return p.is_infinite() ? json("inf") : json(p.value());
}

struct Options {
  std::string input;
  std::string input_b;
  std::vector<std::string> inputs;
  std::string p = "2";
  std::string q;
  std::string p_prime;
  std::string s;
  double theta = 0.5;
  double epsilon = 0.5;
  int k = 16;
  std::string family = "cut";
  std::string h_form = "constant";
  std::string mode = "heuristic";
  int restarts = 32;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
};

Mode make_mode(const Options& o) {
  return o.mode == "exact" ? Mode::Exact() : Mode::Heuristic(o.restarts, o.seed);
}

SeminormFamily make_family(const Options& o, int order, int resolution) {
  if (o.family == "cut") return SeminormFamily::cut(resolution);
  if (o.family == "sign") return SeminormFamily::sign(order, resolution);
  if (o.family == "rectangle") {
    return SeminormFamily::rectangle(order, resolution);
  }
  if (o.q.empty()) {
    throw precondition_error("the hoelder family needs --q");
  }
  return SeminormFamily::hoelder(parse_exponent(o.q), order, resolution);
}

json mode_config(const Options& o) {
  json c;
  c["mode"] = o.mode;
  c["restarts"] = o.restarts;
  c["seed"] = o.seed;
  return c;
}

json term_json(const GreedyTerm& term) {
  json t;
  t["coefficient"] = term.coefficient;
  t["witness"] = tensor_to_json(term.witness);
  return t;
}

std::vector<std::vector<double>> load_factors(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw io_error("JSON parse failure in '" + path + "': " + e.what());
  }
  if (j.is_object() && j.contains("factors")) j = j["factors"];
  if (!j.is_array() || j.empty()) {
    throw io_error("'" + path + "' must hold a nonempty array of factors");
  }
  std::vector<std::vector<double>> factors;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) {
      throw io_error("every factor must be a nonempty numeric array");
    }
    std::vector<double> f;
    for (const auto& v : row) {
      if (!v.is_number()) {
        throw io_error("every factor entry must be a number");
      }
      f.push_back(v.get<double>());
    }
    factors.push_back(std::move(f));
  }
  return factors;
}

void flatten_csv(const std::string& prefix, const json& value,
                 std::string& body) {
  if (value.is_object()) {
    for (const auto& [key, sub] : value.items()) {
      flatten_csv(prefix.empty() ? key : prefix + "." + key, sub, body);
    }
  } else if (value.is_primitive()) {
    body += prefix + "," + value.dump() + "\n";
  }
}

void emit(const json& report, const Options& o, std::ostream& out) {
  std::string text;
  if (o.format == "csv") {
    text = "key,value\n";
    flatten_csv("", report, text);
  } else {
    text = report.dump(2) + "\n";
  }
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw io_error("cannot open '" + o.output + "' for writing");
  f << text;
  if (!f) throw io_error("write failure on '" + o.output + "'");
}

struct ReportBuilder {
  std::string operation;
  json config = json::object();
  json outputs = json::object();
  std::chrono::steady_clock::time_point started =
      std::chrono::steady_clock::now();

  json finish(const Options& o) const {
    json r;
    r["operation"] = operation;
    r["lemma"] = lemma_tag(operation);
    r["version"] = std::string(kVersion);
    r["config"] = config;
    r["outputs"] = outputs;
    r["seed"] = o.seed;
    const auto elapsed = std::chrono::steady_clock::now() - started;
    r["duration_ms"] =
        std::chrono::duration<double, std::milli>(elapsed).count();
    return r;
  }
};

void run_norm(const Options& o, std::ostream& out) {
  ReportBuilder rb{"norm"};
  const StepTensor t = ingest(o.input);
  const Exponent p = parse_exponent(o.p);
  rb.config["input"] = o.input;
  rb.config["p"] = exponent_json(p);
  rb.outputs["value"] = lp_norm(t, p);
  emit(rb.finish(o), o, out);
}

void run_opnorm(const Options& o, std::ostream& out) {
  ReportBuilder rb{"opnorm"};
  const StepTensor t = ingest(o.input);
  const Exponent p = parse_exponent(o.p);
  if (o.q.empty()) throw precondition_error("opnorm needs --q");
  const Exponent q = parse_exponent(o.q);
  const Mode mode = make_mode(o);
  rb.config["input"] = o.input;
  rb.config["p"] = exponent_json(p);
  rb.config["q"] = exponent_json(q);
  rb.config.update(mode_config(o));
  rb.outputs["value"] = operator_norm(t, p, q, mode);
  rb.outputs["exact"] = mode.exact;
  emit(rb.finish(o), o, out);
}

void run_family_norm(const Options& o, std::ostream& out,
                     const std::string& operation) {
  ReportBuilder rb{operation};
  const StepTensor t = ingest(o.input);
  Options local = o;
  if (operation == "cutnorm") local.family = "cut";
  const SeminormFamily family = make_family(local, t.order(), t.resolution());
  const Mode mode = make_mode(o);
  rb.config["input"] = o.input;
  rb.config["family"] = family.name();
  rb.config.update(mode_config(o));
  const OracleResult r = best_response(family, t, mode);
  rb.outputs["value"] = r.value;
  rb.outputs["exact"] = r.exact;
  rb.outputs["witness"] = tensor_to_json(r.witness);
  emit(rb.finish(o), o, out);
}

void run_decompose(const Options& o, std::ostream& out) {
  ReportBuilder rb{"decompose"};
  const StepTensor t = ingest(o.input);
  const SeminormFamily family = make_family(o, t.order(), t.resolution());
  const Mode mode = make_mode(o);
  rb.config["input"] = o.input;
  rb.config["family"] = family.name();
  rb.config["k"] = o.k;
  rb.config.update(mode_config(o));
  const GreedyDecomposition dec = greedy_decompose(t, family, o.k, mode);
  rb.outputs["certified"] = dec.certified;
  rb.outputs["k_requested"] = dec.k_requested;
  rb.outputs["term_count"] = dec.terms.size();
  rb.outputs["residual_r_bound"] = dec.residual_r_bound;
  rb.outputs["residual_l2"] = lp_norm(dec.residual, 2.0);
  json terms = json::array();
  for (const auto& term : dec.terms) terms.push_back(term_json(term));
  rb.outputs["terms"] = std::move(terms);
  emit(rb.finish(o), o, out);
}

void run_pipeline(const Options& o, std::ostream& out) {
  ReportBuilder rb{"pipeline"};
  const StepTensor t = ingest(o.input);
  const Exponent p = parse_exponent(o.p);
  const SeminormFamily family = make_family(o, t.order(), t.resolution());
  const Mode mode = make_mode(o);
  rb.config["input"] = o.input;
  rb.config["p"] = exponent_json(p);
  rb.config["epsilon"] = o.epsilon;
  rb.config["family"] = family.name();
  rb.config.update(mode_config(o));
  const PipelineApprox approx =
      weak_banach_approx(t, p, family, o.epsilon, mode);
  rb.outputs["scale_c"] = approx.scale_c;
  rb.outputs["error_bound"] = approx.error_bound;
  rb.outputs["measured_error"] = approx.measured_error;
  rb.outputs["certified"] = approx.certified;
  rb.outputs["term_count"] = approx.terms.size();
  json coeffs = json::array();
  for (const auto& term : approx.terms) coeffs.push_back(term.coefficient);
  rb.outputs["coefficients"] = std::move(coeffs);
  emit(rb.finish(o), o, out);
}

void run_strong(const Options& o, std::ostream& out) {
  ReportBuilder rb{"strong"};
  const StepTensor t = ingest(o.input);
  const SeminormFamily family = make_family(o, t.order(), t.resolution());
  const Mode mode = make_mode(o);
  rb.config["input"] = o.input;
  rb.config["family"] = family.name();
  rb.config["epsilon"] = o.epsilon;
  rb.config["h_form"] = o.h_form;
  rb.config.update(mode_config(o));
  std::function<double(double, int)> h;
  if (o.h_form == "constant") {
    h = [](double eps, int) { return eps; };
  } else {
    h = [](double eps, int m) { return eps / (m + 1.0); };
  }
  const StrongDecomposition dec =
      strong_decompose(t, family, o.epsilon, h, mode);
  rb.outputs["parts"] = dec.parts;
  rb.outputs["rounds"] = dec.rounds;
  rb.outputs["r_gap"] = dec.r_gap;
  rb.outputs["l2_gap"] = dec.l2_gap;
  rb.outputs["certified"] = dec.certified;
  rb.outputs["w_prime"] = tensor_to_json(dec.w_prime);
  rb.outputs["y"] = tensor_to_json(dec.y);
  emit(rb.finish(o), o, out);
}

void run_truncate(const Options& o, std::ostream& out) {
  ReportBuilder rb{"truncate"};
  const StepTensor t = ingest(o.input);
  const Exponent p = parse_exponent(o.p);
  if (o.p_prime.empty()) throw precondition_error("truncate needs --p-prime");
  const Exponent p_prime = parse_exponent(o.p_prime);
  rb.config["input"] = o.input;
  rb.config["p"] = exponent_json(p);
  rb.config["p_prime"] = exponent_json(p_prime);
  rb.config["epsilon"] = o.epsilon;
  const TruncationSplit split = threshold_split(t, p, p_prime, o.epsilon);
  rb.outputs["threshold_k"] = split.threshold_k;
  rb.outputs["tail_norm_bound"] = split.tail_norm_bound;
  rb.outputs["tail_norm_measured"] = lp_norm(split.tail, p_prime);
  rb.outputs["bounded"] = tensor_to_json(split.bounded);
  rb.outputs["tail"] = tensor_to_json(split.tail);
  emit(rb.finish(o), o, out);
}

void run_rank1split(const Options& o, std::ostream& out) {
  ReportBuilder rb{"rank1split"};
  const auto factors = load_factors(o.input);
  const Exponent p = parse_exponent(o.p);
  if (o.s.empty()) throw precondition_error("rank1split needs --s");
  const Exponent s = parse_exponent(o.s);
  rb.config["input"] = o.input;
  rb.config["p"] = exponent_json(p);
  rb.config["s"] = exponent_json(s);
  rb.config["epsilon"] = o.epsilon;
  const RankOneSplit split = rank1_split(factors, p, s, o.epsilon);
  rb.outputs["bound_constant"] = split.bound_constant;
  rb.outputs["term_count"] = split.terms.size();
  json terms = json::array();
  for (const auto& term : split.terms) {
    json t;
    t["tag"] = term.tag == RankOneTag::kBounded ? "bounded" : "small";
    t["certificate"] = term.certificate;
    t["factors"] = term.factors;
    terms.push_back(std::move(t));
  }
  rb.outputs["terms"] = std::move(terms);
  emit(rb.finish(o), o, out);
}

void run_sparsify(const Options& o, std::ostream& out) {
  ReportBuilder rb{"sparsify"};
  const StepTensor t = ingest(o.input);
  const Exponent p = parse_exponent(o.p);
  if (o.q.empty()) throw precondition_error("sparsify needs --q");
  const Exponent q = parse_exponent(o.q);
  rb.config["input"] = o.input;
  rb.config["p"] = exponent_json(p);
  rb.config["q"] = exponent_json(q);
  rb.config["epsilon"] = o.epsilon;
  const SparsifyResult r = top_k_sparsify(t, p, q, o.epsilon);
  rb.outputs["support"] = r.support;
  rb.outputs["k_bound_used"] = r.k_bound_used;
  rb.outputs["achieved_error"] = r.achieved_error;
  emit(rb.finish(o), o, out);
}

void run_kbound(const Options& o, std::ostream& out) {
  ReportBuilder rb{"kbound"};
  const Exponent p = parse_exponent(o.p);
  if (o.q.empty()) throw precondition_error("kbound needs --q");
  const Exponent q = parse_exponent(o.q);
  rb.config["p"] = exponent_json(p);
  rb.config["q"] = exponent_json(q);
  rb.config["epsilon"] = o.epsilon;
  rb.outputs["k"] = k_bound(p, q, o.epsilon);
  emit(rb.finish(o), o, out);
}

void run_orbitdist(const Options& o, std::ostream& out) {
  ReportBuilder rb{"orbitdist"};
  if (o.input_b.empty()) throw precondition_error("orbitdist needs --input-b");
  const StepTensor a = ingest(o.input);
  const StepTensor b = ingest(o.input_b);
  const SeminormFamily family = make_family(o, a.order(), a.resolution());
  const Mode mode = make_mode(o);
  rb.config["input"] = o.input;
  rb.config["input_b"] = o.input_b;
  rb.config["family"] = family.name();
  rb.config.update(mode_config(o));
  const OrbitDistanceResult r = orbit_distance(a, b, family, mode);
  rb.outputs["distance"] = r.distance;
  rb.outputs["exact"] = r.exact;
  rb.outputs["aligner"] = r.aligner.perm;
  emit(rb.finish(o), o, out);
}

void run_cover(const Options& o, std::ostream& out) {
  ReportBuilder rb{"cover"};
  if (o.inputs.empty()) throw precondition_error("cover needs --input");
  std::vector<StepTensor> samples;
  samples.reserve(o.inputs.size());
  for (const auto& path : o.inputs) samples.push_back(ingest(path));
  const SeminormFamily family =
      make_family(o, samples.front().order(), samples.front().resolution());
  const Mode mode = make_mode(o);
  rb.config["inputs"] = o.inputs;
  rb.config["family"] = family.name();
  rb.config["epsilon"] = o.epsilon;
  rb.config.update(mode_config(o));
  const CoverResult r = greedy_cover(samples, family, o.epsilon, mode);
  rb.outputs["net"] = r.net;
  rb.outputs["assignment"] = r.assignment;
  rb.outputs["distances"] = r.distances;
  rb.outputs["exact"] = r.exact;
  emit(rb.finish(o), o, out);
}

void run_interp(const Options& o, std::ostream& out) {
  ReportBuilder rb{"interp"};
  const Exponent p = parse_exponent(o.p);
  if (o.q.empty()) throw precondition_error("interp needs --q");
  const Exponent q = parse_exponent(o.q);
  rb.config["p"] = exponent_json(p);
  rb.config["q"] = exponent_json(q);
  rb.config["theta"] = o.theta;
  const InterpolatedExponents e = interp_exponents(p, q, o.theta);
  rb.outputs["p_theta"] = exponent_json(e.p_theta);
  rb.outputs["q_theta"] = exponent_json(e.q_theta);
  emit(rb.finish(o), o, out);
}

void run_rtcheck(const Options& o, std::ostream& out) {
  ReportBuilder rb{"rtcheck"};
  const StepTensor t = ingest(o.input);
  const Exponent p = parse_exponent(o.p);
  if (o.q.empty()) throw precondition_error("rtcheck needs --q");
  const Exponent q = parse_exponent(o.q);
  const Mode mode = make_mode(o);
  rb.config["input"] = o.input;
  rb.config["p"] = exponent_json(p);
  rb.config["q"] = exponent_json(q);
  rb.config["theta"] = o.theta;
  rb.config.update(mode_config(o));
  const RieszThorinReport r = riesz_thorin_check(t, p, q, o.theta, mode);
  rb.outputs["p_theta"] = exponent_json(r.p_theta);
  rb.outputs["q_theta"] = exponent_json(r.q_theta);
  rb.outputs["interpolated_norm"] = r.interpolated_norm;
  rb.outputs["endpoint_norm"] = r.endpoint_norm;
  rb.outputs["endpoint_power"] = r.endpoint_power;
  rb.outputs["anomaly"] = r.anomaly;
  emit(rb.finish(o), o, out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Greedy regularity decompositions, truncation splits, and "
               "orbit distances for step tensors"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output", o.output, "Report path (default stdout)");
  };
  const auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "Oracle mode")
        ->check(CLI::IsMember({"exact", "heuristic"}));
    sub->add_option("--restarts", o.restarts, "Heuristic restarts")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", o.seed, "Heuristic seed");
  };
  const auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", o.family, "Seminorm family")
        ->check(CLI::IsMember({"cut", "sign", "rectangle", "hoelder"}));
  };

  CLI::App* norm = app.add_subcommand("norm", "lp norm of a tensor");
  norm->add_option("--input", o.input)->required();
  norm->add_option("--p", o.p);
  add_common(norm);

  CLI::App* opnorm = app.add_subcommand("opnorm", "operator norm p -> q");
  opnorm->add_option("--input", o.input)->required();
  opnorm->add_option("--p", o.p);
  opnorm->add_option("--q", o.q)->required();
  add_mode(opnorm);
  add_common(opnorm);

  CLI::App* cutnorm = app.add_subcommand("cutnorm", "cut norm of a matrix");
  cutnorm->add_option("--input", o.input)->required();
  add_mode(cutnorm);
  add_common(cutnorm);

  CLI::App* rnorm = app.add_subcommand("rnorm", "R-seminorm for a family");
  rnorm->add_option("--input", o.input)->required();
  add_family(rnorm);
  rnorm->add_option("--q", o.q, "Hoelder family exponent");
  add_mode(rnorm);
  add_common(rnorm);

  CLI::App* decompose =
      app.add_subcommand("decompose", "greedy weak-regularity decomposition");
  decompose->add_option("--input", o.input)->required();
  add_family(decompose);
  decompose->add_option("--q", o.q, "Hoelder family exponent");
  decompose->add_option("--k", o.k, "Term budget")->check(CLI::PositiveNumber);
  add_mode(decompose);
  add_common(decompose);

  CLI::App* pipeline =
      app.add_subcommand("pipeline", "two-stage small-error approximation");
  pipeline->add_option("--input", o.input)->required();
  pipeline->add_option("--p", o.p);
  pipeline->add_option("--epsilon", o.epsilon)->check(CLI::PositiveNumber);
  add_family(pipeline);
  pipeline->add_option("--q", o.q, "Hoelder family exponent");
  add_mode(pipeline);
  add_common(pipeline);

  CLI::App* strong =
      app.add_subcommand("strong", "strong decomposition with gap h");
  strong->add_option("--input", o.input)->required();
  strong->add_option("--epsilon", o.epsilon)->check(CLI::PositiveNumber);
  add_family(strong);
  strong->add_option("--q", o.q, "Hoelder family exponent");
  strong->add_option("--h-form", o.h_form, "Gap schedule")
      ->check(CLI::IsMember({"constant", "inverse-linear"}));
  add_mode(strong);
  add_common(strong);

  CLI::App* truncate =
      app.add_subcommand("truncate", "threshold split bounded + tail");
  truncate->add_option("--input", o.input)->required();
  truncate->add_option("--p", o.p);
  truncate->add_option("--p-prime", o.p_prime)->required();
  truncate->add_option("--epsilon", o.epsilon)->check(CLI::PositiveNumber);
  add_common(truncate);

  CLI::App* rank1split =
      app.add_subcommand("rank1split", "tagged split of an outer product");
  rank1split->add_option("--input", o.input, "JSON factor list")->required();
  rank1split->add_option("--p", o.p);
  rank1split->add_option("--s", o.s)->required();
  rank1split->add_option("--epsilon", o.epsilon)->check(CLI::PositiveNumber);
  add_common(rank1split);

  CLI::App* sparsify = app.add_subcommand("sparsify", "top-k truncation");
  sparsify->add_option("--input", o.input)->required();
  sparsify->add_option("--p", o.p);
  sparsify->add_option("--q", o.q)->required();
  sparsify->add_option("--epsilon", o.epsilon)->check(CLI::PositiveNumber);
  add_common(sparsify);

  CLI::App* kbound = app.add_subcommand("kbound", "sufficient support size");
  kbound->add_option("--p", o.p);
  kbound->add_option("--q", o.q)->required();
  kbound->add_option("--epsilon", o.epsilon)->check(CLI::PositiveNumber);
  add_common(kbound);

  CLI::App* orbitdist =
      app.add_subcommand("orbitdist", "orbit distance under relabelings");
  orbitdist->add_option("--input", o.input)->required();
  orbitdist->add_option("--input-b", o.input_b)->required();
  add_family(orbitdist);
  orbitdist->add_option("--q", o.q, "Hoelder family exponent");
  add_mode(orbitdist);
  add_common(orbitdist);

  CLI::App* cover = app.add_subcommand("cover", "greedy epsilon-net");
  cover->add_option("--input", o.inputs, "Sample paths (repeatable)")
      ->required();
  add_family(cover);
  cover->add_option("--q", o.q, "Hoelder family exponent");
  cover->add_option("--epsilon", o.epsilon)->check(CLI::PositiveNumber);
  add_mode(cover);
  add_common(cover);

  CLI::App* interp = app.add_subcommand("interp", "interpolation exponents");
  interp->add_option("--p", o.p);
  interp->add_option("--q", o.q)->required();
  interp->add_option("--theta", o.theta);
  add_common(interp);

  CLI::App* rtcheck =
      app.add_subcommand("rtcheck", "interpolation inequality scan");
  rtcheck->add_option("--input", o.input)->required();
  rtcheck->add_option("--p", o.p);
  rtcheck->add_option("--q", o.q)->required();
  rtcheck->add_option("--theta", o.theta);
  add_mode(rtcheck);
  add_common(rtcheck);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*norm) run_norm(o, out);
    if (*opnorm) run_opnorm(o, out);
    if (*cutnorm) run_family_norm(o, out, "cutnorm");
    if (*rnorm) run_family_norm(o, out, "rnorm");
    if (*decompose) run_decompose(o, out);
    if (*pipeline) run_pipeline(o, out);
    if (*strong) run_strong(o, out);
    if (*truncate) run_truncate(o, out);
    if (*rank1split) run_rank1split(o, out);
    if (*sparsify) run_sparsify(o, out);
    if (*kbound) run_kbound(o, out);
    if (*orbitdist) run_orbitdist(o, out);
    if (*cover) run_cover(o, out);
    if (*interp) run_interp(o, out);
    if (*rtcheck) run_rtcheck(o, out);
    return 0;
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const budget_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const io_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace regdecomp::cli
