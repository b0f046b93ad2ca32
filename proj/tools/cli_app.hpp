#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tracegen.hpp"

namespace tracegen::cli {

/// Seed used when --seed is not given, so bare invocations are reproducible.
inline constexpr std::uint64_t kDefaultSeed = 24301;

using nlohmann::json;

inline double round12(double v) { return std::round(v * 1e12) / 1e12; }

inline json letters_json(const IndependenceModel& model, LetterSet s) {
  json out = json::array();
  for (Letter a : s) out.push_back(model.name(a));
  return out;
}

/// "bcd" or "b,c,d" or "b c d".
inline LetterSet parse_subset(const IndependenceModel& model, const std::string& text) {
  LetterSet s;
  for (Letter a : parse_word(model, text)) s.insert(a);
  return s;
}

inline Letter resolve_letter(const IndependenceModel& model, const std::string& name) {
  if (name.empty()) return 0;
  return model.index_of(name);
}

// Bracket text of one trace; the unit prints as "1".
inline std::string brackets_or_unit(const IndependenceModel& model, const Trace& x) {
  return x.empty() ? std::string("1") : to_brackets(model, x);
}

struct AnalyzeArgs {
  std::string model;
  std::vector<std::string> subsets;
};

inline int run_analyze(const AnalyzeArgs& args, std::ostream& out) {
  auto model = load_model(args.model);
  if (model.empty()) throw Error(Errc::empty_alphabet, "model has no letters");
  auto mu = mobius_polynomial(model, model.alphabet());
  json doc;
  doc["letters"] = model.names();
  doc["cliques"] = cliques(model, model.alphabet()).size();
  doc["mobius"] = mu.coefficients();
  doc["p_sigma"] = round12(smallest_root(mu));
  doc["irreducible"] = is_irreducible(model);
  json subs = json::array();
  for (const auto& text : args.subsets) {
    LetterSet s = parse_subset(model, text);
    auto m = mobius_polynomial(model, s);
    json entry{{"subset", letters_json(model, s)}, {"mobius", m.coefficients()}};
    entry["root"] = s.empty() ? json(nullptr) : json(round12(smallest_root(m)));
    subs.push_back(std::move(entry));
  }
  if (!args.subsets.empty()) doc["subsets"] = std::move(subs);
  out << doc.dump() << '\n';
  return 0;
}

struct SampleArgs {
  std::string model;
  double p = 0.0;
  std::size_t n = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string pivot = "lowindex";
  std::string format = "brackets";
};

inline int run_sample(const SampleArgs& args, std::ostream& out) {
  auto model = load_model(args.model);
  SamplerParams params;
  params.p = args.p;
  params.pivot = args.pivot == "maxdeg" ? PivotStrategy::max_degree : PivotStrategy::lowest_index;
  params.seed = args.seed;
  FiniteSampler sampler(model, params);
  json header{{"seed", args.seed}, {"p", args.p}, {"n", args.n}, {"pivot", args.pivot}, {"p_sigma", round12(sampler.root())}};
  out << header.dump() << '\n';
  RandomStream root(args.seed);
  for (std::size_t i = 0; i < args.n; ++i) {
    RandomStream stream = root.split(i);
    Trace x = sampler.sample(stream);
    if (args.format == "json") {
      out << trace_to_json(model, x).dump() << '\n';
    } else {
      out << brackets_or_unit(model, x) << '\n';
    }
  }
  return 0;
}

struct StreamArgs {
  std::string model;
  std::string pivot_letter;
  std::size_t blocks = 10;
  std::size_t min_length = 0;
  std::uint64_t seed = kDefaultSeed;
  std::size_t workers = 1;
  std::string emit = "each-block";
  bool allow_trivial = false;
  bool full = false;
};

inline int run_stream(const StreamArgs& args, std::ostream& out) {
  auto model = load_model(args.model);
  if (model.empty()) throw Error(Errc::empty_alphabet, "model has no letters");
  if (args.workers == 0) throw Error(Errc::invalid_argument, "--workers must be at least 1");
  Letter a1 = resolve_letter(model, args.pivot_letter);
  StreamOptions options;
  options.allow_trivial = args.allow_trivial;
  BlockStream stream(model, a1, args.seed, options);
  json header{{"seed", args.seed}, {"pivot", model.name(a1)}, {"p_star", round12(stream.p_star())}};
  out << header.dump() << '\n';

  const bool by_length = args.min_length > 0;
  const bool endless = !by_length && args.blocks == 0;
  // batching keeps the output independent of the worker count
  const std::size_t batch = args.workers > 1 ? 256 * args.workers : 64;
  TraceBuilder xi(stream.model());
  std::size_t k = 0;
  auto finished = [&] {
    if (by_length) return xi.length() >= args.min_length;
    return !endless && k >= args.blocks;
  };
  while (!finished()) {
    std::size_t count = batch;
    if (!by_length && !endless) count = std::min(batch, args.blocks - k);
    auto blocks = parallel_blocks(stream, k, count, args.workers);
    for (const auto& b : blocks) {
      xi.append(b);
      ++k;
      if (args.emit == "each-block") {
        json rec{{"k", k}, {"block", trace_to_json(model, b)}, {"length", xi.length()}};
        if (args.full) rec["xi"] = trace_to_json(model, xi.current());
        out << rec.dump() << '\n';
      }
      if (finished()) break;
    }
    if (endless) out.flush();
  }
  if (args.emit == "final") {
    json rec{{"k", k}, {"length", xi.length()}, {"xi", trace_to_json(model, xi.current())}};
    out << rec.dump() << '\n';
  }
  return 0;
}

struct VerifyArgs {
  std::string model;
  std::string suite = "all";
  std::uint64_t seed = kDefaultSeed;
  std::string report;
  double p = 0.0;
  std::string pivot_letter;
  std::size_t samples = 200'000;
};

inline int run_verify(const VerifyArgs& args, std::ostream& out) {
  auto model = load_model(args.model);
  Suite suite = Suite::all;
  if (args.suite == "mobius") suite = Suite::mobius;
  if (args.suite == "finite") suite = Suite::finite;
  if (args.suite == "boundary") suite = Suite::boundary;
  SuiteOptions options;
  options.seed = args.seed;
  options.p = args.p;
  options.pivot = resolve_letter(model, args.pivot_letter);
  options.samples = args.samples;
  auto reports = run_suite(model, suite, options);
  json doc = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    doc.push_back(report_to_json(r));
    ok = ok && r.pass;
    out << (r.pass ? "PASS " : "FAIL ") << r.name << "  statistic " << r.statistic
        << (r.direction == TestReport::Direction::at_most ? " <= " : " >= ") << r.threshold << "  (" << r.note
        << ")\n";
  }
  if (!args.report.empty()) {
    std::ofstream file(args.report);
    if (!file) throw Error(Errc::parse_error, "cannot write report '" + args.report + "'");
    file << doc.dump(2) << '\n';
  }
  out << (ok ? "all checks passed" : "some checks failed") << " (" << reports.size() << " reports, seed " << args.seed
      << ")\n";
  return ok ? 0 : 1;
}

/// Parses argv and dispatches; returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Uniform random generation of finite and infinite traces"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* an = app.add_subcommand("analyze", "Mobius polynomial, root and irreducibility of a model");
  an->add_option("--model", analyze.model, "model JSON file")->required();
  an->add_option("--subset", analyze.subsets, "extra subalphabet to report, e.g. bcd");

  SampleArgs sample;
  auto* sa = app.add_subcommand("sample", "Finite traces under the multiplicative law");
  sa->add_option("--model", sample.model, "model JSON file")->required();
  sa->add_option("--p", sample.p, "parameter in (0, p_Sigma)")->required();
  sa->add_option("--n", sample.n, "number of traces");
  sa->add_option("--seed", sample.seed, "RNG seed");
  sa->add_option("--pivot", sample.pivot, "pivot rule")->check(CLI::IsMember({"lowindex", "maxdeg"}));
  sa->add_option("--format", sample.format, "output format")->check(CLI::IsMember({"brackets", "json"}));

  StreamArgs stream;
  auto* st = app.add_subcommand("stream", "Growing prefixes of a uniform infinite trace (JSONL)");
  st->add_option("--model", stream.model, "model JSON file")->required();
  st->add_option("--pivot-letter", stream.pivot_letter, "letter a1 topping each block (default: first letter)");
  auto* blocks = st->add_option("--blocks", stream.blocks, "number of blocks; 0 runs until interrupted");
  auto* min_len = st->add_option("--min-length", stream.min_length, "stop once |xi| reaches this length");
  blocks->excludes(min_len);
  st->add_option("--seed", stream.seed, "RNG seed");
  st->add_option("--workers", stream.workers, "threads producing blocks");
  st->add_option("--emit", stream.emit, "records to write")->check(CLI::IsMember({"each-block", "final"}));
  st->add_flag("--allow-trivial", stream.allow_trivial, "accept a one-letter alphabet");
  st->add_flag("--full", stream.full, "include the whole prefix in each record");

  VerifyArgs verify;
  auto* ve = app.add_subcommand("verify", "Run the verification battery");
  ve->add_option("--model", verify.model, "model JSON file")->required();
  ve->add_option("--suite", verify.suite, "battery")->check(CLI::IsMember({"mobius", "finite", "boundary", "all"}));
  ve->add_option("--seed", verify.seed, "RNG seed");
  ve->add_option("--report", verify.report, "write the JSON report here");
  ve->add_option("--p", verify.p, "working p for the finite suite (default 0.6 p_Sigma)");
  ve->add_option("--pivot-letter", verify.pivot_letter, "letter used for decomposition and stream checks");
  ve->add_option("--samples", verify.samples, "sample size of the finite suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  try {
    if (*an) return run_analyze(analyze, out);
    if (*sa) return run_sample(sample, out);
    if (*st) return run_stream(stream, out);
    if (*ve) return run_verify(verify, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace tracegen::cli
