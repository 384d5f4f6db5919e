#pragma once

// The `corefree` command line. Exit codes: 0 success, 1 verification
// failure, 2 usage or parse error, 3 violated precondition (e.g. FiniteIndex),
// 4 resource cap (WordBlowup). Errors are reported on stderr as
// {"error": <name>, "message": <text>}.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "corefree/error.hpp"
#include "corefree/nielsen.hpp"
#include "corefree/quasimorphism.hpp"
#include "corefree/random.hpp"
#include "corefree/relative.hpp"
#include "corefree/serialize.hpp"
#include "corefree/stallings.hpp"
#include "corefree/text.hpp"
#include "corefree/verify.hpp"

namespace corefree::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kPrecondition = 3,
  kResourceCap = 4,
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::finite_index:
    case ErrorKind::unbounded_run:
    case ErrorKind::precondition:
      return kPrecondition;
    case ErrorKind::word_blowup:
    case ErrorKind::overflow:
      return kResourceCap;
    default:
      return kUsage;
  }
}

struct RunConfig {
  std::uint64_t seed = 0;
  bool json = false;
  bool dot = false;
  std::size_t cap = kDefaultLengthCap;
};

struct InputOptions {
  std::string gens;
  bool has_gens = false;
  std::string in;
  std::size_t rank = 0;  // 0: infer
};

namespace detail {

inline CLI::Validator positive() {
  return CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          std::size_t used = 0;
          const long long v = std::stoll(s, &used);
          if (used == s.size() && v > 0) return {};
        } catch (const std::exception&) {
        }
        return "must be a positive integer, got '" + s + "'";
      },
      "POSITIVE");
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::malformed_input, "cannot open '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

inline Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse, "invalid JSON in '" + path + "': " + e.what());
  }
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::malformed_input, "cannot write '" + path + "'");
  f << text;
}

inline SubgroupPresentation presentation_from_document(const Json& j) {
  if (j.contains("edges")) {
    const FoldedGraph g = graph_from_json(j);
    return SubgroupPresentation(g.rank(), basis_of(g));
  }
  if (j.contains("original_generators")) {
    const std::size_t n = rank_from_json(j);
    return SubgroupPresentation(n, words_from_json(j.at("original_generators"), n));
  }
  return presentation_from_json(j);
}

inline SubgroupPresentation load_presentation(const InputOptions& in) {
  if (in.has_gens == !in.in.empty()) {
    throw CLI::ValidationError("input", "give exactly one of --gens or --in");
  }
  if (in.has_gens) {
    const std::size_t n = in.rank != 0 ? in.rank : std::max<std::size_t>(2, max_index_in(in.gens));
    return SubgroupPresentation(n, parse_word_list(in.gens, n));
  }
  return presentation_from_document(read_json(in.in));
}

inline void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option_function<std::string>(
         "--gens",
         [&in](const std::string& s) {
           in.gens = s;
           in.has_gens = true;
         },
         "comma-separated generator words, e.g. \"x1 x2, x2^2\"")
      ->allow_extra_args(false);
  cmd->add_option("--in", in.in, "presentation, graph or certificate JSON file");
  cmd->add_option("--rank", in.rank, "ambient rank n (inferred from --gens if omitted)")
      ->check(CLI::Range(2, 1 << 20));
}

inline std::string index_text(const std::optional<std::size_t>& d) {
  return d ? std::to_string(*d) : "INFINITE";
}

inline Json index_json(const std::optional<std::size_t>& d) {
  return d ? Json(*d) : Json("INFINITE");
}

inline std::string verdict_line(const char* name, const Verdict& v) {
  std::string s = std::string(name) + ": " + (v.passed ? "PASS" : "FAIL") + " (" +
                  std::to_string(v.checked) + " checks)";
  if (!v.passed) s += " " + v.failure;
  return s;
}

inline Json verdict_json(const Verdict& v) {
  Json j;
  j["passed"] = v.passed;
  j["checked"] = v.checked;
  if (!v.passed) j["failure"] = v.failure;
  return j;
}

}  // namespace detail

/// Runs one command line. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stallings graphs, power-free bases and relative quasimorphisms in free groups",
               "corefree"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig config;
  app.add_option("--seed", config.seed, "random seed");
  app.add_flag("--json", config.json, "JSON output");
  app.add_flag("--dot", config.dot, "Graphviz DOT output");
  app.add_option("--cap", config.cap, "cap on total word length")->check(detail::positive());

  InputOptions input;
  std::string out_path;
  std::string cert_path, factors_path, qm_path, relative_path;
  std::vector<std::string> words;
  bool trace = false, embed = false;
  std::size_t g_bound = 4, samples = 1000, length = 10, tuples = 5;
  std::int64_t power_bound = 6;
  std::size_t random_rank = 2, random_count = 2, random_length = 6;

  std::function<void()> action;

  auto* fold_cmd = app.add_subcommand("fold", "fold generators into a Stallings graph");
  detail::add_input_options(fold_cmd, input);
  fold_cmd->add_option("--out", out_path, "write the graph here");
  fold_cmd->callback([&] {
    action = [&] {
      const FoldedGraph g = fold(detail::load_presentation(input));
      const CoreGraph c = core(g);
      std::ostringstream summary;
      summary << "vertices: " << g.vertex_count() << "\n"
              << "edges: " << g.edge_count() << "\n"
              << "rank: " << rank(c) << "\n"
              << "index: " << detail::index_text(index(g)) << "\n";
      if (config.dot) {
        detail::write_output(out_path, export_dot(g), out);
      } else if (config.json || !out_path.empty()) {
        detail::write_output(out_path, export_json(g) + "\n", out);
      }
      if (!out_path.empty() || (!config.dot && !config.json)) out << summary.str();
    };
  });

  auto* core_cmd = app.add_subcommand("core", "core graph, rank and loop sets");
  detail::add_input_options(core_cmd, input);
  core_cmd->callback([&] {
    action = [&] {
      const FoldedGraph g = fold(detail::load_presentation(input));
      const CoreGraph c = core(g);
      if (config.dot) {
        out << export_dot(c, "Core");
        return;
      }
      if (config.json) {
        Json j = to_json(c);
        j["subgroup_rank"] = rank(c);
        j["index"] = detail::index_json(index(g));
        Json sets = Json::array();
        for (const LoopSet& s : loop_sets(c)) sets.push_back(s.vertices);
        j["loop_sets"] = sets;
        out << j.dump(2) << "\n";
        return;
      }
      out << "core vertices: " << c.size() << "\n"
          << "core edges: " << c.edge_count() << "\n"
          << "rank: " << rank(c) << "\n"
          << "index: " << detail::index_text(index(g)) << "\n";
      for (const LoopSet& s : loop_sets(c)) {
        out << "L_x" << s.label << ":";
        for (Vertex v : s.vertices) out << " " << v;
        out << "\n";
      }
    };
  });

  auto* basis_cmd = app.add_subcommand("find-basis", "compute a power-free basis certificate");
  detail::add_input_options(basis_cmd, input);
  basis_cmd->add_option("--out", out_path, "write the certificate here");
  basis_cmd->add_flag("--trace", trace, "print the per-iteration (i, k, |L|) table on stderr");
  basis_cmd->callback([&] {
    action = [&] {
      const BasisCertificate cert = find_power_free_basis(detail::load_presentation(input), config.cap);
      if (trace) {
        err << std::setw(4) << "step" << std::setw(6) << "i" << std::setw(10) << "k"
            << std::setw(10) << "|L|" << std::setw(10) << "|L'|" << std::setw(8) << "core" << "\n";
        for (std::size_t s = 0; s < cert.trace.size(); ++s) {
          const TraceEntry& t = cert.trace[s];
          err << std::setw(4) << s + 1 << std::setw(6) << t.i << std::setw(10) << t.k
              << std::setw(10) << t.loops_before << std::setw(10) << t.loops_after
              << std::setw(8) << t.core_vertices << "\n";
        }
      }
      detail::write_output(out_path, to_json(cert).dump(2) + "\n", out);
    };
  });

  auto* verify_cmd = app.add_subcommand("verify", "check a certificate by brute force and sampling");
  verify_cmd->add_option("--cert", cert_path, "certificate JSON")->required();
  verify_cmd->add_option("--g-bound", g_bound, "conjugator length bound")->check(detail::positive());
  verify_cmd->add_option("--power-bound", power_bound, "largest power m tested")->check(detail::positive());
  verify_cmd->add_option("--samples", samples, "sampled subgroup elements")->check(detail::positive());
  verify_cmd->add_option("--length", length, "max generators per sampled element")->check(detail::positive());
  verify_cmd->add_option("--tuples", tuples, "random base-factor tuples for the vanishing check")
      ->check(detail::positive());
  verify_cmd->callback([&] {
    action = [&] {
      const BasisCertificate cert = certificate_from_json(detail::read_json(cert_path));
      const SubgroupPresentation p(cert.rank, cert.original_generators);
      VerifyOptions opt;
      opt.g_bound = g_bound;
      opt.power_bound = power_bound;
      opt.samples = samples;
      opt.max_factors = length;
      opt.seed = config.seed;
      opt.cap = config.cap;
      const VerificationReport report = verify_certificate(p, cert, opt);

      Verdict vanishing;
      Rng rng(config.seed);
      for (std::size_t t = 0; t < tuples && vanishing.passed; ++t) {
        std::vector<AlternatingFunction> base;
        for (std::size_t i = 0; i < cert.rank; ++i) base.push_back(embed_support(random_function(rng, 4), cert.m0));
        const RelativeQM r = make_relative_qm(cert, std::move(base));
        const VanishingReport v = check_vanishing(r, p, samples, length, config.seed + t + 1);
        vanishing.checked += v.checked;
        if (!v.passed) {
          vanishing.passed = false;
          vanishing.failure = "relative quasimorphism is " + format_rational(v.value) + " on '" +
                              format_word(*v.witness) + "'";
        }
      }
      const bool ok = report.passed() && vanishing.passed;
      if (config.json) {
        Json j;
        j["structural"] = detail::verdict_json(report.structural);
        j["conjugates"] = detail::verdict_json(report.conjugates);
        j["subword"] = detail::verdict_json(report.subword);
        j["vanishing"] = detail::verdict_json(vanishing);
        j["passed"] = ok;
        out << j.dump(2) << "\n";
      } else {
        out << detail::verdict_line("(a) structural", report.structural) << "\n"
            << detail::verdict_line("(b) conjugates", report.conjugates) << "\n"
            << detail::verdict_line("(c) subword bound", report.subword) << "\n"
            << detail::verdict_line("vanishing", vanishing) << "\n";
      }
      if (!ok) throw ExitCode(kVerificationFailed);
    };
  });

  auto* m0_cmd = app.add_subcommand("m0", "power bound of a subgroup without single-label cycles");
  detail::add_input_options(m0_cmd, input);
  m0_cmd->callback([&] {
    action = [&] {
      const std::int64_t m0 = compute_m0(fold(detail::load_presentation(input)));
      if (config.json) {
        out << Json{{"m0", m0}}.dump() << "\n";
      } else {
        out << m0 << "\n";
      }
    };
  });

  auto* eval_cmd = app.add_subcommand("qm-eval", "evaluate a split or relative quasimorphism");
  eval_cmd->add_option("--qm", qm_path, "split or relative quasimorphism JSON")->required();
  eval_cmd->add_option("--word", words, "word(s) to evaluate")->required();
  eval_cmd->callback([&] {
    action = [&] {
      const Json doc = detail::read_json(qm_path);
      std::optional<RelativeQM> relative;
      std::optional<SplitQM> split;
      std::size_t n = 0;
      if (doc.contains("certificate")) {
        relative = relative_from_json(doc);
        n = relative->certificate.rank;
      } else {
        split = split_from_json(doc);
        n = split->rank();
      }
      Json values = Json::array();
      for (const std::string& text : words) {
        const Word w = parse_word(text, n);
        const Rational v = relative ? (*relative)(w) : (*split)(w);
        if (config.json) {
          values.push_back(Json{{"word", format_word(w)}, {"value", format_rational(v)}});
        } else {
          out << format_rational(v) << "\n";
        }
      }
      if (config.json) out << values.dump(2) << "\n";
    };
  });

  auto* defect_cmd = app.add_subcommand("qm-defect", "exact defect of a split quasimorphism");
  defect_cmd->add_option("--qm", qm_path, "split quasimorphism or single function JSON")->required();
  defect_cmd->callback([&] {
    action = [&] {
      const Json doc = detail::read_json(qm_path);
      std::vector<AlternatingFunction> factors;
      if (doc.contains("factors")) {
        factors = doc.contains("certificate") ? relative_from_json(doc).base_factors()
                                              : split_from_json(doc).factors();
      } else {
        factors.push_back(function_from_json(doc));
      }
      Json per = Json::array();
      Rational best(0);
      for (std::size_t i = 0; i < factors.size(); ++i) {
        const DefectReport r = defect_z(factors[i]);
        best = std::max(best, r.value);
        per.push_back(Json{{"factor", i + 1},
                           {"defect", format_rational(r.value)},
                           {"witness", Json::array({r.m, r.n})}});
        if (!config.json) {
          out << "factor " << i + 1 << ": " << format_rational(r.value) << " at (" << r.m
              << ", " << r.n << ")\n";
        }
      }
      if (config.json) {
        out << Json{{"defect", format_rational(best)}, {"factors", per}}.dump(2) << "\n";
      } else {
        out << "defect: " << format_rational(best) << "\n";
      }
    };
  });

  auto* make_cmd = app.add_subcommand("make-relative", "build a quasimorphism vanishing on H");
  make_cmd->add_option("--cert", cert_path, "certificate JSON")->required();
  make_cmd->add_option("--factors", factors_path,
                       "factor list JSON (array of functions, or {\"factors\": [...]})")
      ->required();
  make_cmd->add_flag("--embed", embed, "scale factor supports by m0 first");
  make_cmd->add_option("--out", out_path, "write the relative quasimorphism here");
  make_cmd->callback([&] {
    action = [&] {
      BasisCertificate cert = certificate_from_json(detail::read_json(cert_path));
      const Json fj = detail::read_json(factors_path);
      auto factors = functions_from_json(fj.is_array() ? fj : corefree::detail::field(fj, "factors"));
      const RelativeQM r = embed ? make_relative_qm_embedded(std::move(cert), factors)
                                 : make_relative_qm(std::move(cert), std::move(factors));
      detail::write_output(out_path, to_json(r).dump(2) + "\n", out);
    };
  });

  auto* vanish_cmd = app.add_subcommand("check-vanishing", "sample H and check the quasimorphism is 0");
  vanish_cmd->add_option("--relative", relative_path, "relative quasimorphism JSON");
  vanish_cmd->add_option("--cert", cert_path, "certificate JSON (with --factors)");
  vanish_cmd->add_option("--factors", factors_path, "factor list JSON (with --cert)");
  vanish_cmd->add_flag("--embed", embed, "scale factor supports by m0 first");
  vanish_cmd->add_option("--samples", samples, "sampled subgroup elements")->check(detail::positive());
  vanish_cmd->add_option("--length", length, "max generators per sampled element")->check(detail::positive());
  vanish_cmd->callback([&] {
    action = [&] {
      std::optional<RelativeQM> r;
      if (!relative_path.empty()) {
        r = relative_from_json(detail::read_json(relative_path));
      } else if (!cert_path.empty() && !factors_path.empty()) {
        BasisCertificate cert = certificate_from_json(detail::read_json(cert_path));
        const Json fj = detail::read_json(factors_path);
        auto factors = functions_from_json(fj.is_array() ? fj : corefree::detail::field(fj, "factors"));
        r = embed ? make_relative_qm_embedded(std::move(cert), factors)
                  : make_relative_qm(std::move(cert), std::move(factors));
      } else {
        throw CLI::ValidationError("input", "give --relative, or --cert with --factors");
      }
      const SubgroupPresentation p(r->certificate.rank, r->certificate.original_generators);
      const VanishingReport v = check_vanishing(*r, p, samples, length, config.seed);
      if (config.json) {
        Json j{{"passed", v.passed}, {"checked", v.checked}};
        if (!v.passed) {
          j["witness"] = format_word(*v.witness);
          j["value"] = format_rational(v.value);
        }
        out << j.dump(2) << "\n";
      } else if (v.passed) {
        out << "vanishing: PASS (" << v.checked << " samples)\n";
      } else {
        out << "vanishing: FAIL value " << format_rational(v.value) << " on '"
            << format_word(*v.witness) << "'\n";
      }
      if (!v.passed) throw ExitCode(kVerificationFailed);
    };
  });

  auto* random_cmd = app.add_subcommand("random", "seeded random subgroup presentation");
  random_cmd->add_option("--rank", random_rank, "ambient rank")->check(CLI::Range(2, 1 << 20));
  random_cmd->add_option("--count", random_count, "number of generators");
  random_cmd->add_option("--length", random_length, "max generator length")->check(detail::positive());
  random_cmd->callback([&] {
    action = [&] {
      const InstanceSpec spec{random_rank, random_count, random_length, config.seed};
      out << to_json(random_presentation(spec)).dump(2) << "\n";
    };
  });

  auto* export_cmd = app.add_subcommand("export", "convert a presentation or graph to JSON/DOT");
  detail::add_input_options(export_cmd, input);
  export_cmd->add_option("--out", out_path, "write here");
  export_cmd->callback([&] {
    action = [&] {
      const FoldedGraph g = fold(detail::load_presentation(input));
      detail::write_output(out_path, config.dot ? export_dot(g) : export_json(g) + "\n", out);
    };
  });

  auto report = [&err](std::string_view name, const std::string& message) {
    err << Json{{"error", name}, {"message", message}}.dump() << "\n";
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    report("UsageError", e.what());
    return kUsage;
  }

  try {
    if (config.json && config.dot) throw CLI::ValidationError("format", "--json and --dot are exclusive");
    action();
  } catch (ExitCode code) {
    return code;
  } catch (const CLI::Error& e) {
    report("UsageError", e.what());
    return kUsage;
  } catch (const Error& e) {
    report(to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    report(to_string(ErrorKind::malformed_input), e.what());
    return kUsage;
  }
  return kOk;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace corefree::cli
