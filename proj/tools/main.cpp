#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsf/elaboration.hpp"
#include "gsf/embeddings.hpp"
#include "gsf/evaluator.hpp"
#include "gsf/parser.hpp"
#include "gsf/precision.hpp"
#include "gsf/statics.hpp"

namespace {

constexpr int kExitValue = 0;
constexpr int kExitRuntimeError = 1;
constexpr int kExitTypeError = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitParseError = 4;
constexpr int kExitInternal = 5;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dialect_of(const std::string& path, const std::string& override_dialect) {
  if (!override_dialect.empty()) return override_dialect;
  auto dot = path.rfind('.');
  if (dot == std::string::npos) return "gsf";
  std::string ext = path.substr(dot + 1);
  if (ext == "lseal") return "seal";
  if (ext == "ldyn") return "dyn";
  return "gsf";
}

int parse_gsf_file(const std::string& path, gsf::TermPtr& out) {
  auto parsed = gsf::parse_gsf(read_file(path));
  if (std::holds_alternative<gsf::ParseError>(parsed)) {
    const auto& e = std::get<gsf::ParseError>(parsed);
    std::cerr << path << ":" << e.span.line << ":" << e.span.col
              << ": parse error: " << e.message << "\n";
    return kExitParseError;
  }
  out = std::get<gsf::TermPtr>(parsed);
  return kExitValue;
}

int parse_seal_file(const std::string& path, gsf::SealTermPtr& out) {
  auto parsed = gsf::parse_seal(read_file(path));
  if (std::holds_alternative<gsf::ParseError>(parsed)) {
    const auto& e = std::get<gsf::ParseError>(parsed);
    std::cerr << path << ":" << e.span.line << ":" << e.span.col
              << ": parse error: " << e.message << "\n";
    return kExitParseError;
  }
  out = std::get<gsf::SealTermPtr>(parsed);
  return kExitValue;
}

nlohmann::json store_json(const gsf::Store& store) {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < store.size(); ++i)
    arr.push_back({{"name", "a" + std::to_string(i)},
                   {"type", gsf::show_type(store.bindings[i])}});
  return arr;
}

int cmd_typecheck(const std::string& file) {
  gsf::TermPtr t;
  if (int rc = parse_gsf_file(file, t)) return rc;
  auto r = gsf::typecheck_gsf({}, t);
  if (!gsf::ok(r)) {
    const auto& e = gsf::error_of(r);
    std::cerr << file << ":" << e.location.line << ":" << e.location.col << ": type error ["
              << gsf::type_error_kind_name(e.kind) << "]: " << e.message << "\n";
    return kExitTypeError;
  }
  std::cout << gsf::show_type(gsf::type_of(r)) << "\n";
  return kExitValue;
}

int cmd_run(const std::string& file, bool dip, std::size_t max_steps,
            const std::string& trace_mode, bool emit_eps) {
  gsf::TermPtr t;
  if (int rc = parse_gsf_file(file, t)) return rc;
  auto r = gsf::typecheck_gsf({}, t);
  if (!gsf::ok(r)) {
    const auto& e = gsf::error_of(r);
    std::cerr << file << ":" << e.location.line << ":" << e.location.col << ": type error ["
              << gsf::type_error_kind_name(e.kind) << "]: " << e.message << "\n";
    return kExitTypeError;
  }
  if (emit_eps) std::cout << gsf::show_eterm(gsf::elaborate(t)) << "\n";

  gsf::EvalOptions opts;
  opts.dip_enabled = dip;
  opts.max_steps = max_steps;

  if (!trace_mode.empty()) {
    auto tr = gsf::trace(t, opts);
    if (trace_mode == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& e : tr.entries)
        arr.push_back({{"step", e.step},
                       {"rule", e.rule},
                       {"store", store_json(e.config.store)},
                       {"term", gsf::show_eterm(e.config.term)}});
      arr.push_back({{"outcome", gsf::show_outcome(tr.outcome)}});
      std::cout << arr.dump(2) << "\n";
      // the outcome record closes the JSON document; exit code still applies
      if (gsf::is_value_outcome(tr.outcome)) return kExitValue;
      return gsf::is_error_outcome(tr.outcome) ? kExitRuntimeError : kExitTimeout;
    } else {
      for (const auto& e : tr.entries) {
        std::cout << e.step << " [" << e.rule << "]";
        if (e.config.store.size() > 0) {
          std::cout << " {";
          for (std::size_t i = 0; i < e.config.store.size(); ++i) {
            if (i) std::cout << ", ";
            std::cout << "a" << i << ":=" << gsf::show_type(e.config.store.bindings[i]);
          }
          std::cout << "}";
        }
        std::cout << " " << gsf::show_eterm(e.config.term) << "\n";
      }
    }
    if (gsf::is_value_outcome(tr.outcome)) {
      const auto& v = std::get<gsf::ValueOutcome>(tr.outcome);
      std::cout << gsf::show_eterm(v.value->t1) << " : " << gsf::show_type(v.value->type_a)
                << "\n";
      return kExitValue;
    }
    if (gsf::is_error_outcome(tr.outcome)) {
      std::cerr << "runtime error: " << std::get<gsf::RuntimeError>(tr.outcome).detail << "\n";
      return kExitRuntimeError;
    }
    std::cerr << gsf::show_outcome(tr.outcome) << "\n";
    return kExitTimeout;
  }

  gsf::Outcome o = gsf::eval(t, opts);
  if (gsf::is_value_outcome(o)) {
    const auto& v = std::get<gsf::ValueOutcome>(o);
    std::cout << gsf::show_eterm(v.value->t1) << " : " << gsf::show_type(v.value->type_a)
              << "\n";
    return kExitValue;
  }
  if (gsf::is_error_outcome(o)) {
    std::cerr << "runtime error: " << std::get<gsf::RuntimeError>(o).detail << "\n";
    return kExitRuntimeError;
  }
  std::cerr << gsf::show_outcome(o) << "\n";
  return kExitTimeout;
}

int cmd_embed(const std::string& file, const std::string& from) {
  gsf::SealTermPtr t;
  if (int rc = parse_seal_file(file, t)) return rc;
  try {
    gsf::TermPtr g = from == "dyn" ? gsf::embed_dyn(t) : gsf::embed_seal(t);
    std::cout << gsf::show_term(g) << "\n";
    return kExitValue;
  } catch (const std::invalid_argument& e) {
    std::cerr << "embed error: " << e.what() << "\n";
    return kExitParseError;
  }
}

int cmd_diff(const std::string& file, std::size_t max_steps) {
  gsf::SealTermPtr t;
  if (int rc = parse_seal_file(file, t)) return rc;
  gsf::DiffVerdict v = gsf::differential_check(t, max_steps);
  switch (v.kind) {
    case gsf::DiffVerdictKind::Agree:
      std::cout << "Agree (" << v.detail << ")\n";
      return kExitValue;
    case gsf::DiffVerdictKind::SkippedSealTypeError:
      std::cout << "Skipped-SealTypeError\n";
      return kExitValue;
    case gsf::DiffVerdictKind::Disagree:
      std::cout << "Disagree: " << v.detail << "\n";
      return kExitInternal;
  }
  return kExitInternal;
}

int cmd_precision(const std::string& f1, const std::string& f2, bool strict) {
  gsf::TermPtr t1, t2;
  if (int rc = parse_gsf_file(f1, t1)) return rc;
  if (int rc = parse_gsf_file(f2, t2)) return rc;
  bool related;
  if (strict) {
    auto r1 = gsf::typecheck_gsf({}, t1);
    auto r2 = gsf::typecheck_gsf({}, t2);
    if (!gsf::ok(r1) || !gsf::ok(r2)) {
      std::cerr << "type error: strict precision requires well-typed terms\n";
      return kExitTypeError;
    }
    related = gsf::strict_term_precision_gsf({}, t1, t2).has_value();
  } else {
    related = gsf::term_precision(t1, t2);
  }
  std::cout << (related ? "true" : "false") << "\n";
  return kExitValue;
}

int cmd_lockstep(const std::string& f1, const std::string& f2, std::size_t max_steps) {
  gsf::TermPtr t1, t2;
  if (int rc = parse_gsf_file(f1, t1)) return rc;
  if (int rc = parse_gsf_file(f2, t2)) return rc;
  if (!gsf::strict_term_precision_gsf({}, t1, t2)) {
    std::cerr << "type error: terms are not related by strict precision\n";
    return kExitTypeError;
  }
  gsf::EvalOptions opts;
  opts.max_steps = max_steps;
  gsf::LockstepVerdict v = gsf::lockstep_check(t1, t2, opts);
  switch (v.kind) {
    case gsf::LockstepKind::Held:
      std::cout << "Held(" << v.at_step << ")\n";
      return kExitValue;
    case gsf::LockstepKind::LeftErrorFirst:
      std::cout << "LeftErrorFirst(" << v.at_step << ")\n";
      return kExitValue;
    case gsf::LockstepKind::PrecisionBroken:
      std::cout << "PrecisionBroken(" << v.at_step << "): " << v.reason << "\n";
      return kExitInternal;
    case gsf::LockstepKind::RightStuck:
      std::cout << "RightStuck(" << v.at_step << "): " << v.reason << "\n";
      return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GSF: a gradual polymorphic language with runtime sealing"};
  app.require_subcommand(1);

  std::string file, file2, from = "seal", trace_mode, dialect;
  bool dip = false, strict = false, emit_eps = false;
  std::size_t max_steps = 100000;

  auto* tc = app.add_subcommand("typecheck", "typecheck a .gsf file and print its type");
  tc->add_option("file", file)->required();

  auto* run = app.add_subcommand("run", "evaluate a .gsf file");
  run->add_option("file", file)->required();
  run->add_flag("--dip", dip, "enable dynamic implicit polymorphism");
  run->add_option("--max-steps", max_steps, "step budget");
  run->add_option("--trace", trace_mode, "print the reduction trace (json|text)")
      ->expected(0, 1)
      ->default_str("text");
  run->add_flag("--emit-eps", emit_eps, "print the elaborated evidence term");

  auto* emb = app.add_subcommand("embed", "translate a .lseal/.ldyn file to GSF source");
  emb->add_option("file", file)->required();
  emb->add_option("--from", from, "source dialect: dyn or seal")
      ->check(CLI::IsMember({"dyn", "seal"}));
  emb->add_option("--dialect", dialect, "override the dialect inferred from the extension");

  auto* diff = app.add_subcommand("diff", "differential check: interpreter vs embedding");
  diff->add_option("file", file)->required();
  diff->add_option("--max-steps", max_steps, "step budget");

  auto* prec = app.add_subcommand("precision", "check term precision between two files");
  prec->add_option("file1", file)->required();
  prec->add_option("file2", file2)->required();
  prec->add_flag("--strict", strict, "use strict precision");

  auto* lock = app.add_subcommand("lockstep", "run the lockstep weak-DGG harness");
  lock->add_option("file1", file)->required();
  lock->add_option("file2", file2)->required();
  lock->add_option("--max-steps", max_steps, "step budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (tc->parsed()) return cmd_typecheck(file);
    if (run->parsed()) {
      if (run->count("--trace") && trace_mode.empty()) trace_mode = "text";
      return cmd_run(file, dip, max_steps, trace_mode, emit_eps);
    }
    if (emb->parsed()) {
      std::string d = dialect_of(file, dialect.empty() ? from : dialect);
      return cmd_embed(file, emb->count("--from") ? from : d);
    }
    if (diff->parsed()) return cmd_diff(file, max_steps);
    if (prec->parsed()) return cmd_precision(file, file2, strict);
    if (lock->parsed()) return cmd_lockstep(file, file2, max_steps);
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
