// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#include <CLI11.hpp>

#include <causaloop/causaloop.hpp>
#include <causaloop/report_json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace cl = causaloop;

namespace {

struct run_config {
  bool json_mode = false;
  bool timing = false;
  cl::index_t cap = cl::default_cap;
  unsigned workers = 0;
  std::uint64_t seed = 0;
};

unsigned effective_workers(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

cl::induced_function load_omega(const std::string& path) {
  if (ends_with(path, ".cstruct"))
    return cl::induce(cl::parse_structure(cl::source_document::from_file(path)));
  if (ends_with(path, ".omega"))
    return cl::parse_omega(cl::source_document::from_file(path));
  throw cl::error(cl::errc::parse,
                  "unrecognized input extension (expected .cstruct or .omega): " + path);
}

std::string render_profile(const cl::intervention_profile& f) {
  std::string s = "[";
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (k) s += ",";
    s += "[";
    for (std::size_t e = 0; e < f[k].table.size(); ++e) {
      if (e) s += ",";
      s += std::to_string(f[k].table[e]);
    }
    s += "]";
  }
  return s + "]";
}

std::string render_point(cl::index_t point, const std::vector<cl::value_t>& sizes) {
  auto tuple = cl::decode_tuple(point, sizes);
  std::string s = "(";
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(tuple[k]);
  }
  return s + ")";
}

std::string human_classification(const cl::classification& c,
                                 const cl::induced_function& omega) {
  std::ostringstream out;
  if (cl::is_process(c)) {
    out << "verdict: process\n";
    out << "profiles: " << cl::profile_space(omega).count()
        << ", each with exactly one fixed point\n";
  } else {
    const auto& v = std::get<cl::antinomic_verdict>(c);
    out << "verdict: antinomic\n";
    out << "grandfather: " << render_profile(v.grandfather);
    if (v.grandfather_index) out << " (profile " << *v.grandfather_index << ")";
    out << "\n";
    out << "information: " << render_profile(v.information);
    if (v.information_index) out << " (profile " << *v.information_index << ")";
    out << "\n";
    out << "information fixed points: " << render_point(v.point_a, omega.in_sizes()) << " "
        << render_point(v.point_b, omega.in_sizes()) << "\n";
  }
  return out.str();
}

cl::json space_json(const cl::space_spec& spec) {
  cl::json j;
  j["out"] = spec.out_sizes;
  j["in"] = spec.in_sizes;
  j["constant_components"] = spec.restrict_constant_components;
  return j;
}

struct space_flags {
  std::size_t parties = 0;
  std::vector<cl::value_t> out_sizes;
  std::vector<cl::value_t> in_sizes;
  bool bits = false;
  bool unrestricted = false;
};

void add_space_flags(CLI::App* cmd, space_flags& flags) {
  cmd->add_option("--parties", flags.parties, "party count");
  auto* bits = cmd->add_flag("--bits", flags.bits,
                             "two-valued outputs and inputs per party (the default)");
  auto* out = cmd->add_option("--out-sizes", flags.out_sizes,
                              "per-party output sizes, comma separated")
                  ->delimiter(',');
  cmd->add_option("--in-sizes", flags.in_sizes, "per-party input sizes, comma separated")
      ->delimiter(',');
  auto* unrestricted = cmd->add_flag("--unrestricted", flags.unrestricted,
                                     "enumerate every component table");
  auto* constant = cmd->add_flag("--constant-components",
                                 "only components constant over their own party's output "
                                 "(the default)");
  bits->excludes(out);
  constant->excludes(unrestricted);
}

cl::space_spec make_space(const space_flags& flags) {
  cl::space_spec spec;
  if (!flags.out_sizes.empty()) {
    spec.out_sizes = flags.out_sizes;
    if (flags.parties != 0 && flags.parties != spec.out_sizes.size())
      throw cl::error(cl::errc::parse, "--parties disagrees with --out-sizes");
  } else {
    if (flags.parties == 0)
      throw cl::error(cl::errc::parse, "need --parties or --out-sizes");
    spec.out_sizes.assign(flags.parties, 2);
  }
  spec.in_sizes = flags.in_sizes.empty() ? spec.out_sizes : flags.in_sizes;
  if (spec.in_sizes.size() != spec.out_sizes.size())
    throw cl::error(cl::errc::parse, "--in-sizes disagrees with the party count");
  spec.restrict_constant_components = !flags.unrestricted;
  return spec;
}

struct command_output {
  cl::json result;
  std::string human;
  int exit_code = 0;
};

int exit_code_for(const cl::error& e) {
  switch (e.code()) {
    case cl::errc::parse:
    case cl::errc::arity:
    case cl::errc::shape_mismatch:
    case cl::errc::out_of_range:
    case cl::errc::length_mismatch:
    case cl::errc::not_a_nonconstancy_witness:
      return 1;
    case cl::errc::validation:
    case cl::errc::invalid_structure:
    case cl::errc::cyclic:
    case cl::errc::not_constant_over_own_output:
      return 2;
    case cl::errc::cap_exceeded:
      return 3;
    case cl::errc::theorem_violation:
      return 4;
  }
  return 4;
}

int emit(const run_config& cfg, const std::string& command, const cl::json& inputs,
         const std::function<command_output()>& body) {
  auto start = std::chrono::steady_clock::now();
  auto print_json = [&](const cl::json& payload, bool is_error) {
    cl::json j;
    j["schema_version"] = "1";
    j["command"] = command;
    j["inputs"] = inputs;
    j["result"] = is_error ? cl::json(nullptr) : payload;
    j["error"] = is_error ? payload : cl::json(nullptr);
    if (cfg.timing) {
      double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      j["timing"] = cl::json{{"seconds", seconds}};
    } else {
      j["timing"] = nullptr;
    }
    std::cout << j.dump(2) << "\n";
  };
  try {
    command_output out = body();
    if (cfg.json_mode)
      print_json(out.result, false);
    else if (!out.human.empty())
      std::cout << out.human;
    return out.exit_code;
  } catch (const cl::parse_error& e) {
    if (cfg.json_mode)
      print_json(cl::to_json(e), true);
    else
      std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const cl::validation_error& e) {
    if (cfg.json_mode)
      print_json(cl::to_json(e), true);
    else
      std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cl::error& e) {
    cl::json payload;
    payload["error"] = cl::errc_name(e.code());
    payload["message"] = std::string(e.what());
    if (cfg.json_mode)
      print_json(payload, true);
    else
      std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    cl::json payload;
    payload["error"] = "INTERNAL";
    payload["message"] = std::string(e.what());
    if (cfg.json_mode)
      print_json(payload, true);
    else
      std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite cyclic causal structures: interventions, induced functions, "
               "fixed points"};
  app.require_subcommand(1);
  run_config cfg;
  app.add_flag("--json", cfg.json_mode, "emit a JSON report on stdout");
  app.add_flag("--timing", cfg.timing, "fill the timing field of JSON reports");
  app.add_option("--cap", cfg.cap, "largest enumeration size before refusing")
      ->capture_default_str();
  app.add_option("--workers", cfg.workers, "worker threads for enumeration (0 = all cores)");
  app.add_option("--seed", cfg.seed, "seed for sampled suites")->capture_default_str();

  auto* validate_cmd = app.add_subcommand("validate", "check a causal-structure file");
  std::string validate_path;
  validate_cmd->add_option("file", validate_path, "a .cstruct file")->required();
  validate_cmd->fallthrough();

  auto* induce_cmd =
      app.add_subcommand("induce", "compute the induced function of a causal structure");
  std::string induce_path;
  induce_cmd->add_option("file", induce_path, "a .cstruct file")->required();
  induce_cmd->fallthrough();

  auto* classify_cmd =
      app.add_subcommand("classify", "exhaustively classify as process or antinomic");
  std::string classify_path;
  classify_cmd->add_option("file", classify_path, "a .cstruct or .omega file")->required();
  classify_cmd->fallthrough();

  auto* witness_cmd =
      app.add_subcommand("witness", "find antinomy witness profiles, constructively if possible");
  std::string witness_path;
  witness_cmd->add_option("file", witness_path, "a .cstruct or .omega file")->required();
  witness_cmd->fallthrough();

  auto* reduce_cmd =
      app.add_subcommand("reduce", "swallow one party under a fixed intervention");
  std::string reduce_path;
  std::size_t reduce_party = 0;
  std::vector<cl::value_t> reduce_table;
  reduce_cmd->add_option("file", reduce_path, "a .cstruct or .omega file")->required();
  reduce_cmd->add_option("--party", reduce_party, "1-based party to swallow")->required();
  reduce_cmd
      ->add_option("--table", reduce_table,
                   "intervention table, comma separated, one output per input value")
      ->delimiter(',')
      ->required();
  reduce_cmd->fallthrough();

  auto* census_cmd =
      app.add_subcommand("census", "count process vs antinomic tables over a space");
  space_flags census_space;
  std::size_t census_representatives = 0;
  std::string census_jsonl;
  add_space_flags(census_cmd, census_space);
  census_cmd->add_option("--representatives", census_representatives,
                         "record the first K table indices of each class");
  census_cmd->add_option("--jsonl", census_jsonl, "write one JSON record per table to a file");
  census_cmd->fallthrough();

  auto* verify_cmd = app.add_subcommand("verify", "run a named verification suite");
  space_flags verify_space;
  std::string verify_suite;
  std::size_t verify_samples = 10000;
  std::vector<cl::value_t> verify_sizes;
  verify_cmd->add_option("--suite", verify_suite, "one of: lemma1, corollary2, lemma3, "
                                                  "corollary4, transitivity, theorem1, "
                                                  "equivalence")
      ->required()
      ->check(CLI::IsMember(cl::suite_names()));
  add_space_flags(verify_cmd, verify_space);
  verify_cmd->add_option("--samples", verify_samples, "sample count for the lemma1 suite")
      ->capture_default_str();
  verify_cmd
      ->add_option("--sizes", verify_sizes, "size list for the corollary2 suite")
      ->delimiter(',');
  verify_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (app.got_subcommand(validate_cmd)) {
    cl::json inputs{{"path", validate_path}};
    return emit(cfg, "validate", inputs, [&] {
      if (!ends_with(validate_path, ".cstruct"))
        throw cl::error(cl::errc::parse, "validate needs a .cstruct file: " + validate_path);
      cl::causal_structure s =
          cl::parse_structure(cl::source_document::from_file(validate_path));
      cl::validation_report report = cl::validate(s);
      command_output out;
      out.result = cl::to_json(report);
      std::ostringstream human;
      human << "ok\n";
      for (const auto& w : report.warnings)
        human << "warning: [" << cl::violation_code_name(w.code) << "] " << w.message << "\n";
      out.human = human.str();
      return out;
    });
  }

  if (app.got_subcommand(induce_cmd)) {
    cl::json inputs{{"path", induce_path}};
    return emit(cfg, "induce", inputs, [&] {
      if (!ends_with(induce_path, ".cstruct"))
        throw cl::error(cl::errc::parse, "induce needs a .cstruct file: " + induce_path);
      cl::induced_function omega =
          cl::induce(cl::parse_structure(cl::source_document::from_file(induce_path)));
      command_output out;
      out.result = cl::to_json(omega);
      out.human = cl::serialize(omega);
      return out;
    });
  }

  if (app.got_subcommand(classify_cmd)) {
    cl::json inputs{{"path", classify_path}};
    return emit(cfg, "classify", inputs, [&] {
      cl::induced_function omega = load_omega(classify_path);
      cl::classification c = cl::classify(omega, cfg.cap, effective_workers(cfg.workers));
      command_output out;
      out.result = cl::to_json(c, omega);
      out.human = human_classification(c, omega);
      return out;
    });
  }

  if (app.got_subcommand(witness_cmd)) {
    cl::json inputs{{"path", witness_path}};
    return emit(cfg, "witness", inputs, [&] {
      cl::induced_function omega = load_omega(witness_path);
      cl::classification c = cl::witness_search(omega, cfg.cap);
      command_output out;
      out.result = cl::to_json(c, omega);
      out.human = human_classification(c, omega);
      return out;
    });
  }

  if (app.got_subcommand(reduce_cmd)) {
    cl::json inputs{{"path", reduce_path}, {"party", reduce_party}, {"table", reduce_table}};
    return emit(cfg, "reduce", inputs, [&] {
      if (reduce_party == 0)
        throw cl::error(cl::errc::parse, "--party is 1-based");
      cl::induced_function omega = load_omega(reduce_path);
      cl::induced_function reduced =
          cl::reduce(omega, reduce_party - 1, cl::intervention{reduce_table});
      command_output out;
      out.result = cl::to_json(reduced);
      out.human = cl::serialize(reduced);
      return out;
    });
  }

  if (app.got_subcommand(census_cmd)) {
    cl::json inputs;
    inputs["parties"] = census_space.parties == 0 ? cl::json(nullptr)
                                                  : cl::json(census_space.parties);
    inputs["out_sizes"] = census_space.out_sizes;
    inputs["in_sizes"] = census_space.in_sizes;
    inputs["unrestricted"] = census_space.unrestricted;
    inputs["representatives"] = census_representatives;
    inputs["jsonl"] = census_jsonl.empty() ? cl::json(nullptr) : cl::json(census_jsonl);
    return emit(cfg, "census", inputs, [&] {
      cl::space_spec spec = make_space(census_space);
      cl::census_options options;
      options.workers = effective_workers(cfg.workers);
      options.function_cap = cfg.cap;
      options.profile_cap = cfg.cap;
      options.representatives = census_representatives;
      options.collect_records = !census_jsonl.empty();
      cl::census_report report = cl::run_census(spec, options);
      if (!census_jsonl.empty()) {
        std::ofstream jsonl(census_jsonl);
        if (!jsonl)
          throw cl::error(cl::errc::parse, "cannot write " + census_jsonl);
        for (const auto& record : report.records)
          jsonl << cl::record_json(record, spec.in_sizes).dump() << "\n";
      }
      command_output out;
      out.result = cl::to_json(report);
      std::ostringstream human;
      human << "total: " << report.total << "\n";
      human << "process: " << report.process_count << "\n";
      human << "antinomic: " << report.antinomic_count << "\n";
      human << "equivalence violations: " << report.equivalence_violations << "\n";
      out.human = human.str();
      out.exit_code = report.equivalence_violations == 0 ? 0 : 4;
      return out;
    });
  }

  if (app.got_subcommand(verify_cmd)) {
    cl::json inputs;
    inputs["suite"] = verify_suite;
    inputs["parties"] = verify_space.parties == 0 ? cl::json(nullptr)
                                                  : cl::json(verify_space.parties);
    inputs["out_sizes"] = verify_space.out_sizes;
    inputs["in_sizes"] = verify_space.in_sizes;
    inputs["unrestricted"] = verify_space.unrestricted;
    inputs["seed"] = cfg.seed;
    inputs["samples"] = verify_samples;
    inputs["sizes"] = verify_sizes;
    return emit(cfg, "verify", inputs, [&] {
      cl::suite_options options;
      options.cap = cfg.cap;
      options.seed = cfg.seed;
      options.sample_count = verify_samples;
      options.parties = verify_space.parties == 0 ? 2 : verify_space.parties;
      options.out_sizes = verify_space.out_sizes;
      options.in_sizes = verify_space.in_sizes;
      options.unrestricted = verify_space.unrestricted;
      if (!verify_sizes.empty()) options.corollary2_sizes = verify_sizes;
      cl::verification_report report = cl::run_suite(verify_suite, options);
      command_output out;
      out.result = cl::to_json(report);
      std::ostringstream human;
      human << "suite: " << report.suite << "\n";
      human << "instances: " << report.instances << "\n";
      human << "failures: " << report.failures.size() << "\n";
      for (const auto& f : report.failures)
        human << "FAIL " << f.instance << "\n  expected: " << f.expected
              << "\n  observed: " << f.observed << "\n";
      human << (report.passed() ? "PASS" : "FAIL") << "\n";
      out.human = human.str();
      out.exit_code = report.passed() ? 0 : 4;
      return out;
    });
  }

  return 0;
}
