#include "octa/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "octa/geometry.hpp"
#include "octa/tables.hpp"
#include "octa/verifier.hpp"

namespace octa::cli {

namespace {

// Input problems that map to exit status 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return bytes.str();
}

EdgeSet load_edge_list(const std::string& path) {
  std::istringstream in(read_file(path));
  try {
    return read_edge_list(in);
  } catch (const FormatError& ex) {
    throw InputError(path + ": " + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw InputError(path + ": " + ex.what());
  }
}

geom::Configuration load_configuration(const std::string& path) {
  std::istringstream in(read_file(path));
  try {
    return geom::read_configuration(in);
  } catch (const FormatError& ex) {
    throw InputError(path + ": " + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw InputError(path + ": " + ex.what());
  }
}

// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError(path + ": cannot write file");
  file << text;
}

std::string describe(PointRef p) {
  return "colour " + std::to_string(p.colour) + " point " + std::to_string(p.index);
}

CaseParams parse_case(const std::string& text, int target) {
  CaseParams c;
  c.target = target;
  char comma1 = 0, comma2 = 0;
  std::istringstream in(text);
  if (!(in >> c.l >> comma1 >> c.b >> comma2 >> c.j) || comma1 != ',' || comma2 != ',' || !in.eof()) {
    throw InputError("--case expects l,b,j (for example 3,4,2), got '" + text + "'");
  }
  return c;
}

double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

void print_large_table(std::ostream& out, const LargeTable& t) {
  const int d = t.shape().dimension();
  out << std::string(static_cast<std::size_t>(d + 1), ' ');
  for (int c = 0; c < t.columns(); ++c) out << ' ' << c;
  out << '\n';
  for (int r = 0; r < t.rows(); ++r) {
    out << '*';
    for (int u : t.transversal_of(r)) out << u;
    for (int c = 0; c < t.columns(); ++c) out << ' ' << (t.entry(r, c) ? 1 : 0);
    out << '\n';
  }
}

}  // namespace

report::SearchRun run_search(int d, int target, const std::optional<CaseParams>& only, const Budget& budget,
                             const SearchOptions& options, const std::optional<report::SearchRun>& resume) {
  report::SearchRun run;
  run.d = d;
  run.target = target;
  run.first_branch_symmetry = options.first_branch_symmetry;
  if (resume && (resume->d != d || resume->target != target ||
                 resume->first_branch_symmetry != options.first_branch_symmetry)) {
    throw std::invalid_argument("checkpoint was written for a different d, target or symmetry setting");
  }

  std::vector<CaseParams> cases;
  if (only) {
    cases.push_back(*only);
    run.note = "single case";
  } else if (target < d + 1) {
    run.proven_lower_bound = d + 1;
    run.note = "covering property: each colour has d+1 points, so at least d+1 edges";
    return run;
  } else if (target <= d * d) {
    cases = generate_cases(d, target);
    run.note = "cases from the (l,b,j) decomposition";
  } else {
    cases = generate_elementary_cases(d, target);
    run.note = "target above d^2: elementary (l,b,j) cases without imported bounds";
  }

  for (const CaseParams& c : cases) {
    const Certificate* prior = nullptr;
    if (resume) {
      for (const Certificate& p : resume->certificates) {
        if (p.params == c) prior = &p;
      }
    }
    if (prior && prior->outcome != Outcome::budget_exceeded) {
      if (prior->witness && !witness_matches_case(*prior->witness, c, prior->witness_odd_rows)) {
        throw std::invalid_argument("checkpoint witness for case " + to_string(c) + " does not verify");
      }
      run.certificates.push_back(*prior);
    } else {
      run.certificates.push_back(
          run_case(d, c, budget, options, prior ? prior->checkpoint : std::optional<Checkpoint>{}));
    }
  }
  if (!only && std::all_of(run.certificates.begin(), run.certificates.end(),
                           [](const Certificate& c) { return c.outcome == Outcome::exhausted; })) {
    run.proven_lower_bound = target + 1;
  }
  return run;
}

int exit_code_for(const report::SearchRun& run) {
  int code = kSuccess;
  for (const Certificate& c : run.certificates) {
    if (c.outcome == Outcome::witness) return kFails;
    if (c.outcome == Outcome::budget_exceeded) code = kBudget;
  }
  return code;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> command_line{"octa"};
  command_line.insert(command_line.end(), args.begin(), args.end());
  report::RunManifest manifest = report::start_manifest(command_line);
  const auto started = std::chrono::steady_clock::now();

  CLI::App app{"Octahedral systems toolkit: verification, tables, geometry and exhaustive search", "octa"};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::kToolkitVersion);

  // verify
  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "Check the covering and parity properties of an edge list");
  verify->add_option("file", verify_path, "Edge-list file")->required();

  // score
  std::string score_path;
  auto* score_cmd = app.add_subcommand("score", "Print the large-table score of an edge list");
  score_cmd->add_option("file", score_path, "Edge-list file")->required();

  // table
  std::string table_path;
  int table_d = 0;
  int table_l = -1;
  bool table_large = false;
  auto* table = app.add_subcommand("table", "Print the small table and score");
  table->add_option("file", table_path, "Edge-list file");
  table->add_option("--d", table_d, "Dimension, with --initial-l instead of a file");
  table->add_option("--initial-l", table_l, "Use the edges x00..0 for x < l");
  table->add_flag("--large", table_large, "Also print the large table");

  // geom
  auto* geom_cmd = app.add_subcommand("geom", "Colourful point configurations");
  geom_cmd->require_subcommand(1);
  std::string geom_path;
  std::string geom_output;
  bool allow_invalid = false;
  auto* geom_count = geom_cmd->add_subcommand("count", "Count colourful simplices containing the origin");
  geom_count->add_option("file", geom_path, "Configuration file")->required();
  geom_count->add_flag("--allow-invalid", allow_invalid, "Accept classes whose hull misses the origin");
  auto* geom_hyper = geom_cmd->add_subcommand("hypergraph", "Emit the configuration hypergraph as an edge list");
  geom_hyper->add_option("file", geom_path, "Configuration file")->required();
  geom_hyper->add_option("-o,--output", geom_output, "Output path (default stdout)");
  geom_hyper->add_flag("--allow-invalid", allow_invalid, "Accept classes whose hull misses the origin");
  int geom_d = 0;
  std::uint64_t geom_seed = 0;
  auto* geom_random = geom_cmd->add_subcommand("random", "Emit a seeded random valid configuration");
  geom_random->add_option("--d", geom_d, "Dimension")->required();
  geom_random->add_option("--seed", geom_seed, "Seed")->required();
  geom_random->add_option("-o,--output", geom_output, "Output path (default stdout)");
  auto* geom_clustered = geom_cmd->add_subcommand("clustered", "Emit the clustered-vertex configuration");
  geom_clustered->add_option("--d", geom_d, "Dimension")->required();
  geom_clustered->add_option("-o,--output", geom_output, "Output path (default stdout)");

  // oracle
  int oracle_d = 0;
  int oracle_max = 0;
  bool oracle_no_symmetry = false;
  double oracle_budget = OracleOptions{}.work_budget;
  auto* oracle = app.add_subcommand("oracle", "Brute-force smallest system without isolated vertex");
  oracle->add_option("--d", oracle_d, "Dimension")->required();
  oracle->add_option("--max-edges", oracle_max, "Largest size to try")->required();
  oracle->add_flag("--no-symmetry", oracle_no_symmetry, "Enumerate every edge set");
  oracle->add_option("--work-budget", oracle_budget, "Refuse enumerations estimated above this many set tests");

  // search
  int search_d = 0;
  int search_target = 0;
  std::string search_case;
  std::uint64_t node_limit = 0;
  double time_limit = 0;
  std::string checkpoint_path;
  std::string resume_path;
  std::string certificate_path;
  int jobs = 1;
  bool no_symmetry = false;
  auto* search = app.add_subcommand("search", "Exhaustive case search for systems of size <= target");
  search->add_option("--d", search_d, "Dimension");
  search->add_option("--target", search_target, "Largest size to refute");
  search->add_option("--case", search_case, "Single case l,b,j");
  search->add_option("--node-limit", node_limit, "Nodes per case, counted across resumes (0 = none)");
  search->add_option("--time-limit", time_limit, "Seconds per case invocation (0 = none)");
  search->add_option("--checkpoint", checkpoint_path, "Write a resumable checkpoint here");
  search->add_option("--resume", resume_path, "Continue from a checkpoint");
  search->add_option("-o,--output", certificate_path, "Certificate path (default stdout)");
  search->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  search->add_flag("--no-symmetry", no_symmetry, "Disable first-branch symmetry reduction");

  // cases
  int cases_d = 0;
  int cases_target = 0;
  bool cases_elementary = false;
  auto* cases_cmd = app.add_subcommand("cases", "List the (l,b,j) cases for a target");
  cases_cmd->add_option("--d", cases_d, "Dimension")->required();
  cases_cmd->add_option("--target", cases_target, "Largest size to refute")->required();
  cases_cmd->add_flag("--elementary", cases_elementary, "List the elementary cases instead");

  std::vector<const char*> argv{"octa"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  const auto finish = [&](const std::string& outcome) {
    manifest.outcome = outcome;
    manifest.wall_seconds = elapsed(started);
  };

  try {
    if (verify->parsed()) {
      const EdgeSet h = load_edge_list(verify_path);
      const auto isolated = find_isolated_vertex(h);
      const auto verdict = is_octahedral_system(h);
      const auto lonely = isolated_edges(h);
      out << "d=" << h.shape().dimension() << " edges=" << h.size() << '\n';
      out << "property 1 (no isolated vertex): " << (isolated ? "fails, isolated " + describe(*isolated) : "holds")
          << '\n';
      out << "property 2 (octahedral parity): "
          << (verdict.holds() ? std::string("holds") : "fails on octahedron " + to_string(*verdict.counterexample))
          << '\n';
      out << "isolated edges: " << lonely.size();
      for (const Edge& e : lonely) out << ' ' << to_string(e);
      out << '\n';
      out << "score: " << score(h) << '\n';
      return !isolated && verdict.holds() ? kSuccess : kFails;
    }

    if (score_cmd->parsed()) {
      out << score(load_edge_list(score_path)) << '\n';
      return kSuccess;
    }

    if (table->parsed()) {
      std::optional<EdgeSet> h;
      if (!table_path.empty()) {
        if (table_l >= 0 || table_d) throw InputError("table takes either a file or --d with --initial-l");
        report::add_input(manifest, table_path);
        h = load_edge_list(table_path);
      } else {
        if (table_l < 0 || table_d == 0) throw InputError("table needs a file or both --d and --initial-l");
        const Shape shape(table_d);
        if (table_l > shape.points_per_colour()) throw InputError("--initial-l must be at most d+1");
        h.emplace(shape);
        for (int x = 0; x < table_l; ++x) {
          std::vector<int> choice(static_cast<std::size_t>(shape.colours()), 0);
          choice[0] = x;
          h->add(Edge(shape, choice));
        }
      }
      const LargeTable large = build_large_table(*h);
      finish("score " + std::to_string(large.score()));
      out << report::manifest_comment(manifest) << '\n';
      print_small_table(out, small_table_of(large));
      if (table_large) {
        out << '\n';
        print_large_table(out, large);
      }
      out << "score: " << large.score() << '\n';
      return kSuccess;
    }

    if (geom_cmd->parsed()) {
      if (geom_random->parsed() || geom_clustered->parsed()) {
        const Shape shape(geom_d);
        geom::Configuration c = geom_random->parsed() ? geom::random_configuration(shape, geom_seed)
                                                       : geom::clustered_configuration(shape);
        if (geom_random->parsed()) manifest.seed = geom_seed;
        finish(geom_random->parsed() ? "valid configuration" : "clustered configuration");
        std::ostringstream text;
        text << report::manifest_comment(manifest) << '\n';
        geom::write_configuration(text, c);
        emit(geom_output, text.str(), out);
        return kSuccess;
      }
      report::add_input(manifest, geom_path);
      const geom::Configuration c = load_configuration(geom_path);
      if (const auto bad = geom::first_invalid_colour(c); bad && !allow_invalid) {
        throw InputError(geom_path + ": origin is not interior to the hull of colour " + std::to_string(*bad) +
                         " (use --allow-invalid to count anyway)");
      }
      EdgeSet h(c.shape());
      try {
        h = geom::configuration_hypergraph(c);
      } catch (const geom::DegeneracyError& ex) {
        throw InputError(geom_path + ": " + ex.what());
      }
      if (geom_count->parsed()) {
        out << h.size() << '\n';
        return kSuccess;
      }
      finish(std::to_string(h.size()) + " colourful simplices contain the origin");
      std::ostringstream text;
      text << report::manifest_comment(manifest) << '\n';
      write_edge_list(text, h);
      emit(geom_output, text.str(), out);
      return kSuccess;
    }

    if (oracle->parsed()) {
      OracleOptions options;
      options.use_symmetry = !oracle_no_symmetry;
      options.work_budget = oracle_budget;
      const MinSizeResult r = brute_force_min_size(Shape(oracle_d), oracle_max, options);
      out << "sets examined: " << r.sets_examined << '\n';
      if (!r.witness) {
        out << "no system without isolated vertex has at most " << oracle_max << " edges\n";
        return kSuccess;
      }
      out << "smallest system without isolated vertex: " << r.witness->size() << " edges\n";
      write_edge_list(out, *r.witness);
      return kFails;
    }

    if (search->parsed()) {
      std::optional<report::SearchRun> resume;
      if (!resume_path.empty()) {
        report::add_input(manifest, resume_path);
        try {
          resume = report::read_checkpoint_document(read_file(resume_path));
        } catch (const report::CorruptDocument& ex) {
          throw InputError(resume_path + ": corrupt checkpoint: " + ex.what());
        }
        if (!search_d) search_d = resume->d;
        if (!search_target) search_target = resume->target;
      }
      if (!search_d || !search_target) throw InputError("search needs --d and --target (or --resume)");
      (void)Shape(search_d);
      if (search_target < 1) throw InputError("--target must be positive");
      std::optional<CaseParams> only;
      if (!search_case.empty()) only = parse_case(search_case, search_target);
      if (only && !valid_case(search_d, *only)) {
        err << "warning: case " << to_string(*only) << " is outside the generated decomposition for d="
            << search_d << '\n';
      }
      Budget budget{node_limit, time_limit};
      SearchOptions options;
      options.jobs = jobs;
      options.first_branch_symmetry = !no_symmetry;
      report::SearchRun run;
      try {
        run = run_search(search_d, search_target, only, budget, options, resume);
      } catch (const std::invalid_argument& ex) {
        throw InputError(ex.what());
      }
      const int code = exit_code_for(run);
      finish(code == kSuccess ? "exhausted" : code == kFails ? "witness" : "budget-exceeded");
      if (!checkpoint_path.empty()) {
        emit(checkpoint_path, report::checkpoint_document(run, manifest).dump(2) + "\n", out);
      }
      emit(certificate_path, report::certificate_document(run, manifest).dump(2) + "\n", out);
      return code;
    }

    if (cases_cmd->parsed()) {
      (void)Shape(cases_d);
      const auto list =
          cases_elementary ? generate_elementary_cases(cases_d, cases_target) : generate_cases(cases_d, cases_target);
      for (const CaseParams& c : list) {
        out << '(' << c.l << ',' << c.b << ',' << c.j << ')';
        if (!cases_elementary) out << " lower bound " << case_lower_bound(cases_d, c.l, c.b, c.j);
        out << '\n';
      }
      return kSuccess;
    }
  } catch (const InputError& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const std::runtime_error& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace octa::cli
