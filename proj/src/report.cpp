#include "octa/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

namespace octa::report {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, value >>= 4) s[static_cast<std::size_t>(i)] = digits[value & 0xF];
  return s;
}

RunManifest start_manifest(const std::vector<std::string>& command_line) {
  RunManifest m;
  m.command_line = command_line;
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  m.started_at = buf;
  return m;
}

void add_input(RunManifest& manifest, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream bytes;
  bytes << in.rdbuf();
  manifest.inputs.push_back({path, hex64(fnv1a64(bytes.str()))});
}

Json to_json(const RunManifest& m) {
  Json inputs = Json::array();
  for (const auto& in : m.inputs) inputs.push_back({{"path", in.path}, {"fnv1a64", in.fnv1a64}});
  return Json{{"toolkit_version", m.toolkit_version},
              {"command_line", m.command_line},
              {"inputs", inputs},
              {"seed", m.seed ? Json(*m.seed) : Json(nullptr)},
              {"started_at", m.started_at},
              {"wall_seconds", m.wall_seconds},
              {"outcome", m.outcome}};
}

std::string manifest_comment(const RunManifest& m) { return "# manifest " + to_json(m).dump(); }

Json to_json(const CaseParams& c) { return Json{{"l", c.l}, {"b", c.b}, {"j", c.j}, {"target", c.target}}; }

Json to_json(const SearchStats& s) {
  Json prunes;
  for (int r = 0; r < kPruneReasons; ++r) prunes[to_string(static_cast<PruneReason>(r))] = s.prunes[r];
  return Json{{"nodes", s.nodes},
              {"prunes", prunes},
              {"size_limit", s.size_limit},
              {"dead_ends", s.dead_ends},
              {"table_branches", s.table_branches},
              {"isolated_branches", s.isolated_branches},
              {"free_branches", s.free_branches},
              {"children", s.children},
              {"leaf_checks", s.leaf_checks},
              {"max_depth", s.max_depth}};
}

Json to_json(const Checkpoint& c) {
  return Json{{"d", c.d},
              {"case", to_json(c.params)},
              {"first_branch_symmetry", c.first_branch_symmetry},
              {"subcase", c.subcase},
              {"trail", c.trail},
              {"statistics", to_json(c.stats)}};
}

namespace {

Json rows_json(RowMask mask, int d) {
  Json rows = Json::array();
  for (int r = 1; r <= d; ++r) {
    if (mask & (RowMask{1} << (r - 1))) rows.push_back(r);
  }
  return rows;
}

}  // namespace

Json to_json(const Certificate& c) {
  Json witness(nullptr);
  if (c.witness) {
    Json edges = Json::array();
    for (const Edge& e : c.witness->edges()) edges.push_back(to_string(e));
    witness = Json{{"size", c.witness->size()}, {"odd_rows", rows_json(c.witness_odd_rows, c.d)}, {"edges", edges}};
  }
  return Json{{"d", c.d},
              {"case", to_json(c.params)},
              {"outcome", to_string(c.outcome)},
              {"witness", witness},
              {"checkpoint", c.checkpoint ? to_json(*c.checkpoint) : Json(nullptr)},
              {"statistics", to_json(c.stats)},
              {"wall_seconds", c.wall_seconds}};
}

namespace {

template <typename T>
T field(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& ex) {
    throw CorruptDocument(std::string("field '") + key + "': " + ex.what());
  }
}

const Json& object(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw CorruptDocument(std::string("missing field '") + key + "'");
  return j.at(key);
}

Outcome outcome_from(const std::string& s) {
  for (Outcome o : {Outcome::exhausted, Outcome::witness, Outcome::budget_exceeded}) {
    if (s == to_string(o)) return o;
  }
  throw CorruptDocument("unknown outcome '" + s + "'");
}

}  // namespace

CaseParams case_from_json(const Json& j) {
  return CaseParams{field<int>(j, "l"), field<int>(j, "b"), field<int>(j, "j"), field<int>(j, "target")};
}

SearchStats stats_from_json(const Json& j) {
  SearchStats s;
  s.nodes = field<std::uint64_t>(j, "nodes");
  const Json& prunes = object(j, "prunes");
  for (int r = 0; r < kPruneReasons; ++r) s.prunes[r] = field<std::uint64_t>(prunes, to_string(static_cast<PruneReason>(r)));
  s.size_limit = field<std::uint64_t>(j, "size_limit");
  s.dead_ends = field<std::uint64_t>(j, "dead_ends");
  s.table_branches = field<std::uint64_t>(j, "table_branches");
  s.isolated_branches = field<std::uint64_t>(j, "isolated_branches");
  s.free_branches = field<std::uint64_t>(j, "free_branches");
  s.children = field<std::uint64_t>(j, "children");
  s.leaf_checks = field<std::uint64_t>(j, "leaf_checks");
  s.max_depth = field<int>(j, "max_depth");
  return s;
}

Checkpoint checkpoint_from_json(const Json& j) {
  Checkpoint c;
  c.d = field<int>(j, "d");
  c.params = case_from_json(object(j, "case"));
  c.first_branch_symmetry = field<bool>(j, "first_branch_symmetry");
  c.subcase = field<int>(j, "subcase");
  c.trail = field<std::vector<int>>(j, "trail");
  c.stats = stats_from_json(object(j, "statistics"));
  if (c.subcase < 0) throw CorruptDocument("negative subcase index");
  for (int t : c.trail) {
    if (t < 0) throw CorruptDocument("negative index in trail");
  }
  return c;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.d = field<int>(j, "d");
  c.params = case_from_json(object(j, "case"));
  c.outcome = outcome_from(field<std::string>(j, "outcome"));
  c.stats = stats_from_json(object(j, "statistics"));
  c.wall_seconds = field<double>(j, "wall_seconds");
  try {
    const Shape shape(c.d);
    const Json& w = object(j, "witness");
    if (!w.is_null()) {
      EdgeSet h(shape);
      for (const auto& e : field<std::vector<std::string>>(w, "edges")) h.add(parse_edge(shape, e));
      c.witness = std::move(h);
      for (int r : field<std::vector<int>>(w, "odd_rows")) {
        if (r < 1 || r > c.d) throw CorruptDocument("odd row out of range");
        c.witness_odd_rows |= RowMask{1} << (r - 1);
      }
    }
  } catch (const std::logic_error& ex) {
    throw CorruptDocument(std::string("witness: ") + ex.what());
  }
  const Json& cp = object(j, "checkpoint");
  if (!cp.is_null()) c.checkpoint = checkpoint_from_json(cp);
  if ((c.outcome == Outcome::witness) != c.witness.has_value()) {
    throw CorruptDocument("witness present iff outcome is witness");
  }
  if ((c.outcome == Outcome::budget_exceeded) != c.checkpoint.has_value()) {
    throw CorruptDocument("checkpoint present iff outcome is budget-exceeded");
  }
  return c;
}

namespace {

Json run_body(const SearchRun& run) {
  Json cases = Json::array();
  for (const auto& c : run.certificates) cases.push_back(to_json(c));
  return Json{{"d", run.d},
              {"target", run.target},
              {"first_branch_symmetry", run.first_branch_symmetry},
              {"proven_lower_bound", run.proven_lower_bound ? Json(*run.proven_lower_bound) : Json(nullptr)},
              {"note", run.note},
              {"cases", cases}};
}

}  // namespace

Json certificate_document(const SearchRun& run, const RunManifest& manifest) {
  Json doc{{"format", kCertificateFormat}, {"version", kFormatVersion}, {"manifest", to_json(manifest)}};
  const Json body = run_body(run);
  for (const auto& [k, v] : body.items()) doc[k] = v;
  return doc;
}

Json checkpoint_document(const SearchRun& run, const RunManifest& manifest) {
  Json doc{{"format", kCheckpointFormat}, {"version", kFormatVersion}, {"manifest", to_json(manifest)}};
  const Json body = run_body(run);
  doc["run"] = body;
  doc["checksum"] = hex64(fnv1a64(body.dump()));
  return doc;
}

SearchRun read_checkpoint_document(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw CorruptDocument(std::string("not valid JSON: ") + ex.what());
  }
  if (!doc.is_object()) throw CorruptDocument("checkpoint is not a JSON object");
  if (field<std::string>(doc, "format") != kCheckpointFormat) throw CorruptDocument("not a checkpoint file");
  if (field<int>(doc, "version") != kFormatVersion) throw CorruptDocument("unsupported checkpoint version");
  const Json& body = object(doc, "run");
  if (field<std::string>(doc, "checksum") != hex64(fnv1a64(body.dump()))) {
    throw CorruptDocument("checksum mismatch; the file was modified or truncated");
  }
  SearchRun run;
  run.d = field<int>(body, "d");
  run.target = field<int>(body, "target");
  run.first_branch_symmetry = field<bool>(body, "first_branch_symmetry");
  run.note = field<std::string>(body, "note");
  const Json& bound = object(body, "proven_lower_bound");
  if (!bound.is_null()) {
    if (!bound.is_number_integer()) throw CorruptDocument("'proven_lower_bound' is not an integer");
    run.proven_lower_bound = bound.get<int>();
  }
  const Json& cases = object(body, "cases");
  if (!cases.is_array()) throw CorruptDocument("'cases' is not an array");
  for (const Json& c : cases) {
    Certificate cert = certificate_from_json(c);
    if (cert.d != run.d || cert.params.target != run.target) throw CorruptDocument("case does not match run header");
    if (cert.checkpoint && (cert.checkpoint->d != run.d || !(cert.checkpoint->params == cert.params))) {
      throw CorruptDocument("checkpoint does not match its case");
    }
    run.certificates.push_back(std::move(cert));
  }
  return run;
}

}  // namespace octa::report
