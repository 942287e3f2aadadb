#ifndef OCTA_REPORT_HPP
#define OCTA_REPORT_HPP

// JSON encodings of search results, checkpoints and run manifests.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "octa/search.hpp"

namespace octa::report {

inline constexpr const char* kToolkitVersion = "0.1.0";
inline constexpr int kFormatVersion = 1;
inline constexpr const char* kCertificateFormat = "octa-certificate";
inline constexpr const char* kCheckpointFormat = "octa-checkpoint";

using Json = nlohmann::ordered_json;

/// 64-bit FNV-1a, printed as 16 lowercase hex digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

struct InputDigest {
  std::string path;
  std::string fnv1a64;
};

struct RunManifest {
  std::string toolkit_version = kToolkitVersion;
  std::vector<std::string> command_line;
  std::vector<InputDigest> inputs;
  std::optional<std::uint64_t> seed;
  std::string started_at;  ///< UTC, ISO 8601
  double wall_seconds = 0;
  std::string outcome;
};

/// Manifest with the command line and start time filled in.
RunManifest start_manifest(const std::vector<std::string>& command_line);
/// Reads the file and records its digest; throws std::runtime_error if unreadable.
void add_input(RunManifest& manifest, const std::string& path);

Json to_json(const RunManifest& m);
/// Single '#'-prefixed line for embedding in text artifacts.
std::string manifest_comment(const RunManifest& m);

Json to_json(const CaseParams& c);
Json to_json(const SearchStats& s);
Json to_json(const Checkpoint& c);
Json to_json(const Certificate& c);

/// Raised for any structural problem in a checkpoint or certificate document.
class CorruptDocument : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CaseParams case_from_json(const Json& j);
SearchStats stats_from_json(const Json& j);
Checkpoint checkpoint_from_json(const Json& j);
Certificate certificate_from_json(const Json& j);

/// A multi-case search run: certificates in case order plus the bound it settles.
struct SearchRun {
  int d = 0;
  int target = 0;
  bool first_branch_symmetry = true;
  std::vector<Certificate> certificates;
  std::optional<int> proven_lower_bound;
  std::string note;
};

/// Certificate document: format tag, version, manifest and the run.
Json certificate_document(const SearchRun& run, const RunManifest& manifest);

/// Checkpoint document: like the certificate document plus a checksum over
/// the case records, so that edited or truncated files are rejected.
Json checkpoint_document(const SearchRun& run, const RunManifest& manifest);
SearchRun read_checkpoint_document(const std::string& text);

}  // namespace octa::report

#endif  // OCTA_REPORT_HPP
