#ifndef OCTA_CLI_HPP
#define OCTA_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "octa/report.hpp"
#include "octa/search.hpp"

namespace octa::cli {

enum ExitCode : int {
  kSuccess = 0,
  kFails = 1,  ///< property fails, or a witness was found
  kUsage = 2,  ///< usage or input error
  kBudget = 3,
};

/// Runs one subcommand; `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Cases searched for (d, target): a single case when `only` is set, otherwise
/// the generated decomposition. Cases already settled in `resume` are reused,
/// budget-exceeded ones continue from their checkpoint.
report::SearchRun run_search(int d, int target, const std::optional<CaseParams>& only, const Budget& budget,
                             const SearchOptions& options, const std::optional<report::SearchRun>& resume = {});

/// 0 when every case was exhausted, 1 when any produced a witness, 3 otherwise.
int exit_code_for(const report::SearchRun& run);

}  // namespace octa::cli

#endif  // OCTA_CLI_HPP
