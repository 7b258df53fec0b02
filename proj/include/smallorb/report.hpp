/*
 * Command surface: every subcommand produces a machine-readable report
 * (JSON) and a text rendering, plus an exit code: 0 = success/agreement,
 * 1 = input error, 2 = a cross-check disagreement or falsified diagnostic.
 */

#ifndef SMALLORB_REPORT_HPP
#define SMALLORB_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace smallorb {

inline constexpr std::uint64_t kDefaultSeed = 12345;

struct CommandOptions {
  std::string subcommand;  // validate | search | hvector | homology | toric |
                           // ring | pi1orb | oracle | crosscheck | generate
  std::string input_path;  // file path, or "-" for stdin
  std::string input_text;  // already-loaded document (takes precedence)
  std::string family;                // generate only
  std::vector<long long> params;     // generate only
  std::string coeff = "all";         // Z | Q | Z2 | all
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> limit;  // search only
  std::string format = "text";       // text | json
};

struct CommandResult {
  int exit_code = 0;
  nlohmann::json report;
  std::string rendered;  // per requested format
};

CommandResult run_command(const CommandOptions& opts);

}  // namespace smallorb

#endif  // SMALLORB_REPORT_HPP
