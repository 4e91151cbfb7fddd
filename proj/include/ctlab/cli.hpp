#ifndef CTLAB_CLI_HPP
#define CTLAB_CLI_HPP

#include <optional>
#include <string>
#include <vector>

namespace ctlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUserError = 2;
inline constexpr int kExitUndetermined = 3;
inline constexpr int kExitInvariant = 4;

struct Report {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Runs one ct-lab invocation. `args` excludes the program name.
/// `env_jet_cap` is the raw value of CT_LAB_JET_CAP, if set; --jet-cap wins.
Report run(const std::vector<std::string>& args, const std::optional<std::string>& env_jet_cap = std::nullopt);

}  // namespace ctlab::cli

#endif
