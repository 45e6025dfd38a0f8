#ifndef SDND_CLI_HPP
#define SDND_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace sdnd::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kRuntime = 2 };

// Arguments exclude the program and subcommand names.
int cmd_topo(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
// sweep over greedy, static, random and jsq
int cmd_compare(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace sdnd::cli

#endif  // SDND_CLI_HPP
