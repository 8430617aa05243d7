#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sqcert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // invalid certificate, unforced values
inline constexpr int kExitUsage = 2;

/// Environment variable overriding the search branch cap.
inline constexpr const char* kBranchCapEnv = "SQCERT_BRANCH_CAP";

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int main(int argc, char** argv);

}  // namespace sqcert::cli
