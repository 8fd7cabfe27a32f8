#pragma once

// Runs the qladder binary through the shell and captures its streams.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace qtest {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// `env` is a prefix such as "QLADDER_BACKEND=float"; `args` is appended verbatim.
inline CliRun run_cli(const std::string& args, const std::string& env = "")
{
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path();
    const std::string tag = std::to_string(::getpid()) + "_" + std::to_string(counter++);
    const auto out = dir / ("qladder_out_" + tag);
    const auto err = dir / ("qladder_err_" + tag);
    const std::string cmd = (env.empty() ? std::string("env -u QLADDER_BACKEND ") : "env " + env + " ") + "'" +
                            QLADDER_BIN + "' " + args + " > '" + out.string() + "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    std::filesystem::remove(out);
    std::filesystem::remove(err);
    return r;
}

} // namespace qtest
