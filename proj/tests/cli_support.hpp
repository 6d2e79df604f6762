#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace cli_support {

namespace fs = std::filesystem;

inline fs::path scratch(const std::string& tag)
{
    std::random_device rd;
    const auto dir = fs::temp_directory_path() / ("chiral_berry_" + tag + "_" + std::to_string(rd()));
    fs::create_directories(dir);
    return dir;
}

inline void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

inline std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Runs the CLI and returns its exit status. stderr is kept in dir/stderr.txt.
inline int run_cli(const std::string& args, const fs::path& log_dir)
{
    const std::string cmd = std::string("\"") + CHIRAL_BERRY_EXE + "\" " + args + " > \""
                          + (log_dir / "stdout.txt").string() + "\" 2> \"" + (log_dir / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace cli_support
