#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "fol/io.hpp"

namespace fol::test {

struct CliRun {
    int exit_code = -1;
    std::string stderr_text;
};

// Fresh scratch directory, removed on destruction.
class ScratchDir {
public:
    explicit ScratchDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("fol_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~ScratchDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::string operator/(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

inline std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') out += "'\\''";
        else out += c;
    }
    return out + "'";
}

// Runs the CLI in dir with args; stdout is discarded, stderr captured.
inline CliRun run_cli(const ScratchDir& dir, const std::vector<std::string>& args) {
    std::string cmd = "cd " + shell_quote(dir.path().string()) + " && " + shell_quote(FOL_CLI_PATH);
    for (const auto& a : args) cmd += " " + shell_quote(a);
    const std::string err = dir / ".stderr";
    cmd += " >/dev/null 2>" + shell_quote(err);
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (std::filesystem::exists(err)) r.stderr_text = io::read_file(err);
    return r;
}

}  // namespace fol::test
