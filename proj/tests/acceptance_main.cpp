// Acceptance gate: one line per check, nonzero exit if any fails.  Checks
// 1 through 14 run in process; check 15 spawns the installed CLI binary
// (path in HEDGELAB_CLI) and requires a clean exit within a minute.  Run
// with no arguments for the full battery, or pass check ids.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "hedgelab/criteria.hpp"

namespace {

struct Line {
    int id = 0;
    std::string title;
    bool pass = false;
    long long wall_ms = 0;
    std::string detail;
};

Line run_cli_reproduce() {
    Line line;
    line.id = 15;
    line.title = "reproduce command exits cleanly within a minute";

    const char* cli = std::getenv("HEDGELAB_CLI");
    if (cli == nullptr || *cli == '\0') {
        line.detail = "HEDGELAB_CLI is not set";
        return line;
    }

    const std::string cmd = std::string("\"") + cli +
                            "\" reproduce --json --out "
                            "acceptance_reproduce_out "
                            "> acceptance_reproduce_log.json 2>&1";
    const auto t0 = std::chrono::steady_clock::now();
    const int rc = std::system(cmd.c_str());
    line.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();

    int code = -1;
    if (rc != -1 && WIFEXITED(rc)) code = WEXITSTATUS(rc);
    line.pass = code == 0 && line.wall_ms <= 60000;
    line.detail = "exit code " + std::to_string(code) + ", wall " +
                  std::to_string(line.wall_ms) +
                  " ms, log in acceptance_reproduce_log.json";
    return line;
}

void print_line(const Line& line) {
    std::printf("criterion %02d: %s  %s  [%lld ms]\n", line.id,
                line.pass ? "PASS" : "FAIL", line.title.c_str(),
                line.wall_ms);
    if (!line.detail.empty()) std::printf("    %s\n", line.detail.c_str());
    std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> ids;
    if (argc > 1) {
        for (int i = 1; i < argc; ++i) {
            const int id = std::atoi(argv[i]);
            if (id < 1 || id > hedgelab::kCriterionCount + 1) {
                std::fprintf(stderr, "bad check id: %s\n", argv[i]);
                return 2;
            }
            ids.push_back(id);
        }
    } else {
        for (int id = 1; id <= hedgelab::kCriterionCount + 1; ++id)
            ids.push_back(id);
    }

    bool all_pass = true;
    for (int id : ids) {
        Line line;
        if (id == hedgelab::kCriterionCount + 1) {
            line = run_cli_reproduce();
        } else {
            const hedgelab::CriterionResult cr = hedgelab::run_criterion(id);
            line.id = cr.id;
            line.title = cr.title;
            line.pass = cr.pass;
            line.wall_ms = cr.wall_ms;
            line.detail = cr.detail;
        }
        print_line(line);
        all_pass = all_pass && line.pass;
    }
    return all_pass ? 0 : 1;
}
