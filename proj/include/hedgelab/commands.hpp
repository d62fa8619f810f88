#pragma once

// Implementations behind the hedgelab CLI subcommands.  Each cmd_* function
// runs its checks and returns a Report; the binary in tools/ only parses
// flags, picks the output format, and maps exceptions to exit codes.

#include <string>

#include "hedgelab/report.hpp"

namespace hedgelab {

struct CoinflipArgs {
    int games = 1;
    int wins = 1;
    std::string mode = "parallel";  // parallel | independent | sequential
};

struct TvalArgs {
    double q0 = 0.0;
    double q1 = 0.0;
    std::string target_path;
    bool tree = false;    // render the solved strategy tree as an artifact
    bool oracle = false;  // cross-check against brute force (n <= 4)
};

struct CertifyArgs {
    std::string instance = "bob1";  // bob1 | par3
    bool sabotage = false;          // scale the objective to force a failure
};

struct ClassicalArgs {
    int game = 1;
    double p = 0.0;
    bool has_p = false;
    bool table = false;  // include the full strategy enumeration
};

struct ReproduceArgs {
    std::string out_dir;  // empty: no per-criterion files
    bool sabotage = false;
};

Report cmd_coinflip(const CoinflipArgs& args);
Report cmd_tval(const TvalArgs& args);
Report cmd_certify(const CertifyArgs& args);
Report cmd_classical(const ClassicalArgs& args);
Report cmd_reproduce(const ReproduceArgs& args);

}  // namespace hedgelab
