// Command line front end.  All real work lives in the library; this file
// parses flags, picks the output format, and maps exception classes to the
// documented exit codes: 0 all checks pass, 1 a computed value missed its
// check, 2 bad usage, 3 I/O trouble.

#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "hedgelab/commands.hpp"
#include "hedgelab/errors.hpp"
#include "hedgelab/report.hpp"

int main(int argc, char** argv) {
    using namespace hedgelab;

    CLI::App app{"hedgelab: hedging analysis for quantum coin flipping"};
    app.require_subcommand(1);

    bool json_out = false;

    CoinflipArgs cf;
    CLI::App* c_coin = app.add_subcommand(
        "coinflip", "cheating value of repeated coin flips");
    c_coin->add_option("-n,--games", cf.games, "number of flips")
        ->capture_default_str();
    c_coin->add_option("-k,--wins", cf.wins, "wins required")
        ->capture_default_str();
    c_coin
        ->add_option("--mode", cf.mode,
                     "parallel | independent | sequential")
        ->capture_default_str();
    c_coin->add_flag("--json", json_out, "emit JSON instead of a table");

    TvalArgs tv;
    CLI::App* c_tval = app.add_subcommand(
        "tval", "optimal adaptive value of a payoff over outcome strings");
    c_tval->add_option("--q0", tv.q0, "max probability of forcing outcome 0")
        ->required();
    c_tval->add_option("--q1", tv.q1, "max probability of forcing outcome 1")
        ->required();
    c_tval->add_option("--target", tv.target_path, "payoff file (JSON)")
        ->required();
    c_tval->add_flag("--tree", tv.tree, "render the strategy tree");
    c_tval->add_flag("--oracle", tv.oracle,
                     "cross-check against brute force (n <= 4)");
    c_tval->add_flag("--json", json_out, "emit JSON instead of a table");

    CertifyArgs ct;
    CLI::App* c_cert = app.add_subcommand(
        "certify", "solve a pinned SDP instance and check its certificate");
    c_cert->add_option("--instance", ct.instance, "bob1 | par3")
        ->capture_default_str();
    c_cert->add_flag("--sabotage", ct.sabotage)->group("");
    c_cert->add_flag("--json", json_out, "emit JSON instead of a table");

    ClassicalArgs cl;
    CLI::App* c_cls = app.add_subcommand(
        "classical", "exhaustive values of the two classical bit games");
    c_cls->add_option("--game", cl.game, "1 or 2")->capture_default_str();
    CLI::Option* popt =
        c_cls->add_option("--p", cl.p, "game 2 parameter in [0,1)");
    c_cls->add_flag("--table", cl.table, "include full strategy tables");
    c_cls->add_flag("--json", json_out, "emit JSON instead of a table");

    ReproduceArgs rp;
    CLI::App* c_rep = app.add_subcommand(
        "reproduce", "run every built-in acceptance check");
    c_rep->add_option("--out", rp.out_dir,
                      "directory for per-check JSON files");
    c_rep->add_flag("--sabotage", rp.sabotage)->group("");
    c_rep->add_flag("--json", json_out, "emit JSON instead of a table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // help requested
        app.exit(e);
        return 2;
    }

    try {
        Report r;
        if (c_coin->parsed()) {
            r = cmd_coinflip(cf);
        } else if (c_tval->parsed()) {
            r = cmd_tval(tv);
        } else if (c_cert->parsed()) {
            r = cmd_certify(ct);
        } else if (c_cls->parsed()) {
            cl.has_p = popt->count() > 0;
            r = cmd_classical(cl);
        } else {
            r = cmd_reproduce(rp);
        }

        if (json_out)
            std::cout << to_json(r).dump(2) << "\n";
        else
            std::cout << render_table(r);
        return r.status == "ok" ? 0 : 1;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
