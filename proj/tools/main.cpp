// Command-line front end: check monads and algebras, lift relations, derive
// and verify (weak) distributive laws, build weak liftings and composites,
// and run the worked demos.  Verbs are filled in alongside the library.
#include <CLI11.hpp>

#include <cstdio>

#include "weaklaw/finset.hpp"

int main(int argc, char** argv) {
    CLI::App app{"weaklaw: monads on finite sets, checked exhaustively"};
    app.require_subcommand(0, 1);
    CLI11_PARSE(app, argc, argv);
    if (app.get_subcommands().empty()) {
        std::puts("no verb given; run with --help");
        return 0;
    }
    return 0;
}
