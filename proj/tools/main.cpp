#include "curvestats/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return curvestats::cli::run_cli(args);
}
