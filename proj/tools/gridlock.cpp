#include "gridlock/cli.hpp"

#include <iostream>

#ifndef GRIDLOCK_DEFAULT_CACHE_DIR
#define GRIDLOCK_DEFAULT_CACHE_DIR "data/cache"
#endif

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gridlock::run_cli(args, {std::cin, std::cout, std::cerr, GRIDLOCK_DEFAULT_CACHE_DIR});
}
