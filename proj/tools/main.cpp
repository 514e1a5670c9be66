#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include "cli/cli.hpp"

int main(int argc, char** argv) {
    const bool color = std::getenv("NO_COLOR") == nullptr && isatty(STDERR_FILENO);
    return relent::cli::run({argv + 1, argv + argc}, std::cout, std::cerr, color);
}
