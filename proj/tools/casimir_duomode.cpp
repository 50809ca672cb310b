#include <iostream>

#include "casimir_duomode/cli/commands.hpp"

int main(int argc, char** argv) {
    return casimir_duomode::cli::run(argc, argv, {std::cout, std::cerr});
}
