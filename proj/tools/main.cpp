// SPDX-License-Identifier: MIT
#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return stackel::cli::main_entry(argc, argv, std::cout, std::cerr);
}
