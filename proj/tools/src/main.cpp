// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "vilfra_cli/cli.hpp"

int main(int argc, char** argv) {
    return vilfra::cli::dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
