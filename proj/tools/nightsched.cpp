// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "nightsched/cli.hpp"

int main(int argc, char** argv)
{
    return nightsched::run_cli(argc, argv, std::cout, std::cerr);
}
