#include "twinfocal/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return twinfocal::cli::run(argc, argv, std::cout, std::cerr);
}
