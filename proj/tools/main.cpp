#include <iostream>
#include <string>
#include <vector>

#include "cardioload/cli/commands.hpp"

int main(int argc, char** argv)
{
    const std::vector<std::string> args(argv, argv + argc);
    return cardioload::cli::run(args, std::cout, std::cerr);
}
