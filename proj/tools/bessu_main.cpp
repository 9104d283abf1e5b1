#include "bessu/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return bessu::run_cli(argc, argv, std::cout, std::cerr);
}
