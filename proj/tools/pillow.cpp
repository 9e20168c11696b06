#include "lattes/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return lattes::cli::run(argc, argv, std::cout, std::cerr);
}
