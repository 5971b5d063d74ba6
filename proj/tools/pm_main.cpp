#include "pm/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return pm::run(argc, argv, std::cout, std::cerr);
}
