#include <iostream>

#include "tripartite/cli.hpp"

int main(int argc, char **argv)
{
    return tripartite::cli::run(argc, argv, std::cout, std::cerr);
}
