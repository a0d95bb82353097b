#include <iostream>

#include "k3arith/cli/dispatch.hpp"

int main(int argc, char ** argv)
{
    return k3::cli::dispatch(argc, argv, std::cout, std::cerr);
}
