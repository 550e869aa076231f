#include <iostream>
#include <string>
#include <vector>

#include "ellconn/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ellconn::cli::run(args, std::cout, std::cerr);
}
