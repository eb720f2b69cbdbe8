#include <iostream>
#include <string>
#include <vector>

#include "tw/model_io.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return tw::run_command(args, std::cout, std::cerr);
}
