#include "cli.hpp"

int main(int argc, char **argv) {
    return l0dag::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
