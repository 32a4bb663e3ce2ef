#include <string>
#include <vector>

#include "evidencer/bench.hpp"

int main(int argc, char** argv) {
    return evid::bench::cli_run(std::vector<std::string>(argv + 1, argv + argc));
}
