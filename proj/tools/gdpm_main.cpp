#include "gdpm/cli.hpp"

int main(int argc, char** argv) {
    return gdpm::run_cli(argc, argv);
}
