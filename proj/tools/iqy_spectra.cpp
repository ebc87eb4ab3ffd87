#include "iqy/cli.hpp"

int main(int argc, char** argv) {
    return iqy::cli::run(argc, argv);
}
