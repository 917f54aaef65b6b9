#include "bolab/cli.hpp"

int main(int argc, char** argv) { return bolab::cli::run(argc, argv); }
