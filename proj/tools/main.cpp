#include "seisctl/cli.hpp"

int main(int argc, char** argv) { return seisctl::cli_main(argc, argv); }
