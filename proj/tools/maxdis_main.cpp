#include "maxdis/cli.hpp"

int main(int argc, char** argv) { return maxdis::cli::run_cli(argc, argv); }
