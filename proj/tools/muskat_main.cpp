#include "muskat/cli.hpp"

int main(int argc, char** argv) { return muskat::cli::run_cli(argc, argv); }
