#include "dlct/cli.hpp"

int main(int argc, char** argv) { return dlct::cli::cli_main(argc, argv); }
