#include "psieve/cli.hpp"

int main(int argc, char** argv) { return psieve::cli_dispatch(argc, argv); }
