#include "zonorun/cli.hpp"

int main(int argc, char** argv) { return zonorun::cli_dispatch(argc, argv); }
