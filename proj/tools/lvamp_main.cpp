#include "lvamp/cli.hpp"

int main(int argc, char** argv) { return lvamp::cli_dispatch(argc, argv); }
