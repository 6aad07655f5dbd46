#include "sqspan/cli.hpp"

int main(int argc, char** argv) { return sqspan::run_cli(argc, argv); }
