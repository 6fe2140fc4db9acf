#include "relief/cli.hpp"

int main(int argc, char** argv) { return relief::run_cli(argc, argv); }
