#include "fitstar/cli.hpp"

int main(int argc, char** argv) { return fitstar::cli_main(argc, argv); }
