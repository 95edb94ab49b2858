#include "attnkern/cli.hpp"

int main(int argc, char** argv) { return attnkern::run_cli(argc, argv); }
