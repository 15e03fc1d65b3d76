#include "maser/cli.hpp"

int main(int argc, char** argv) { return maser::run_command(argc, argv); }
