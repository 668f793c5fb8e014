#include "qscat/cli.hpp"

int main(int argc, char** argv) { return qscat::run_cli(argc, argv); }
