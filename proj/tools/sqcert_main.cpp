#include "sqcert/cli.hpp"

int main(int argc, char** argv) { return sqcert::cli::main(argc, argv); }
