#include "opn/cli.hpp"

int main(int argc, char** argv) { return opn::cli::dispatch(argc, argv); }
