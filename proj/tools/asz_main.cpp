#include "asz/cli.hpp"

int main(int argc, char** argv) { return asz::cli::dispatch(argc, argv); }
