#include "cli_app.hpp"

int main(int argc, char** argv) { return aaa::cli::run_cli(argc, argv); }
