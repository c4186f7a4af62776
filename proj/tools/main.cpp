#include "cli_app.hpp"

int main(int argc, char** argv) { return voweltrace::run_cli(argc, argv); }
