#include "bsl_cli/cli.hpp"

int main(int argc, char** argv)
{
    return bsl::cli::main_entry(argc, argv);
}
