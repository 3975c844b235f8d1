// SPDX-License-Identifier: Apache-2.0
#include "carspeak/cli.hpp"

int main(int argc, char** argv) { return carspeak::cli_run(argc, argv); }
