// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return ara::cli::run(argc, argv, std::cout, std::cerr); }
