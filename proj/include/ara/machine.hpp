// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#pragma once

namespace ara {

struct MachineInfo {
  unsigned logical_cores = 1;
  unsigned physical_cores = 1;  // distinct (package, core) pairs; logical count when unknown
};

MachineInfo describe_machine();

}  // namespace ara
