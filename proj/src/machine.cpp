// Copyright 2026 The ara Authors.
// Licensed under the Apache License, Version 2.0.

#include "ara/machine.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <thread>
#include <utility>

namespace ara {

MachineInfo describe_machine() {
  MachineInfo info;
  info.logical_cores = std::max(1u, std::thread::hardware_concurrency());
  info.physical_cores = info.logical_cores;

  // Linux sysfs topology; other platforms keep the logical count.
  namespace fs = std::filesystem;
  std::error_code ec;
  std::set<std::pair<std::string, std::string>> cores;
  for (const auto& entry : fs::directory_iterator("/sys/devices/system/cpu", ec)) {
    const auto name = entry.path().filename().string();
    if (name.size() < 4 || name.compare(0, 3, "cpu") != 0 || name[3] < '0' || name[3] > '9') continue;
    std::ifstream pkg(entry.path() / "topology/physical_package_id");
    std::ifstream core(entry.path() / "topology/core_id");
    std::string p, c;
    if (pkg >> p && core >> c) cores.emplace(p, c);
  }
  if (!ec && !cores.empty()) info.physical_cores = static_cast<unsigned>(cores.size());
  return info;
}

}  // namespace ara
