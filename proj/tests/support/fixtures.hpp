#pragma once

#include <string>

#include "phinfer/pht.hpp"

namespace phinfer::testkit {

inline std::string data_path(const std::string& name) { return std::string(PHINFER_TEST_DATA) + "/" + name; }

inline HeapSketch load_fixture(const std::string& name) { return read_pht_file(data_path(name)).sketch; }

}  // namespace phinfer::testkit
