#pragma once

#include <array>
#include <string>

#include "ising/core.hpp"

namespace ising {

/// Gate constructor received duplicate vertex labels.
struct LabelError : Error {
  using Error::Error;
};

/// 3-spin net whose ground states are the graph of c = a AND b (Up = true):
/// E(a,b,c) = -a - b + 2c + ab - 2c(a+b). Ground energy -3.
IsingNet and_gate(const std::string& a = "a", const std::string& b = "b",
                  const std::string& c = "c");

/// 6-spin net whose ground states are the graph of ab + c + d = 2e + f over
/// bits, the elementary step of long binary multiplication. Ground energy
/// -15 with exactly 16 ground states, one per (a,b,c,d).
IsingNet full_multiplier(const std::array<std::string, 6>& labels = {
                             "a", "b", "c", "d", "e", "f"});

}  // namespace ising
