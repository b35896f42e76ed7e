// Copyright 2026 The pacfair Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Checks the Adult Female/non-White (R, phi) in a report written by the
// acceptance runner against values recorded from the first verified run.
// R depends only on the data; phi depends on the optimizer and gets a
// relative tolerance.

#include <cmath>
#include <fstream>
#include <iostream>

#include "json.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: pacfair_golden_adult report.json\n";
    return 2;
  }
  constexpr double kGoldenR = 3.206352132082527;
  constexpr double kGoldenPhi = 12.035762958770484;
  std::ifstream in(argv[1]);
  if (!in) {
    std::cerr << "cannot open " << argv[1] << "\n";
    return 2;
  }
  const auto report = nlohmann::json::parse(in);
  const auto& entry = report.at("subgroups").at(0);
  const double r = entry.at("R");
  const double phi = entry.at("phi");
  std::cout.precision(17);
  std::cout << entry.at("label").get<std::string>() << ": R=" << r << " phi=" << phi << "\n";
  const bool ok = entry.at("label") == "Female/non-White" && std::abs(r - kGoldenR) < 1e-12 &&
                  std::abs(phi - kGoldenPhi) < 1e-6 * kGoldenPhi;
  std::cout << (ok ? "PASS" : "FAIL") << " golden R/phi\n";
  return ok ? 0 : 1;
}
