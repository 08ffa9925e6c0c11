// Copyright 2026 The signseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Writes the CSV fixtures used by the command-line tests into argv[1].

#include <cmath>
#include <filesystem>
#include <iostream>

#include "signseg/core.hpp"
#include "signseg/sim_lab.hpp"

using namespace signseg;

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures DIR\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);

  write_csv(DataMatrix(10, 3, std::vector<double>(30, 1.25)), dir / "constant.csv");
  write_csv(DataMatrix(5, 3, std::vector<double>(15, 0.5)), dir / "short.csv");

  DgpSpec null_spec;
  null_spec.n = 60;
  null_spec.p = 30;
  RandomStream s1(101, 0);
  write_csv(draw_dgp(null_spec, s1), dir / "null.csv");

  DgpSpec shift_spec;
  shift_spec.n = 100;
  shift_spec.p = 100;
  auto delta = dense_shift(100);
  for (double& v : delta) v *= 4.0;
  shift_spec.shift = MeanShift{delta, 50};
  RandomStream s2(102, 0);
  write_csv(draw_dgp(shift_spec, s2), dir / "dense_shift.csv");

  const auto model = three_change_model(DgpCase::gauss_iid, 120, 50, 4.0, 50, 0.7);
  RandomStream s3(103, 0);
  write_csv(draw_dgp(model, s3), dir / "dense4.csv");

  RandomStream s4(104, 0);
  std::vector<double> pareto(2000 * 3);
  for (double& v : pareto) v = std::pow(1.0 - s4.uniform(), -0.5);
  write_csv(DataMatrix(2000, 3, pareto), dir / "pareto.csv");
  return 0;
}
