// Copyright 2026 The QSPH Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Advects two particles for three timesteps with both solvers and prints the
// gate list of the circuit.

#include <cstdio>

#include "qsph/circuit.hpp"
#include "qsph/sph.hpp"

int main() {
    using namespace qsph;

    const auto line = ParticleLine::uniform(0.2, {0.8, 0.4});
    const AdvectionParams params(1.0, KernelSpec(1.2));
    const std::size_t steps = 3;

    const auto circuit = build_circuit(line, params, steps);
    std::printf("%zu qubits, coin alpha00 = %.6f\n", circuit.n_qubits(), circuit.coin().alpha00());
    for (const auto &gate : circuit.gates()) {
        std::printf("  t=%zu %-8s on", gate.timestep, to_string(gate.kind));
        for (auto q : gate.targets) {
            std::printf(" q%zu", q);
        }
        std::printf("\n");
    }

    const auto classical = classical_evolve(line, params, steps);
    std::printf("\n T   quantum u0   quantum u1   classical u0 classical u1\n");
    for (std::size_t t = 1; t <= steps; ++t) {
        const auto q = simulate(line, params, t);
        std::printf("%2zu   %.10f %.10f %.10f %.10f\n", t, q.u0, q.u1, classical[t].u()[0],
                    classical[t].u()[1]);
    }
    return 0;
}
