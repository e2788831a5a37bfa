// Copyright 2026 The qcvv authors
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

#pragma once

#include <vector>

#include "qcvv/linalg.hpp"

namespace qcvv {

// Standard gate matrices. Basis states are labeled with qubit 0 as the most
// significant bit: |q0 q1 ... q_{n-1}>.

CMat mat_id(int dim = 2);
CMat mat_x();
CMat mat_y();
CMat mat_z();
CMat mat_h();
CMat mat_s();
CMat mat_sdg();
CMat mat_cnot();  // control = qubit 0, target = qubit 1

/// exp(-i * angle/2 * A) for axis 'X', 'Y' or 'Z'.
CMat mat_rotation(char axis, double angle);

/// Embeds a unitary acting on the listed qubits (in order: the unitary's
/// most significant bit goes on qubits[0]) into an n-qubit register.
CMat embed_unitary(const CMat& u, const std::vector<int>& qubits, int n_qubits);

}  // namespace qcvv
