#!/usr/bin/env python3
# Copyright 2026 The FlowQ-Net Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generates qubit observable files for small STO-3G molecules.

Writes `<out>.obs` in the FlowQ observable format (character k of every Pauli
string acts on qubit k, qubit 0 is the least-significant basis bit) and
`<out>.meta.json` with the Hartree-Fock energy, the exact ground energy of the
emitted qubit operator, and the reference bitstring.
"""

import argparse
import json
import sys

import numpy as np

MOLECULES = {
    "h2": {"geometry": [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 0.7414))],
           "active": None},
    # Frozen Li 1s core, three active spatial orbitals (six spin orbitals);
    # the parity mapping with two-qubit symmetry reduction leaves four qubits.
    "lih": {"geometry": [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, 1.5949))],
            "active": {"occupied": [0], "active": [1, 2, 5]}},
}


def build(molecule, mapping):
    try:
        from openfermion import MolecularData, get_fermion_operator
        from openfermion import jordan_wigner, binary_code_transform
        from openfermion import parity_code
        from openfermion.linalg import get_sparse_operator
        from openfermionpyscf import run_pyscf
    except ImportError as exc:
        sys.exit(f"hamgen: chemistry backend unavailable ({exc}); "
                 "install openfermion and openfermionpyscf")

    spec = MOLECULES[molecule]
    data = MolecularData(spec["geometry"], "sto-3g", 1, 0)
    data = run_pyscf(data, run_scf=True, run_fci=True)
    active = spec["active"]
    if active is None:
        ham = data.get_molecular_hamiltonian()
        n_electrons = data.n_electrons
    else:
        ham = data.get_molecular_hamiltonian(
            occupied_indices=active["occupied"],
            active_indices=active["active"])
        n_electrons = data.n_electrons - 2 * len(active["occupied"])
    fermion = get_fermion_operator(ham)
    n_modes = ham.n_qubits

    if mapping == "jw":
        qubit = jordan_wigner(fermion)
        bits = [1 if k < n_electrons else 0 for k in range(n_modes)]
    elif mapping == "parity":
        # Parity mapping in (all alpha, all beta) mode order. Qubit k stores
        # the parity of modes 0..k, so the alpha-block parity qubit and the
        # total parity qubit are conserved and are replaced by eigenvalues.
        from openfermion import QubitOperator, reorder, up_then_down
        fermion = reorder(fermion, up_then_down, num_modes=n_modes)
        half = n_modes // 2
        n_alpha = n_electrons // 2
        full = binary_code_transform(fermion, parity_code(n_modes))
        tapered = {half - 1: -1 if n_alpha % 2 else 1,
                   n_modes - 1: -1 if n_electrons % 2 else 1}
        keep = [q for q in range(n_modes) if q not in tapered]
        qubit = QubitOperator()
        for term, coeff in full.terms.items():
            ops = []
            for q, p in term:
                if q in tapered:
                    if p != "Z":
                        sys.exit("hamgen: symmetry qubit carries a non-Z operator")
                    coeff *= tapered[q]
                else:
                    ops.append((keep.index(q), p))
            qubit += QubitOperator(tuple(ops), coeff)
        occ = [1 if k < n_alpha else 0 for k in range(half)] + \
            [1 if k < n_electrons - n_alpha else 0 for k in range(half)]
        bits = [sum(occ[: q + 1]) % 2 for q in keep]
    else:
        sys.exit(f"hamgen: unknown mapping {mapping}")

    qubit.compress(1e-12)
    n_qubits = max((q for term in qubit.terms for q, _ in term), default=0) + 1
    n_qubits = max(n_qubits, len(bits))
    matrix = get_sparse_operator(qubit, n_qubits=n_qubits).toarray()
    exact = float(np.linalg.eigvalsh(matrix)[0])
    # The sparse matrix puts qubit 0 on the most significant bit.
    index = sum(b << (n_qubits - 1 - k) for k, b in enumerate(bits))
    reference = float(np.real(matrix[index, index]))
    return qubit, n_qubits, bits, {
        "molecule": molecule,
        "basis": "sto-3g",
        "mapping": mapping,
        "n_qubits": n_qubits,
        "hf_energy": float(data.hf_energy),
        "fci_energy": float(data.fci_energy),
        "reference_energy": reference,
        "exact_ground_energy": exact,
        "reference_bits": "".join(map(str, bits)),
        "active_space": active,
    }


def write(qubit, n_qubits, bits, meta, out):
    lines = [f"# {meta['molecule']} {meta['basis']} {meta['mapping']}",
             f"# exact ground energy {meta['exact_ground_energy']:.12f}",
             f"qubits {n_qubits}",
             f"prepare {meta['reference_bits']}"]
    for term, coeff in sorted(qubit.terms.items()):
        chars = ["I"] * n_qubits
        for q, p in term:
            chars[q] = p
        lines.append(f"{float(np.real(coeff)):.17g} {''.join(chars)}")
    with open(out + ".obs", "w") as f:
        f.write("\n".join(lines) + "\n")
    with open(out + ".meta.json", "w") as f:
        json.dump(meta, f, indent=2)
        f.write("\n")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--molecule", choices=sorted(MOLECULES), required=True)
    parser.add_argument("--mapping", choices=["jw", "parity"], default="jw")
    parser.add_argument("--out", required=True, help="output path without extension")
    args = parser.parse_args()
    qubit, n_qubits, bits, meta = build(args.molecule, args.mapping)
    write(qubit, n_qubits, bits, meta, args.out)
    print(json.dumps(meta, indent=2))


if __name__ == "__main__":
    main()
