#!/usr/bin/env python3
"""Generate the minimal-basis hydrogen-chain FCIDUMP fixtures under tests/data.

Each file holds the full-space (all-orbital) RHF-MO Hamiltonian of a linear
H_n chain in STO-3G. A companion reference.json records the PySCF FCI and
RHF energies so the C++ oracles can be cross-checked against an external code.

    python3 tools/gen_fcidump.py [outdir]
"""
import json
import os
import sys

from pyscf import fci, gto, scf
from pyscf.tools import fcidump


def chain(n_atoms, spacing):
    return [("H", (0.0, 0.0, i * spacing)) for i in range(n_atoms)]


def build(n_atoms, spacing, outdir):
    mol = gto.M(atom=chain(n_atoms, spacing), basis="sto-3g", unit="Angstrom",
                verbose=0, symmetry=False)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.max_cycle = 500
    mf.level_shift = 0.2 if spacing > 1.2 else 0.0
    mf.kernel()
    if not mf.converged:
        mf = scf.newton(mf)
        mf.kernel()
    assert mf.converged, (n_atoms, spacing)

    name = f"h{n_atoms}_sto3g_{spacing:.2f}.FCIDUMP"
    fcidump.from_scf(mf, os.path.join(outdir, name), tol=1e-16)

    cis = fci.direct_spin1.FCI(mol)
    cis.conv_tol = 1e-14
    h1 = mf.mo_coeff.T @ mf.get_hcore() @ mf.mo_coeff
    from pyscf import ao2mo
    eri = ao2mo.kernel(mol, mf.mo_coeff)
    e_fci, _ = cis.kernel(h1, eri, mol.nao, mol.nelec, ecore=mol.energy_nuc())
    return name, {"atoms": n_atoms, "spacing": spacing, "e_rhf": mf.e_tot,
                  "e_fci": e_fci}


def main():
    outdir = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "tests", "data")
    os.makedirs(outdir, exist_ok=True)
    points = [(2, 0.74), (2, 0.60), (2, 1.00), (2, 1.50),
              (4, 1.00), (4, 2.00),
              (6, 0.80), (6, 1.50), (6, 2.40)]
    points += [(6, round(0.7 + 0.2 * i, 2)) for i in range(10)]
    ref = {}
    for n, r in dict.fromkeys(points):
        name, rec = build(n, r, outdir)
        ref[name] = rec
        print(f"{name:28s} E_RHF={rec['e_rhf']:.10f} E_FCI={rec['e_fci']:.10f}")
    with open(os.path.join(outdir, "reference.json"), "w") as f:
        json.dump(ref, f, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
