#!/usr/bin/env python3
"""Offline electronic-structure oracle.

Produces the Hamiltonian fixtures used by the test suite with PySCF:

  beh2_full.ham   BeH2 (Be-H 1.326 A, STO-3G), all 7 RHF MOs, 6 electrons
  beh2_cas.ham    same molecule reduced to 2 electrons in 3 orbitals
                  (MOs 0,1 frozen, MOs 2,3,4 active)
  h2_golden.txt   RHF / FCI energies for H2 at 0.74 A (STO-3G)

Run once; the outputs are committed under tests/data/.
"""
import sys
import numpy as np
from pyscf import gto, scf, ao2mo, fci


def write_fixture(path, comment, norb, na, nb, const, h1, h2phys):
    with open(path, "w") as f:
        for line in comment:
            f.write(f"# {line}\n")
        f.write(f"norb {norb}\nnalpha {na}\nnbeta {nb}\n")
        f.write("constant %.17g\n" % const)
        for p in range(norb):
            for q in range(p, norb):
                if abs(h1[p, q]) > 1e-14:
                    f.write("h %d %d %.17g\n" % (p, q, h1[p, q]))
        seen = set()
        for p in range(norb):
            for q in range(norb):
                for r in range(norb):
                    for s in range(norb):
                        v = h2phys[p, q, r, s]
                        if abs(v) < 1e-14:
                            continue
                        orbit = {(p, q, r, s), (q, p, s, r), (r, s, p, q), (s, r, q, p),
                                 (r, q, p, s), (s, p, q, r), (p, s, r, q), (q, r, s, p)}
                        key = min(orbit)
                        if key in seen:
                            continue
                        seen.add(key)
                        f.write("g %d %d %d %d %.17g\n" % (*key, h2phys[key]))


def main(outdir):
    mol = gto.M(atom="H -1.326 0 0; Be 0 0 0; H 1.326 0 0", basis="sto3g",
                unit="Angstrom", charge=0, spin=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    C = mf.mo_coeff
    norb = C.shape[1]
    h1 = C.T @ mf.get_hcore() @ C
    eri = ao2mo.restore(1, ao2mo.kernel(mol, C), norb)   # chemist (pq|rs)
    phys = eri.transpose(0, 2, 1, 3)                      # <pq|rs> = (pr|qs)
    enuc = mol.energy_nuc()
    write_fixture(f"{outdir}/beh2_full.ham",
                  ["BeH2, Be-H 1.326 Angstrom, linear, STO-3G, RHF molecular orbitals",
                   "RHF total energy %.17g" % mf.e_tot],
                  norb, 3, 3, enuc, h1, phys)

    core = [0, 1]
    act = [2, 3, 4]
    ecore = enuc + sum(2 * h1[c, c] for c in core)
    ecore += sum(2 * eri[c, c, d, d] - eri[c, d, d, c] for c in core for d in core)
    h1a = h1.copy()
    for c in core:
        h1a += 2 * eri[:, :, c, c] - eri[:, c, c, :]
    h1a = h1a[np.ix_(act, act)]
    pa = phys[np.ix_(act, act, act, act)]
    ecas, _ = fci.direct_spin1.kernel(h1a, eri[np.ix_(act, act, act, act)], 3, (1, 1))
    write_fixture(f"{outdir}/beh2_cas.ham",
                  ["BeH2 active space: 2 electrons in 3 orbitals (MOs 2,3,4; MOs 0,1 frozen)",
                   "CASCI total energy %.17g" % (ecas + ecore)],
                  3, 1, 1, ecore, h1a, pa)
    print("BeH2 RHF", mf.e_tot, "CASCI", ecas + ecore, "mo energies", mf.mo_energy)

    h2 = gto.M(atom="H 0 0 0; H 0 0 0.74", basis="sto3g", unit="Angstrom")
    mf2 = scf.RHF(h2)
    mf2.conv_tol = 1e-12
    mf2.kernel()
    efci = fci.FCI(mf2).kernel()[0]
    with open(f"{outdir}/h2_golden.txt", "w") as f:
        f.write("# H2 0.74 Angstrom STO-3G\n")
        f.write("rhf %.17g\nfci %.17g\n" % (mf2.e_tot, efci))
    print("H2 RHF", mf2.e_tot, "FCI", efci)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data")
