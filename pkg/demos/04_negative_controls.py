"""Where the machinery must refuse to answer — and does.

Three controls: an NPT state (fails the entry check), a bound entangled
state (PPT but wrong rank, and provably not separable), and a deliberately
broken certificate (verification catches tampering).  A decomposition
routine that "succeeded" on any of these would be lying.
"""

import numpy as np

from pptsep import (
    EnsembleTerm,
    NotPptError,
    RankMismatch,
    SeparableEnsemble,
    TripartiteDims,
    TripartiteState,
    decompose,
    ghz_vector,
    numeric_rank,
    ppt_report,
    qubit_corner_state,
    shifts_complement_state,
    verify_ensemble,
)

# --- control 1: an NPT state never reaches the decomposition stage ---------
dims = TripartiteDims(2, 2, 2)
bell = np.zeros((4, 4), dtype=complex)
bell[0, 0] = bell[0, 3] = bell[3, 0] = bell[3, 3] = 0.5
npt = TripartiteState(dims, np.kron(bell, np.eye(2) / 2))  # rank 2 = N, corner ok
print("entangled AB pair against mixed C:")
print("  PPT overall:", ppt_report(npt).overall_ppt)
try:
    decompose(npt)
except NotPptError as e:
    print(f"  decompose refused: NotPptError — {e}")

# --- control 2: PPT is necessary, not sufficient ---------------------------
# The complement of four orthogonal product vectors on three qubits is PPT
# on every mask yet entangled; its rank (4) differs from N (2), so the
# rank-N pipeline rejects it at the door.
bound = shifts_complement_state("corrected")
report = ppt_report(bound, tol=1e-12)
print("\nproduct-family complement (three qubits):")
print(f"  trace {bound.rho.trace().real:.1f}, rank {numeric_rank(bound.rho)},"
      f" PPT on all masks: {report.overall_ppt}")
try:
    decompose(bound)
except RankMismatch as e:
    print(f"  decompose refused: RankMismatch — {e}")

# --- control 3: verification catches a tampered certificate ----------------
state = qubit_corner_state(0.3)
ensemble = decompose(state)
residual, ok = verify_ensemble(state, ensemble)
print(f"\nhonest certificate: residual {residual:.2e}, pass {ok}")

first, *rest = ensemble.terms
bad = SeparableEnsemble(
    dims=ensemble.dims,
    terms=(EnsembleTerm(p=0.5, vec_a=first.vec_a, vec_b=first.vec_b, vec_c=first.vec_c),
           *rest),
)
residual, ok = verify_ensemble(state, bad)
print(f"tampered weight:    residual {residual:.2e}, pass {ok}")

# --- and NPT detection again, quantitatively -------------------------------
g = ghz_vector(dims)
ghz = TripartiteState(dims, np.outer(g, g.conj()))
entry = next(e for e in ppt_report(ghz).entries if e.mask.label == "A")
print(f"\nGHZ under mask A: min eigenvalue {entry.min_eigenvalue:+.6f} (exact: -1/2)")
