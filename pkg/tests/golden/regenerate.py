"""Rebuild the golden files in this directory.

Run from the repository root after an intentional format change:

    python3 tests/golden/regenerate.py

The files are committed so the test suite can assert that load followed by
save reproduces them byte for byte; regenerate only when the on-disk format
itself is meant to change.
"""

from pathlib import Path

from pptsep import (
    GenSpec,
    TripartiteDims,
    decompose,
    gen_canonical_state,
    qubit_corner_state,
    save_canonical_form,
    save_ensemble,
    save_state,
)

HERE = Path(__file__).parent


def main() -> None:
    qubit = qubit_corner_state(0.3)
    save_state(qubit, HERE / "qubit_corner_a0p3.state.json")
    save_ensemble(decompose(qubit), HERE / "qubit_corner_a0p3.ensemble.json")

    state, truth = gen_canonical_state(GenSpec(dims=TripartiteDims(3, 3, 2), seed=0))
    save_state(state, HERE / "canonical_332_seed0.state.json")
    save_canonical_form(truth, HERE / "canonical_332_seed0.form.json")
    print(f"wrote 4 golden files under {HERE}")


if __name__ == "__main__":
    main()
