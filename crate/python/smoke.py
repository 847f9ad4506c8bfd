#!/usr/bin/env python3
"""Smoke test for the gradext_py extension module.

Builds nothing itself: it expects `cargo build -p gradext-py` (debug or
release) to have produced `libgradext_py.so`, copies that library into a
temporary directory under the importable name `gradext_py.so`, imports
it, and exercises every exposed function against known answers.

Run from anywhere:  python3 python/smoke.py
"""

import json
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent

PASS = 0


def check(label: str, ok: bool, detail: str = "") -> None:
    global PASS
    tail = f" ({detail})" if detail and not ok else ""
    print(f"  [smoke] {label}: {'pass' if ok else 'FAIL'}{tail}")
    if not ok:
        sys.exit(1)
    PASS += 1


def load_extension():
    candidates = [
        REPO / "target" / "release" / "libgradext_py.so",
        REPO / "target" / "debug" / "libgradext_py.so",
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit(
            "libgradext_py.so not found; run `cargo build -p gradext-py` first"
        )
    # Newest build wins if both profiles exist.
    source = max(built, key=lambda p: p.stat().st_mtime)
    stage = Path(tempfile.mkdtemp(prefix="gradext-py-"))
    shutil.copy2(source, stage / "gradext_py.so")
    sys.path.insert(0, str(stage))
    import gradext_py

    print(f"loaded {source.relative_to(REPO)} as gradext_py {gradext_py.__version__}")
    return gradext_py


def payload(report_text: str) -> dict:
    report = json.loads(report_text)
    assert report["tool"] == "gradext", report
    return report["payload"]


def main() -> None:
    gx = load_extension()

    # --- Smith normal form -------------------------------------------------
    snf = json.loads(gx.smith_normal_form([[2, 0], [0, 3]]))
    check("snf diag(2,3) has invariant factors 1,6", snf["diagonal"] == ["1", "6"])
    snf_mod = json.loads(gx.smith_normal_form([[2, 0], [0, 3]], modulus=12))
    check("snf over Z/12 canonicalizes to gcds", snf_mod["diagonal"] == ["1", "6"])

    # --- Gallery and validation --------------------------------------------
    names = gx.gallery_names()
    check("gallery lists seven examples", len(names) == 7 and "f4" in names)
    f9 = gx.gallery("f9")
    check("validate_instance is the identity on gallery documents",
          gx.validate_instance(f9) == f9)
    try:
        gx.gallery("nope")
        check("unknown gallery name raises ValueError", False)
    except ValueError:
        check("unknown gallery name raises ValueError", True)

    # --- Galois -------------------------------------------------------------
    f4 = gx.gallery("f4")
    galois = payload(gx.check_galois(f4))
    check("f4 is Galois", galois["verdict"] is True)
    check("f4 Galois certificate present",
          galois["galois"]["certificate"] is not None)
    basis = payload(gx.dual_basis(f4))
    check("f4 has a trace-dual basis", basis["verdict"] is True
          and basis["dual_basis"] is not None)
    try:
        gx.check_galois("{}")
        check("malformed instance raises ValueError", False)
    except ValueError:
        check("malformed instance raises ValueError", True)

    # --- Separability and concentration -------------------------------------
    axa = gx.gallery("axa")
    sep = payload(gx.check_separable(axa))
    check("product algebra is separable", sep["verdict"] is True)
    conc = payload(gx.concentrate(axa))
    check("product idempotent concentrates in degree zero",
          conc["verdict"] is True)
    dual = gx.gallery("dual-numbers")
    sep_dual = payload(gx.check_separable(dual))
    check("dual numbers are not separable", sep_dual["verdict"] is False)

    # --- Differentials -------------------------------------------------------
    kae = payload(gx.kaehler(dual))
    check("dual numbers have nonzero differentials", kae["verdict"] is True)
    check("differentials of dual numbers are free of rank 1 over them",
          kae["invariant_factors"]["free_rank"] == 0
          and kae["invariant_factors"]["torsion"] == ["2", "2"],
          detail=json.dumps(kae["invariant_factors"]))
    wit = payload(gx.hh1(dual))
    check("dual numbers carry an outer derivation witness",
          wit["verdict"] is True and wit["witness"] is not None)
    kae_f4 = payload(gx.kaehler(gx.gallery("f4")))
    check("Galois extension has vanishing differentials",
          kae_f4["verdict"] is False)

    # --- Homology ------------------------------------------------------------
    z2 = json.dumps({
        "format": "gradext-module/1",
        "base": {"kind": "integers"},
        "generator_degrees": [0],
        "relations": [["2"]],
    })
    tor1 = payload(gx.tor(z2, z2, p=1))
    check("Tor_1(Z/2, Z/2) = Z/2",
          tor1["invariant_factors"] == {"free_rank": 0, "torsion": ["2"]},
          detail=json.dumps(tor1["invariant_factors"]))
    ts = payload(gx.tensor_self(z2))
    check("Z/2 tensor itself is nonzero", ts["verdict"] is True)
    h1 = payload(gx.group_cohomology(f4, s=1))
    check("H^1 vanishes for the f4 fixture", h1["verdict"] is False)
    gt = payload(gx.graded_tor(z2, z2, p=1))
    check("graded Tor_1(Z/2, Z/2) concentrates in one degree",
          len(gt["pieces"]) == 1 and gt["pieces"][0]["degree"] == 0)

    # --- Fuzz ----------------------------------------------------------------
    lanes = gx.fuzz_lanes()
    check("six fuzz lanes exposed", len(lanes) == 6 and "thm-3.2" in lanes)
    report = payload(gx.fuzz("thm-3.2", trials=40, seed=7))
    check("40 fuzz trials complete without counterexamples",
          report["verdict"] is True
          and report["report"]["counterexamples"] == []
          and report["report"]["trials"] == 40)
    seed = report["report"]["records"][0]["instance_seed"]
    replay = payload(gx.fuzz("thm-3.2", instance_seed=seed))
    check("replaying a trial reproduces its record",
          replay["record"]["instance_seed"] == seed
          and replay["verdict"] is True)

    print(f"SMOKE: PASS ({PASS} checks)")


if __name__ == "__main__":
    main()
