"""Smoke test for the multikit_py extension module.

Build the extension with `cargo build -p multikit-py --release`, then run
`python3 python/smoke_test.py`. The script copies the built shared library to
a temporary directory as `multikit_py.so` and imports it from there. Set
MULTIKIT_PY_LIB to point at a specific build.
"""

import os
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def find_library():
    env = os.environ.get("MULTIKIT_PY_LIB")
    if env:
        return Path(env)
    for profile in ("release", "debug"):
        for name in ("libmultikit_py.so", "libmultikit_py.dylib", "multikit_py.dll"):
            path = ROOT / "target" / profile / name
            if path.exists():
                return path
    sys.exit("multikit_py library not found; run `cargo build -p multikit-py --release` first")


def load():
    lib = find_library()
    tmp = Path(tempfile.mkdtemp(prefix="multikit_py_"))
    suffix = ".pyd" if lib.suffix == ".dll" else ".so"
    shutil.copy(lib, tmp / f"multikit_py{suffix}")
    sys.path.insert(0, str(tmp))
    import multikit_py

    return multikit_py


def main():
    mk = load()

    k = mk.Structure.builtin("krasner")
    assert len(k) == 2 and k.sum("1", "1") == ["0", "1"]
    assert k.is_superfield()
    assert k.characteristic() == 2

    x2 = mk.Structure.builtin("x2")
    report = x2.validate()
    assert report["verdicts"]["multiring"]["status"] == "pass"
    assert report["verdicts"]["hyperring"]["status"] == "fail"

    h3 = mk.Structure.builtin("h3")
    assert h3.roots("X^2+2") == []
    assert h3.is_irreducible("X^2+2")
    assert not h3.is_irreducible("X^2+1")
    q, r = h3.divide("X^2+2", "X+1")
    assert (q, r) == ("X+1", "1")

    quot = h3.quotient("X^2+2")
    assert len(quot.classes()) == 9
    assert quot.root() == "[X]"
    assert quot.embedding_kind() == "full-morphism"
    assert len(quot.prod("[1+X]", "[1+X]")) == 6
    assert quot.report()["verdicts"]["superfield"]["status"] == "pass"
    saturated = h3.quotient("X^2+2", mode="saturated")
    assert len(saturated.prod("[1+X]", "[1+X]")) == 9

    l9 = mk.Structure.builtin("l9")
    assert mk.classify(h3, l9, "0:0,1:1,2:2") == "morphism"
    assert mk.isomorphism(quot.structure, l9) is None
    assert mk.isomorphism(mk.Structure.builtin("h2"), k) is not None

    manifest, top = h3.closure(max_degree=2, max_steps=1)
    assert len(top) == 9 and manifest["steps"][0]["modulus"] == "X^2+2"
    assert mk.Structure.from_msr(top.to_msr()) == top

    report = mk.conformance(0)
    verdicts = {c["id"]: c["verdict"] for c in report["claims"]}
    assert verdicts["hp-hq-inclusion"] == "contradicted"

    code, out, _ = mk.run_cli(["char", "builtin:q2"])
    assert code == 0 and "characteristic 0" in out

    try:
        mk.Structure.builtin("nope")
    except ValueError as e:
        assert "nope" in str(e)
    else:
        raise AssertionError("unknown builtin accepted")

    print("multikit_py smoke test passed")


if __name__ == "__main__":
    main()
